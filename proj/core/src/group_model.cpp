#include "griffiths/group_model.hpp"

#include <cmath>
#include <string>

#include "griffiths/error.hpp"
#include "griffiths/linalg.hpp"

namespace griffiths {

namespace {

void require_same_group(const GroupElement& a, const GroupElement& b) {
  if (a.p() != b.p() || a.q() != b.q()) throw Error(ErrorCode::ShapeMismatch, "group elements of different (p, q)");
}

// Weights of the one-sided second-order derivative at t0 from nodes t0, t1, t2.
struct OneSidedWeights {
  double w0, w1, w2;
};

OneSidedWeights one_sided_weights(double t0, double t1, double t2) {
  const double h1 = t1 - t0;
  const double h2 = t2 - t0;
  return {-(h1 + h2) / (h1 * h2), h2 / (h1 * (h2 - h1)), -h1 / (h2 * (h2 - h1))};
}

}  // namespace

GroupElement::GroupElement(Matrix x, Matrix y, Matrix z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  const std::size_t q = x_.rows();
  const std::size_t p = x_.cols();
  if (y_.rows() != p || y_.cols() != q || z_.rows() != p || z_.cols() != p) {
    throw Error(ErrorCode::ShapeMismatch, "blocks must be X: q x p, Y: p x q, Z: p x p");
  }
}

GroupElement GroupElement::identity(std::size_t p, std::size_t q) {
  return GroupElement(Matrix(q, p), Matrix(p, q), Matrix(p, p));
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  require_same_group(g1, g2);
  return GroupElement(g1.x() + g2.x(), g1.y() + g2.y(), g1.z() + g2.z() + g1.y() * g2.x());
}

GroupElement inverse(const GroupElement& g) {
  return GroupElement(-g.x(), -g.y(), g.y() * g.x() - g.z());
}

GroupElement embed_u_point(const Matrix& x, const Matrix& z_skew, const Tolerance& tol) {
  if (!z_skew.is_square() || z_skew.rows() != x.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "skew block must be p x p");
  }
  if (!is_skew(z_skew, tol)) throw Error(ErrorCode::NotSkew, "Z coordinate is not skew-symmetric");
  const Matrix xt = x.transpose();
  return GroupElement(x, xt, skew_part(z_skew) + 0.5 * (xt * x));
}

double membership_residual(const GroupElement& g) {
  const Matrix xt = g.x().transpose();
  const double y_part = max_abs_diff(g.y(), xt);
  const double z_part = max_abs_diff(g.z() + g.z().transpose(), xt * g.x());
  return std::max(y_part, z_part);
}

DiscreteCurve::DiscreteCurve(std::vector<double> t, std::vector<GroupElement> points)
    : t_(std::move(t)), points_(std::move(points)) {
  if (t_.size() != points_.size()) throw Error(ErrorCode::InvariantViolation, "parameter and point counts differ");
  if (t_.size() < 2) throw Error(ErrorCode::InvariantViolation, "a curve needs at least two points");
  for (std::size_t i = 1; i < t_.size(); ++i) {
    require_same_group(points_[0], points_[i]);
    if (!(t_[i] > t_[i - 1])) throw Error(ErrorCode::DegenerateStep, "parameters must strictly increase");
  }
}

std::vector<MaurerCartanSample> maurer_cartan_discrete(const DiscreteCurve& curve) {
  const auto& t = curve.t();
  const auto& g = curve.points();
  std::vector<MaurerCartanSample> out;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    const double span = t[i + 1] - t[i - 1];
    if (!(span > 0.0)) throw Error(ErrorCode::DegenerateStep, "zero parameter gap");
    const Complex inv(1.0 / span);
    Matrix dx = inv * (g[i + 1].x() - g[i - 1].x());
    Matrix dy = inv * (g[i + 1].y() - g[i - 1].y());
    Matrix dz = inv * (g[i + 1].z() - g[i - 1].z());
    Matrix omega = dz - g[i].y() * dx;
    out.push_back({t[i], std::move(dx), std::move(dy), std::move(omega)});
  }
  return out;
}

TangentVector tangent_from_curve(const DiscreteCurve& curve, const Tolerance& tol) {
  const auto& t = curve.t();
  const auto& g = curve.points();
  const auto& base = g.front();
  const double offset = std::max({base.x().max_abs(), base.y().max_abs(), base.z().max_abs()});
  if (!tol.accepts(offset)) throw Error(ErrorCode::NotBasedAtIdentity, "first point is not the identity");

  if (g.size() == 2) {
    const Complex inv(1.0 / (t[1] - t[0]));
    return {inv * (g[1].x() - g[0].x()), inv * (skew_part(g[1].z()) - skew_part(g[0].z()))};
  }
  const auto w = one_sided_weights(t[0], t[1], t[2]);
  Matrix phi = Complex(w.w0) * g[0].x() + Complex(w.w1) * g[1].x() + Complex(w.w2) * g[2].x();
  Matrix psi = Complex(w.w0) * skew_part(g[0].z()) + Complex(w.w1) * skew_part(g[1].z()) +
               Complex(w.w2) * skew_part(g[2].z());
  return {std::move(phi), std::move(psi)};
}

}  // namespace griffiths
