#pragma once

#include <vector>

#include "griffiths/integral_elements.hpp"
#include "griffiths/matrix.hpp"

namespace griffiths {

/// Block unipotent matrix
///
///     [ 1_p  0    0   ]
///     [ X    1_q  0   ]
///     [ Z    Y    1_p ]
///
/// stored in block coordinates. X is q×p, Y is p×q, Z is p×p.
class GroupElement {
 public:
  GroupElement(Matrix x, Matrix y, Matrix z);
  static GroupElement identity(std::size_t p, std::size_t q);

  std::size_t p() const noexcept { return x_.cols(); }
  std::size_t q() const noexcept { return x_.rows(); }
  const Matrix& x() const noexcept { return x_; }
  const Matrix& y() const noexcept { return y_; }
  const Matrix& z() const noexcept { return z_; }

 private:
  Matrix x_;
  Matrix y_;
  Matrix z_;
};

GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

/// The point of U with coordinates (X, skew part of Z): Y = ᵀX and
/// Z = Zskew + ½ ᵀX·X. Throws NotSkew.
GroupElement embed_u_point(const Matrix& x, const Matrix& z_skew, const Tolerance& tol = Tolerance(1e-10, 1e-10));

/// max(|Y − ᵀX|, |Z + ᵀZ − ᵀX·X|) in the max-entry norm; zero exactly on U.
double membership_residual(const GroupElement& g);

/// Sampled curve t ↦ g(t) with strictly increasing parameters.
class DiscreteCurve {
 public:
  /// Throws InvariantViolation (fewer than 2 points, size mismatch),
  /// ShapeMismatch (mixed shapes) or DegenerateStep (non-increasing
  /// parameters).
  DiscreteCurve(std::vector<double> t, std::vector<GroupElement> points);

  const std::vector<double>& t() const noexcept { return t_; }
  const std::vector<GroupElement>& points() const noexcept { return points_; }

 private:
  std::vector<double> t_;
  std::vector<GroupElement> points_;
};

/// Blocks of g⁻¹·dg/dt at an interior node: dX (q×p), dY (p×q) and
/// omega = dZ − Y·dX (p×p).
struct MaurerCartanSample {
  double t;
  Matrix dx;
  Matrix dy;
  Matrix omega;
};

/// Central differences in block coordinates at interior nodes only.
std::vector<MaurerCartanSample> maurer_cartan_discrete(const DiscreteCurve& curve);

/// (φ, ψ) = (X'(t₀), (skew Z)'(t₀)) at the first node, which must be the
/// identity. Second-order one-sided differences when three or more nodes are
/// available, forward differences otherwise. Throws NotBasedAtIdentity.
TangentVector tangent_from_curve(const DiscreteCurve& curve, const Tolerance& tol = Tolerance(1e-12, 0.0));

}  // namespace griffiths
