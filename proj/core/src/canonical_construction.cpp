#include "griffiths/canonical_construction.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "griffiths/error.hpp"
#include "griffiths/group_model.hpp"
#include "griffiths/linalg.hpp"

namespace griffiths {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// 8-point Gauss–Legendre rule on [-1, 1].
constexpr std::array<double, 4> kNodes = {0.1834346424956498049394761, 0.5255324099163289858177390,
                                          0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kWeights = {0.3626837833783619829651504, 0.3137066458778872873379622,
                                            0.2223810344533744705443560, 0.1012285362903762591525314};

Matrix quadratic_lower(const QuadraticFamily& f, std::size_t p, std::span<const Complex> u) {
  Matrix out(p, p);
  std::vector<Vector> au;
  for (const auto& a : f.a) au.push_back(a * u);
  for (std::size_t j = 2; j < p; ++j)
    for (std::size_t k = 1; k < j; ++k) out.set(j, k, 0.5 * bilinear_dot(au[j - 1], au[k - 1]));
  return out;
}

Matrix separable_lower(const SeparableFamily& f, std::size_t p, std::span<const Complex> u) {
  Matrix out(p, p);
  for (std::size_t j = 2; j < p; ++j) {
    for (std::size_t k = 1; k < j; ++k) {
      Complex acc{};
      for (std::size_t a = 0; a < u.size(); ++a) {
        const auto integrand = f.h[j - 1][a].derivative() * f.h[k - 1][a].derivative().derivative();
        acc += integrand.antiderivative()(u[a]);
      }
      out.set(j, k, acc);
    }
  }
  return out;
}

Matrix inner_lower(const std::variant<QuadraticFamily, SeparableFamily>& inner, std::size_t p,
                   std::span<const Complex> u) {
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return quadratic_lower(f, p, u); },
                               [&](const SeparableFamily& f) { return separable_lower(f, p, u); }},
                    inner);
}

// Σ_a X_aj(x) (dX_ak(x)/dt) for every j > k > 0, where dx/dt = direction.
Matrix pullback_integrand(const GeneratingSystem& s, std::span<const Complex> x, std::span<const Complex> direction) {
  const std::size_t p = s.p();
  std::vector<Vector> grads(p);
  std::vector<Vector> rates(p);
  for (std::size_t l = 1; l < p; ++l) {
    grads[l] = grad(s, l, x);
    rates[l] = hess(s, l, x) * direction;
  }
  Matrix out(p, p);
  for (std::size_t j = 2; j < p; ++j)
    for (std::size_t k = 1; k < j; ++k) out.set(j, k, bilinear_dot(grads[j], rates[k]));
  return out;
}

Matrix segment_rule(const GeneratingSystem& s, std::span<const Complex> from, std::span<const Complex> to,
                    std::size_t panels) {
  const std::size_t n = from.size();
  Vector direction(n);
  for (std::size_t i = 0; i < n; ++i) direction[i] = to[i] - from[i];
  Matrix total(s.p(), s.p());
  Vector x(n);
  const double width = 1.0 / static_cast<double>(panels);
  for (std::size_t panel = 0; panel < panels; ++panel) {
    const double mid = (static_cast<double>(panel) + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t node = 0; node < kNodes.size(); ++node) {
      for (const double sign : {-1.0, 1.0}) {
        const double t = mid + sign * half * kNodes[node];
        for (std::size_t i = 0; i < n; ++i) x[i] = from[i] + t * direction[i];
        total += Complex(half * kWeights[node]) * pullback_integrand(s, x, direction);
      }
    }
  }
  return total;
}

Matrix integrate_segment(const GeneratingSystem& s, std::span<const Complex> from, std::span<const Complex> to,
                         const QuadratureOptions& opts) {
  Matrix previous = segment_rule(s, from, to, 1);
  std::size_t panels = 1;
  for (int r = 1; r <= opts.max_refinements; ++r) {
    panels *= 2;
    Matrix current = segment_rule(s, from, to, panels);
    if (max_abs_diff(current, previous) < opts.tol * std::max(1.0, current.max_abs())) return current;
    previous = std::move(current);
  }
  throw Error(ErrorCode::QuadratureNotConverged,
              "line integral did not settle after " + std::to_string(opts.max_refinements) + " refinements");
}

Vector flatten_tangent(const Matrix& dx, const Matrix& dz) {
  Vector v(dx.data().begin(), dx.data().end());
  const Matrix skew = skew_part(dz);
  for (std::size_t j = 1; j < skew.rows(); ++j)
    for (std::size_t k = 0; k < j; ++k) v.push_back(skew(j, k));
  return v;
}

struct VerificationInputs {
  ChartMap map;
  const Chart* chart;
  AbelianElement expected_tangent;
};

VerificationReport run_verification(const VerificationInputs& in, int samples, std::uint64_t seed,
                                    const VerificationTolerances& tol) {
  VerificationReport report;
  report.samples = std::max(samples, 0);
  report.seed = seed;
  report.tolerances = tol;
  if (report.samples == 0) {
    report.note = "no samples";
    return report;
  }
  const auto points = sample_polydisc(in.map.q, report.samples, seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& u = points[i];
    report.max_omega_residual = std::max(report.max_omega_residual, omega_residual(in.map, u, tol.fd_step));
    report.max_commutator_residual =
        std::max(report.max_commutator_residual, commutator_residual(in.chart->system(), u));
    const Matrix x = in.map.x(u);
    const GroupElement g(x, x.transpose(), in.map.z(u));
    report.max_membership_residual = std::max(report.max_membership_residual, membership_residual(g));
    if (i % 4 == 0) {
      report.path_independence_residual =
          std::max(report.path_independence_residual, path_independence_check(*in.chart, u));
    }
  }
  report.tangent_match_residual = tangent_match_residual(in.map, in.expected_tangent, tol.fd_step);
  report.pass = report.max_omega_residual <= tol.omega && report.max_commutator_residual <= tol.commutator &&
                report.max_membership_residual <= tol.membership &&
                report.path_independence_residual <= tol.path_independence &&
                report.tangent_match_residual <= tol.tangent_match;
  return report;
}

}  // namespace

Chart::Chart(const GeneratingSystem& system, QuadratureOptions quadrature, IntegrationMethod method)
    : system_(normalize_jet(system)), quadrature_(quadrature), method_(method) {
  if (quadrature.max_refinements < 1 || !(quadrature.tol > 0.0)) {
    throw Error(ErrorCode::InvariantViolation, "quadrature needs a positive tolerance and refinement cap");
  }
}

ChartMap as_map(const Chart& c) {
  return ChartMap{c.p(), c.q(), [c](std::span<const Complex> u) { return chart_x(c, u); },
                  [c](std::span<const Complex> u) { return chart_z(c, u); }};
}

Matrix chart_x(const Chart& c, std::span<const Complex> u) {
  if (u.size() != c.q()) throw Error(ErrorCode::ShapeMismatch, "point must have length q");
  Matrix x(c.q(), c.p());
  x.set_column(0, u);
  for (std::size_t l = 1; l < c.p(); ++l) x.set_column(l, grad(c.system(), l, u));
  return x;
}

Matrix lower_integrals_closed_form(const Chart& c, std::span<const Complex> u) {
  const std::size_t p = c.p();
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return quadratic_lower(f, p, u); },
                               [&](const SeparableFamily& f) { return separable_lower(f, p, u); },
                               [&](const ConjugatedFamily& f) { return inner_lower(f.inner, p, f.c * u); }},
                    c.system().family());
}

Matrix lower_integrals_quadrature(const Chart& c, std::span<const Vector> vertices) {
  Matrix total(c.p(), c.p());
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (max_abs(vertices[i]) == 0.0 && max_abs(vertices[i + 1]) == 0.0) continue;
    bool degenerate = true;
    for (std::size_t k = 0; k < vertices[i].size(); ++k) degenerate = degenerate && vertices[i][k] == vertices[i + 1][k];
    if (degenerate) continue;
    total += integrate_segment(c.system(), vertices[i], vertices[i + 1], c.quadrature());
  }
  return total;
}

Matrix chart_z(const Chart& c, std::span<const Complex> u) {
  const std::size_t p = c.p();
  const Matrix x = chart_x(c, u);
  const Matrix gram = x.transpose() * x;
  Matrix z(p, p);
  if (c.method() == IntegrationMethod::closed_form) {
    z = lower_integrals_closed_form(c, u);
  } else {
    const std::vector<Vector> segment{Vector(u.size()), Vector(u.begin(), u.end())};
    z = lower_integrals_quadrature(c, segment);
  }
  for (std::size_t j = 1; j < p; ++j) z.set(j, 0, eval(c.system(), j, u));
  for (std::size_t j = 0; j < p; ++j) {
    z.set(j, j, 0.5 * gram(j, j));
    for (std::size_t k = 0; k < j; ++k) z.set(k, j, gram(k, j) - z(j, k));
  }
  return z;
}

std::vector<Matrix> omega_components(const ChartMap& m, std::span<const Complex> u, double step) {
  const auto dx = finite_difference_jacobian(m.x, u, step);
  const auto dz = finite_difference_jacobian(m.z, u, step);
  const Matrix xt = m.x(u).transpose();
  std::vector<Matrix> out;
  out.reserve(dx.size());
  for (std::size_t k = 0; k < dx.size(); ++k) out.push_back(dz[k] - xt * dx[k]);
  return out;
}

double omega_residual(const ChartMap& m, std::span<const Complex> u, double step) {
  double r = 0.0;
  for (const auto& w : omega_components(m, u, step)) r = std::max(r, w.max_abs());
  return r;
}

double omega_residual(const Chart& c, std::span<const Complex> u, double step) {
  return omega_residual(as_map(c), u, step);
}

double default_fd_step(std::span<const Complex> u) { return 1e-5 * (1.0 + max_abs(u)); }

double path_independence_check(const Chart& c, std::span<const Complex> u) {
  if (u.size() != c.q()) throw Error(ErrorCode::ShapeMismatch, "point must have length q");
  const std::vector<Vector> segment{Vector(u.size()), Vector(u.begin(), u.end())};
  std::vector<Vector> staircase{Vector(u.size())};
  for (std::size_t i = 0; i < u.size(); ++i) {
    Vector next = staircase.back();
    next[i] = u[i];
    staircase.push_back(std::move(next));
  }
  return max_abs_diff(lower_integrals_quadrature(c, segment), lower_integrals_quadrature(c, staircase));
}

AbelianElement tangent_space_at_origin(const Chart& c) {
  const Vector origin(c.q());
  DistinguishedBasis d{c.p(), c.q(), {}};
  for (std::size_t l = 1; l < c.p(); ++l) d.a.push_back(hess(c.system(), l, origin));
  // Hessians at the origin need not commute for controls built unchecked;
  // the tangent space is still the span of the assembled basis.
  return AbelianElement(d.p, d.q, assemble_distinguished(d));
}

double tangent_match_residual(const ChartMap& m, const AbelianElement& expected, double step) {
  const Vector origin(m.q);
  const auto dx = finite_difference_jacobian(m.x, origin, step);
  const auto dz = finite_difference_jacobian(m.z, origin, step);
  std::vector<Vector> observed;
  for (std::size_t k = 0; k < dx.size(); ++k) observed.push_back(flatten_tangent(dx[k], dz[k]));
  std::vector<Vector> analytic;
  for (const auto& b : expected.basis()) analytic.push_back(flatten_tangent(b, Matrix(m.p, m.p)));
  return subspace_distance(analytic, observed);
}

ChartMap transform_chart(const ChartMap& m, const HTransform& h) {
  if (h.a().rows() != m.p || h.b().rows() != m.q) throw Error(ErrorCode::ShapeMismatch, "transform shape");
  const Matrix a = h.a();
  const Matrix b = h.b();
  const Matrix at = a.transpose();
  return ChartMap{m.p, m.q, [x = m.x, a, b](std::span<const Complex> u) { return b * x(u) * a; },
                  [z = m.z, a, at](std::span<const Complex> u) { return at * z(u) * a; }};
}

std::vector<Vector> sample_polydisc(std::size_t q, int samples, std::uint64_t seed) {
  std::vector<Vector> out;
  for (int i = 0; i < samples; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector u(q);
    for (auto& z : u) {
      const double radius = std::sqrt(unit(rng));
      const double angle = 2.0 * std::numbers::pi * unit(rng);
      z = std::polar(radius, angle);
    }
    out.push_back(std::move(u));
  }
  return out;
}

VerificationReport verify_chart(const Chart& c, int samples, std::uint64_t seed, const VerificationTolerances& tol) {
  return run_verification({as_map(c), &c, tangent_space_at_origin(c)}, samples, seed, tol);
}

VerificationReport verify_transformed_chart(const Chart& c, const HTransform& h, int samples, std::uint64_t seed,
                                            const VerificationTolerances& tol) {
  return run_verification({transform_chart(as_map(c), h), &c, apply_h_transform(tangent_space_at_origin(c), h)},
                          samples, seed, tol);
}

}  // namespace griffiths
