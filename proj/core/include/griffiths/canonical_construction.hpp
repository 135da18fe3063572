#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "griffiths/generating_functions.hpp"
#include "griffiths/integral_elements.hpp"
#include "griffiths/matrix.hpp"

namespace griffiths {

struct QuadratureOptions {
  int max_refinements = 20;
  double tol = 1e-10;
};

/// How the off-column entries Z_jk (j > k > 0) are integrated. Closed forms
/// exist for every family; quadrature is the independent route.
enum class IntegrationMethod { closed_form, quadrature };

/// The canonical chart u ↦ (X(u), Z(u)):
///   X(u) = [u, ∇f_1, …, ∇f_{p-1}],  Z_j0 = f_j,
///   Z_jk = ∫ Σ_a X_aj dX_ak along the segment 0 → u  (j > k > 0),
/// with the remaining entries fixed by Z + ᵀZ = ᵀX·X. The gauge Z_jk(0) = 0
/// makes the chart pass through the identity.
class Chart {
 public:
  /// Stores normalize_jet(system).
  explicit Chart(const GeneratingSystem& system, QuadratureOptions quadrature = {},
                 IntegrationMethod method = IntegrationMethod::closed_form);

  const GeneratingSystem& system() const noexcept { return system_; }
  const QuadratureOptions& quadrature() const noexcept { return quadrature_; }
  IntegrationMethod method() const noexcept { return method_; }
  std::size_t p() const noexcept { return system_.p(); }
  std::size_t q() const noexcept { return system_.q(); }

 private:
  GeneratingSystem system_;
  QuadratureOptions quadrature_;
  IntegrationMethod method_;
};

/// Anything of the form u ↦ (X(u), Z(u)); charts and their transforms.
struct ChartMap {
  std::size_t p = 0;
  std::size_t q = 0;
  std::function<Matrix(std::span<const Complex>)> x;
  std::function<Matrix(std::span<const Complex>)> z;
};

ChartMap as_map(const Chart& c);

Matrix chart_x(const Chart& c, std::span<const Complex> u);
/// Throws QuadratureNotConverged under IntegrationMethod::quadrature.
Matrix chart_z(const Chart& c, std::span<const Complex> u);

/// Strictly lower entries Z_jk (j > k > 0) by the closed form of the family.
Matrix lower_integrals_closed_form(const Chart& c, std::span<const Complex> u);
/// The same line integrals along the polyline through `vertices`, by
/// composite 8-point Gauss–Legendre with panel doubling.
Matrix lower_integrals_quadrature(const Chart& c, std::span<const Vector> vertices);

/// ∂Z/∂u_k − ᵀX(u)·∂X/∂u_k for every k, all partials by central differences.
std::vector<Matrix> omega_components(const ChartMap& m, std::span<const Complex> u, double step);
double omega_residual(const ChartMap& m, std::span<const Complex> u, double step);
double omega_residual(const Chart& c, std::span<const Complex> u, double step);
double default_fd_step(std::span<const Complex> u);

/// max |∫_segment − ∫_staircase| over j > k > 0, the staircase running
/// through (u_1, 0, …), (u_1, u_2, 0, …), … . Zero exactly at u = 0.
double path_independence_check(const Chart& c, std::span<const Complex> u);

/// distinguished_from_commuting of the Hessians at 0.
AbelianElement tangent_space_at_origin(const Chart& c);

/// Subspace distance between `expected` and the finite-difference tangent
/// vectors (∂X/∂u_k, skew ∂Z/∂u_k) of the map at 0.
double tangent_match_residual(const ChartMap& m, const AbelianElement& expected, double step = 1e-5);

/// u ↦ (B·X(u)·A, ᵀA·Z(u)·A).
ChartMap transform_chart(const ChartMap& m, const HTransform& h);

struct VerificationTolerances {
  double omega = 1e-6;
  double commutator = 1e-10;
  double membership = 1e-10;
  double path_independence = 1e-8;
  double tangent_match = 1e-8;
  double fd_step = 1e-5;
};

struct VerificationReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double max_omega_residual = 0.0;
  double max_commutator_residual = 0.0;
  double max_membership_residual = 0.0;
  double tangent_match_residual = 0.0;
  double path_independence_residual = 0.0;
  VerificationTolerances tolerances;
  bool pass = true;
  std::string note;
};

/// Seeded points in the unit polydisc, one derived stream per sample.
std::vector<Vector> sample_polydisc(std::size_t q, int samples, std::uint64_t seed);

/// Aggregates the ω residual, Hessian commutators and U-membership over
/// seeded samples, path independence on every fourth sample, and the tangent
/// match at the origin. Deterministic given the seed.
VerificationReport verify_chart(const Chart& c, int samples, std::uint64_t seed,
                                const VerificationTolerances& tol = {});

/// verify_chart for transform_chart(c, h); the expected tangent space is the
/// transformed tangent space of c.
VerificationReport verify_transformed_chart(const Chart& c, const HTransform& h, int samples, std::uint64_t seed,
                                            const VerificationTolerances& tol = {});

}  // namespace griffiths
