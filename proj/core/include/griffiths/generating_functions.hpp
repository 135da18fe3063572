#pragma once

#include <span>
#include <variant>
#include <vector>

#include "griffiths/integral_elements.hpp"
#include "griffiths/matrix.hpp"

namespace griffiths {

/// Polynomial in one complex variable, coefficients in ascending degree.
/// Trailing zero coefficients are trimmed; the zero polynomial is empty.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Complex> coefficients);

  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  Complex coefficient(std::size_t k) const noexcept {
    return k < coefficients_.size() ? coefficients_[k] : Complex{};
  }
  bool is_zero() const noexcept { return coefficients_.empty(); }

  Complex operator()(Complex x) const noexcept;
  UnivariatePoly derivative() const;
  /// Antiderivative vanishing at 0.
  UnivariatePoly antiderivative() const;
  /// Copy without the terms of degree < `degree`.
  UnivariatePoly drop_below(std::size_t degree) const;

  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
  friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;

 private:
  std::vector<Complex> coefficients_;
};

/// f_ℓ(u) = ½ ᵀu A_ℓ u.
struct QuadraticFamily {
  std::vector<Matrix> a;
};

/// f_ℓ(u) = Σ_j h[ℓ-1][j](u_j).
struct SeparableFamily {
  std::vector<std::vector<UnivariatePoly>> h;
};

/// f_ℓ(u) = f'_ℓ(c·u) with c complex orthogonal.
struct ConjugatedFamily {
  std::variant<QuadraticFamily, SeparableFamily> inner;
  Matrix c;
};

using Family = std::variant<QuadraticFamily, SeparableFamily, ConjugatedFamily>;

/// Holomorphic functions f_1..f_{p-1} of u ∈ C^q (zero-based: f_ℓ feeds
/// column ℓ of X). Every family stored here solves [H_{f_i}, H_{f_j}] = 0,
/// except systems built through unchecked(), which are used as controls.
/// Charts need p > 1; p = 1 gives the empty system.
class GeneratingSystem {
 public:
  /// Throws InvariantViolation when a matrix is not symmetric or a pair does
  /// not commute. Matrices are stored exactly symmetrized.
  static GeneratingSystem quadratic(std::size_t q, std::vector<Matrix> a, const Tolerance& tol = Tolerance{});
  static GeneratingSystem separable(std::size_t q, std::vector<std::vector<UnivariatePoly>> h);
  /// Throws NotOrthogonal when c is not complex orthogonal.
  static GeneratingSystem conjugated(std::size_t q, std::variant<QuadraticFamily, SeparableFamily> inner,
                                     Matrix c, const Tolerance& tol = Tolerance{});
  /// Shape checks only; the commuting-Hessian condition may fail.
  static GeneratingSystem unchecked(std::size_t p, std::size_t q, Family family);

  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  /// Number of generating functions, p - 1.
  std::size_t count() const noexcept { return p_ - 1; }
  const Family& family() const noexcept { return family_; }

 private:
  GeneratingSystem(std::size_t p, std::size_t q, Family family);

  std::size_t p_;
  std::size_t q_;
  Family family_;
};

/// ℓ ∈ [1, p-1]; throws IndexOutOfRange / ShapeMismatch.
Complex eval(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u);
Vector grad(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u);
/// Exactly symmetric.
Matrix hess(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u);

/// max over i < j of max |H_i H_j − H_j H_i| at u.
double commutator_residual(const GeneratingSystem& s, std::span<const Complex> u);

/// A system whose Hessians at 0 are the target matrices: the diagonalized
/// separable seed ½ D_ℓ,jj x_j² plus the enrichment terms, conjugated by the
/// simultaneous diagonalizer of the target (Separable when every target
/// matrix is already diagonal). `enrichment` is a (p-1)×q grid of
/// polynomials without terms of degree < 3 and of degree at most 16, or empty.
GeneratingSystem system_matching_hessians(const DistinguishedBasis& target,
                                          const std::vector<std::vector<UnivariatePoly>>& enrichment = {},
                                          const Tolerance& tol = Tolerance{});

inline constexpr int kMaxEnrichmentDegree = 16;

/// Removes constant and linear parts of every f_ℓ; Hessians are unchanged.
GeneratingSystem normalize_jet(const GeneratingSystem& s);
bool is_jet_normalized(const GeneratingSystem& s) noexcept;

}  // namespace griffiths
