#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "griffiths/matrix.hpp"

namespace griffiths {

/// A framed subspace of q×p matrices: a candidate integral element at the
/// identity. Basis members are q×p and linearly independent.
class AbelianElement {
 public:
  /// Throws ShapeMismatch for a wrongly shaped member and
  /// InvariantViolation for a dependent basis.
  AbelianElement(std::size_t p, std::size_t q, std::vector<Matrix> basis);

  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  const std::vector<Matrix>& basis() const noexcept { return basis_; }

 private:
  std::size_t p_;
  std::size_t q_;
  std::vector<Matrix> basis_;
};

/// The commuting symmetric q×q matrices A_2..A_p behind a distinguished
/// basis, stored zero-based: a[ℓ-1] is the matrix feeding column ℓ of
/// every basis member, ℓ = 1..p-1. No validation happens on construction;
/// see validate().
struct DistinguishedBasis {
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<Matrix> a;

  /// Shapes, symmetry and pairwise commutation. Throws InvariantViolation.
  void validate(const Tolerance& tol = Tolerance{}) const;
  bool is_valid(const Tolerance& tol = Tolerance{}) const noexcept;
};

/// The action X ↦ B·X·A, Z ↦ ᵀA·Z·A with A invertible (p×p) and B complex
/// orthogonal (q×q).
class HTransform {
 public:
  HTransform(Matrix a, Matrix b, const Tolerance& tol = Tolerance{});
  static HTransform identity(std::size_t p, std::size_t q);

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }

 private:
  Matrix a_;
  Matrix b_;
};

/// τ(φ, ψ): dX(τ) = φ (q×p), dZ(τ) = ψ (p×p, skew).
struct TangentVector {
  Matrix phi;
  Matrix psi;
};

struct Dimensions {
  long long dim_u;
  long long dim_e;
  long long codim;
  long long max_integral_dim;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

bool is_abelian(const AbelianElement& e, const Tolerance& tol = Tolerance{});

/// Searches for v with det[M_1 v | … | M_q v] bounded away from zero relative
/// to the product of the column norms: first e_1..e_p, then `trials` seeded
/// complex Gaussian vectors. An empty result is evidence of non-genericity,
/// not proof. Throws DimensionMismatch unless the basis has exactly q members.
std::optional<Vector> genericity_witness(const AbelianElement& e, int trials = 16,
                                         std::uint64_t seed = 0,
                                         const Tolerance& tol = Tolerance(0.0, 1e-9));

/// Whether v passes the genericity determinant test for e.
bool passes_genericity_test(const AbelianElement& e, std::span<const Complex> v,
                            const Tolerance& tol = Tolerance(0.0, 1e-9));

/// M_k = [e_k, (A_2)_k, …, (A_p)_k] without any validity check.
std::vector<Matrix> assemble_distinguished(const DistinguishedBasis& d);

/// Validated version of assemble_distinguished. Throws InvariantViolation.
AbelianElement distinguished_from_commuting(const DistinguishedBasis& d,
                                            const Tolerance& tol = Tolerance{});

/// Inverse of distinguished_from_commuting; column ℓ of M_k becomes column k
/// of A_ℓ. The recovered family is not validated. Throws NotDistinguished.
DistinguishedBasis commuting_from_distinguished(const AbelianElement& e,
                                                const Tolerance& tol = Tolerance{});

AbelianElement apply_h_transform(const AbelianElement& e, const HTransform& h);

struct Normalization {
  DistinguishedBasis basis;
  HTransform transform;
};

/// Moves a generic element into distinguished form: A sends e_1 to the
/// witness and is completed by Hermitian Gram–Schmidt over the standard
/// basis, B is the identity, and the transformed basis is re-framed so that
/// M_k(e_1) = e_k. Throws NotGeneric.
Normalization normalize_to_distinguished(const AbelianElement& e, std::span<const Complex> witness,
                                         const Tolerance& tol = Tolerance(0.0, 1e-9));

Dimensions dims(std::size_t p, std::size_t q);

bool tangent_in_distribution(const TangentVector& t, const Tolerance& tol = Tolerance{});

}  // namespace griffiths
