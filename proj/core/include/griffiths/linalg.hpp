#pragma once

#include <functional>
#include <span>
#include <vector>

#include "griffiths/matrix.hpp"

namespace griffiths {

/// The matrix bracket (a, b) = ᵀa·b − ᵀb·a of two q×p matrices. The result is
/// p×p and skew-symmetric bit for bit: the second term is formed as the
/// transpose of the first.
Matrix bracket(const Matrix& a, const Matrix& b);

/// a·b − b·a for square matrices of equal size.
Matrix commutator(const Matrix& a, const Matrix& b);

struct SymSkew {
  Matrix sym;
  Matrix skew;
};

SymSkew sym_skew_split(const Matrix& m);
Matrix symmetric_part(const Matrix& m);
Matrix skew_part(const Matrix& m);

/// Complex bilinear dot product Σ u_k v_k (no conjugation).
Complex bilinear_dot(std::span<const Complex> u, std::span<const Complex> v);
/// Hermitian 2-norm sqrt(Σ |u_k|²).
double hermitian_norm(std::span<const Complex> u);

bool is_symmetric(const Matrix& m, const Tolerance& tol);
bool is_skew(const Matrix& m, const Tolerance& tol);
bool is_complex_orthogonal(const Matrix& c, const Tolerance& tol);
bool commutes(const Matrix& a, const Matrix& b, const Tolerance& tol);

struct OrthogonalDiagonalization {
  /// Rows of `c` are bilinear-normalized common eigenvectors, so that
  /// c·A·ᵀc is diagonal for every member A of the family.
  Matrix c;
  /// Diagonal matrices, one per family member, in family order.
  std::vector<Matrix> diagonals;
  /// Index of the family member whose eigenvectors were used.
  std::size_t pivot = 0;
};

/// Simultaneous complex-orthogonal diagonalization of a commuting family of
/// complex symmetric matrices. The eigenbasis comes from the member with the
/// widest minimal eigenvalue gap; eigenvalues are ordered by decreasing real
/// part (then imaginary part). An eigenvector v is rejected as isotropic
/// when |v·v| < sqrt(tol)·‖v‖².
///
/// Throws NotSymmetric, NotCommuting, NoDistinctSpectrum or
/// IsotropicEigenvector.
OrthogonalDiagonalization simultaneous_orthogonal_diagonalization(std::span<const Matrix> family,
                                                                  const Tolerance& tol = Tolerance{});

/// Eigenvalues and right eigenvectors (columns) of a general complex matrix.
struct EigenDecomposition {
  Vector values;
  std::vector<Vector> vectors;
};
EigenDecomposition eigen_decompose(const Matrix& m);

using MatrixFunction = std::function<Matrix(std::span<const Complex>)>;

/// Central-difference partial derivatives ∂f/∂u_k, one matrix per coordinate,
/// using a real step along each complex coordinate (valid for holomorphic f).
std::vector<Matrix> finite_difference_jacobian(const MatrixFunction& f, std::span<const Complex> u,
                                               double step);

/// Exponential of a complex skew-symmetric matrix by scaling and squaring.
/// The result is complex orthogonal. Throws NotSkew.
Matrix matrix_exp_skew(const Matrix& s, const Tolerance& tol = Tolerance(1e-12, 1e-12));

Complex determinant(const Matrix& m);
/// Solves m·x = rhs column by column. Throws Singular.
Matrix solve(const Matrix& m, const Matrix& rhs);
std::vector<double> singular_values(const Matrix& m);

/// Columns of `vectors` independent: smallest singular value above
/// `relative` times the largest.
bool linearly_independent(std::span<const Vector> vectors, double relative = 1e-10);

/// sin of the largest principal angle between span(a) and span(b), both given
/// as lists of equal-length vectors of full rank.
double subspace_distance(std::span<const Vector> a, std::span<const Vector> b);

}  // namespace griffiths
