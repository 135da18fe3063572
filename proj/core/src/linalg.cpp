#include "griffiths/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "griffiths/error.hpp"

namespace griffiths {

namespace {

using EigenMatrix = Eigen::MatrixXcd;

EigenMatrix to_eigen(const Matrix& m) {
  EigenMatrix e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

Matrix from_eigen(const EigenMatrix& e) {
  std::vector<Complex> data(static_cast<std::size_t>(e.size()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      data[static_cast<std::size_t>(i * e.cols() + j)] = e(i, j);
  return Matrix(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()), std::move(data));
}

EigenMatrix columns_to_eigen(std::span<const Vector> vectors) {
  const auto n = vectors.empty() ? 0 : vectors.front().size();
  EigenMatrix e(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != n) throw Error(ErrorCode::ShapeMismatch, "vectors of unequal length");
    for (std::size_t i = 0; i < n; ++i)
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[j][i];
  }
  return e;
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, what);
}

double min_eigenvalue_gap(const Vector& values) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) gap = std::min(gap, std::abs(values[i] - values[j]));
  return gap;
}

// Fixes the sign ambiguity of a bilinear-normalized eigenvector: the first
// entry of (nearly) largest modulus gets a positive real part.
void canonical_sign(Vector& v) {
  const double largest = max_abs(v);
  for (auto& z : v) {
    if (std::abs(z) >= largest * (1.0 - 1e-9)) {
      const bool flip = z.real() < 0.0 || (std::abs(z.real()) <= 1e-12 * largest && z.imag() < 0.0);
      if (flip) {
        for (auto& w : v) w = -w;
      }
      return;
    }
  }
}

}  // namespace

Matrix bracket(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "bracket operands must share a shape");
  }
  const Matrix ab = a.transpose() * b;
  return ab - ab.transpose();
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator operand");
  return a * b - b * a;
}

SymSkew sym_skew_split(const Matrix& m) { return {symmetric_part(m), skew_part(m)}; }

Matrix symmetric_part(const Matrix& m) {
  require_square(m, "symmetric part of a non-square matrix");
  return 0.5 * (m + m.transpose());
}

Matrix skew_part(const Matrix& m) {
  require_square(m, "skew part of a non-square matrix");
  return 0.5 * (m - m.transpose());
}

Complex bilinear_dot(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::ShapeMismatch, "dot product of unequal lengths");
  Complex acc{};
  for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * v[k];
  return acc;
}

double hermitian_norm(std::span<const Complex> u) {
  double acc = 0.0;
  for (const auto& z : u) acc += std::norm(z);
  return std::sqrt(acc);
}

bool is_symmetric(const Matrix& m, const Tolerance& tol) {
  require_square(m, "symmetry test");
  return tol.accepts(max_abs_diff(m, m.transpose()), m.max_abs());
}

bool is_skew(const Matrix& m, const Tolerance& tol) {
  require_square(m, "skew test");
  return tol.accepts((m + m.transpose()).max_abs(), m.max_abs());
}

bool is_complex_orthogonal(const Matrix& c, const Tolerance& tol) {
  require_square(c, "orthogonality test");
  return tol.accepts(max_abs_diff(c.transpose() * c, Matrix::identity(c.rows())), 1.0);
}

bool commutes(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  return tol.accepts(commutator(a, b).max_abs(), a.max_abs() * b.max_abs());
}

EigenDecomposition eigen_decompose(const Matrix& m) {
  require_square(m, "eigendecomposition");
  Eigen::ComplexEigenSolver<EigenMatrix> solver(to_eigen(m), true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NoDistinctSpectrum, "eigensolver did not converge");
  }
  EigenDecomposition out;
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    out.values.push_back(values(k));
    Vector v(static_cast<std::size_t>(vectors.rows()));
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) v[static_cast<std::size_t>(i)] = vectors(i, k);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

OrthogonalDiagonalization simultaneous_orthogonal_diagonalization(std::span<const Matrix> family,
                                                                  const Tolerance& tol) {
  if (family.empty()) throw Error(ErrorCode::InvariantViolation, "empty family");
  const std::size_t n = family.front().rows();
  for (const auto& a : family) {
    if (!a.is_square() || a.rows() != n) throw Error(ErrorCode::ShapeMismatch, "family members differ in size");
    if (!is_symmetric(a, tol)) throw Error(ErrorCode::NotSymmetric, "family member is not symmetric");
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!commutes(family[i], family[j], tol)) {
        throw Error(ErrorCode::NotCommuting,
                    "members " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
      }

  std::size_t pivot = 0;
  double best_gap = -1.0;
  EigenDecomposition best;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto eig = eigen_decompose(family[i]);
    const double gap = min_eigenvalue_gap(eig.values);
    if (gap > best_gap) {
      best_gap = gap;
      pivot = i;
      best = std::move(eig);
    }
  }
  if (!(best_gap > tol.bound(family[pivot].max_abs()))) {
    throw Error(ErrorCode::NoDistinctSpectrum, "no family member has pairwise-distinct eigenvalues");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Complex a = best.values[x];
    const Complex b = best.values[y];
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });

  Matrix c(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    Vector v = best.vectors[order[row]];
    const Complex vv = bilinear_dot(v, v);
    const double hn = hermitian_norm(v);
    // Rounding in c grows like eps·(‖v‖²/|v·v|)², hence the square root.
    if (std::abs(vv) < std::sqrt(tol.bound(1.0)) * hn * hn) {
      throw Error(ErrorCode::IsotropicEigenvector, "eigenvector is isotropic for the bilinear form");
    }
    const Complex scale = 1.0 / std::sqrt(vv);
    for (auto& z : v) z *= scale;
    canonical_sign(v);
    for (std::size_t k = 0; k < n; ++k) c.set(row, k, v[k]);
  }

  OrthogonalDiagonalization out{c, {}, pivot};
  const Matrix ct = c.transpose();
  for (const auto& a : family) out.diagonals.push_back(Matrix::diagonal((c * a * ct).diagonal_entries()));
  return out;
}

std::vector<Matrix> finite_difference_jacobian(const MatrixFunction& f, std::span<const Complex> u,
                                               double step) {
  std::vector<Matrix> partials;
  partials.reserve(u.size());
  Vector forward(u.begin(), u.end());
  Vector backward(u.begin(), u.end());
  for (std::size_t k = 0; k < u.size(); ++k) {
    forward[k] = u[k] + step;
    backward[k] = u[k] - step;
    partials.push_back(Complex(1.0 / (2.0 * step)) * (f(forward) - f(backward)));
    forward[k] = u[k];
    backward[k] = u[k];
  }
  return partials;
}

Matrix matrix_exp_skew(const Matrix& s, const Tolerance& tol) {
  require_square(s, "exponential of a non-square matrix");
  if (!is_skew(s, tol)) throw Error(ErrorCode::NotSkew, "generator is not skew-symmetric");
  const std::size_t n = s.rows();
  Matrix a = skew_part(s);

  // Scale until the induced infinity norm is at most 1/2; the Taylor tail
  // beyond degree 24 is then below 2^-24/24!.
  const double norm_bound = static_cast<double>(n) * a.max_abs();
  int squarings = 0;
  if (norm_bound > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm_bound / 0.5)));
  a *= Complex(std::ldexp(1.0, -squarings));

  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = Complex(1.0 / k) * (term * a);
    result += term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

Complex determinant(const Matrix& m) {
  require_square(m, "determinant");
  return to_eigen(m).partialPivLu().determinant();
}

Matrix solve(const Matrix& m, const Matrix& rhs) {
  require_square(m, "linear solve");
  if (rhs.rows() != m.rows()) throw Error(ErrorCode::ShapeMismatch, "right-hand side rows");
  const auto lu = to_eigen(m).fullPivLu();
  if (!lu.isInvertible()) throw Error(ErrorCode::Singular, "matrix is singular");
  return from_eigen(lu.solve(to_eigen(rhs)));
}

std::vector<double> singular_values(const Matrix& m) {
  Eigen::JacobiSVD<EigenMatrix> svd(to_eigen(m));
  const auto& s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

bool linearly_independent(std::span<const Vector> vectors, double relative) {
  if (vectors.empty()) return true;
  const auto e = columns_to_eigen(vectors);
  if (e.rows() < e.cols()) return false;
  Eigen::JacobiSVD<EigenMatrix> svd(e);
  const auto& s = svd.singularValues();
  const double largest = s(0);
  const double smallest = s(s.size() - 1);
  return largest > 0.0 && smallest > relative * largest;
}

double subspace_distance(std::span<const Vector> a, std::span<const Vector> b) {
  const auto ea = columns_to_eigen(a);
  const auto eb = columns_to_eigen(b);
  if (ea.rows() != eb.rows()) throw Error(ErrorCode::ShapeMismatch, "subspaces live in different spaces");
  auto projector = [](const EigenMatrix& cols) {
    Eigen::HouseholderQR<EigenMatrix> qr(cols);
    const EigenMatrix q = qr.householderQ() * EigenMatrix::Identity(cols.rows(), cols.cols());
    return EigenMatrix(q * q.adjoint());
  };
  const EigenMatrix diff = projector(ea) - projector(eb);
  Eigen::JacobiSVD<EigenMatrix> svd(diff);
  return svd.singularValues()(0);
}

}  // namespace griffiths
