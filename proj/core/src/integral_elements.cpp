#include "griffiths/integral_elements.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "griffiths/error.hpp"
#include "griffiths/linalg.hpp"

namespace griffiths {

namespace {

std::vector<Vector> flatten(const std::vector<Matrix>& basis) {
  std::vector<Vector> out;
  out.reserve(basis.size());
  for (const auto& m : basis) out.emplace_back(m.data().begin(), m.data().end());
  return out;
}

Vector unit_vector(std::size_t n, std::size_t k) {
  Vector v(n);
  v[k] = 1.0;
  return v;
}

// Columns M_1 v, …, M_q v.
Matrix image_matrix(const AbelianElement& e, std::span<const Complex> v) {
  std::vector<Vector> cols;
  cols.reserve(e.basis().size());
  for (const auto& m : e.basis()) cols.push_back(m * v);
  return Matrix::from_columns(cols);
}

void require_q_dimensional(const AbelianElement& e) {
  if (e.basis().size() != e.q()) {
    throw Error(ErrorCode::DimensionMismatch, "genericity needs exactly q = " + std::to_string(e.q()) +
                                                  " basis members, got " +
                                                  std::to_string(e.basis().size()));
  }
}

}  // namespace

AbelianElement::AbelianElement(std::size_t p, std::size_t q, std::vector<Matrix> basis)
    : p_(p), q_(q), basis_(std::move(basis)) {
  if (p == 0 || q == 0) throw Error(ErrorCode::ShapeMismatch, "p and q must be positive");
  for (const auto& m : basis_) {
    if (m.rows() != q || m.cols() != p) {
      throw Error(ErrorCode::ShapeMismatch, "basis members must be q x p");
    }
  }
  if (!linearly_independent(flatten(basis_))) {
    throw Error(ErrorCode::InvariantViolation, "basis members are linearly dependent");
  }
}

void DistinguishedBasis::validate(const Tolerance& tol) const {
  if (p == 0 || q == 0) throw Error(ErrorCode::InvariantViolation, "p and q must be positive");
  if (a.size() != p - 1) {
    throw Error(ErrorCode::InvariantViolation,
                "expected p - 1 = " + std::to_string(p - 1) + " matrices, got " + std::to_string(a.size()));
  }
  for (const auto& m : a) {
    if (m.rows() != q || m.cols() != q) throw Error(ErrorCode::InvariantViolation, "matrices must be q x q");
    if (!is_symmetric(m, tol)) throw Error(ErrorCode::InvariantViolation, "matrix is not symmetric");
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!commutes(a[i], a[j], tol)) {
        throw Error(ErrorCode::InvariantViolation,
                    "A_" + std::to_string(i + 2) + " and A_" + std::to_string(j + 2) + " do not commute");
      }
}

bool DistinguishedBasis::is_valid(const Tolerance& tol) const noexcept {
  try {
    validate(tol);
    return true;
  } catch (const Error&) {
    return false;
  }
}

HTransform::HTransform(Matrix a, Matrix b, const Tolerance& tol) : a_(std::move(a)), b_(std::move(b)) {
  if (!a_.is_square() || !b_.is_square()) throw Error(ErrorCode::NotSquare, "transform factors must be square");
  const auto sv = singular_values(a_);
  if (!(sv.back() > 1e-12 * sv.front())) throw Error(ErrorCode::Singular, "A is not invertible");
  if (!is_complex_orthogonal(b_, tol)) throw Error(ErrorCode::NotOrthogonal, "B is not complex orthogonal");
}

HTransform HTransform::identity(std::size_t p, std::size_t q) {
  return HTransform(Matrix::identity(p), Matrix::identity(q));
}

bool is_abelian(const AbelianElement& e, const Tolerance& tol) {
  const auto& basis = e.basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!tol.accepts(bracket(basis[i], basis[j]).max_abs(), basis[i].max_abs() * basis[j].max_abs())) {
        return false;
      }
  return true;
}

bool passes_genericity_test(const AbelianElement& e, std::span<const Complex> v, const Tolerance& tol) {
  require_q_dimensional(e);
  if (v.size() != e.p()) throw Error(ErrorCode::ShapeMismatch, "witness must have length p");
  const Matrix w = image_matrix(e, v);
  double scale = 1.0;
  for (std::size_t k = 0; k < w.cols(); ++k) {
    const double n = hermitian_norm(w.column(k));
    if (n == 0.0) return false;
    scale *= n;
  }
  return std::abs(determinant(w)) > tol.bound(scale);
}

std::optional<Vector> genericity_witness(const AbelianElement& e, int trials, std::uint64_t seed,
                                         const Tolerance& tol) {
  require_q_dimensional(e);
  for (std::size_t k = 0; k < e.p(); ++k) {
    Vector v = unit_vector(e.p(), k);
    if (passes_genericity_test(e, v, tol)) return v;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  for (int t = 0; t < trials; ++t) {
    Vector v(e.p());
    for (auto& z : v) {
      const double re = normal(rng);
      const double im = normal(rng);
      z = Complex(re, im);
    }
    if (passes_genericity_test(e, v, tol)) return v;
  }
  return std::nullopt;
}

std::vector<Matrix> assemble_distinguished(const DistinguishedBasis& d) {
  if (d.p == 0 || d.q == 0 || d.a.size() != d.p - 1) {
    throw Error(ErrorCode::InvariantViolation, "distinguished basis needs p - 1 matrices");
  }
  std::vector<Matrix> basis;
  basis.reserve(d.q);
  for (std::size_t k = 0; k < d.q; ++k) {
    Matrix m(d.q, d.p);
    m.set(k, 0, 1.0);
    for (std::size_t l = 1; l < d.p; ++l) m.set_column(l, d.a[l - 1].column(k));
    basis.push_back(std::move(m));
  }
  return basis;
}

AbelianElement distinguished_from_commuting(const DistinguishedBasis& d, const Tolerance& tol) {
  d.validate(tol);
  return AbelianElement(d.p, d.q, assemble_distinguished(d));
}

DistinguishedBasis commuting_from_distinguished(const AbelianElement& e, const Tolerance& tol) {
  const std::size_t p = e.p();
  const std::size_t q = e.q();
  if (e.basis().size() != q) throw Error(ErrorCode::NotDistinguished, "distinguished bases have q members");
  for (std::size_t k = 0; k < q; ++k) {
    const Vector first = e.basis()[k].column(0);
    for (std::size_t i = 0; i < q; ++i) {
      const Complex expected = i == k ? 1.0 : 0.0;
      if (!tol.accepts(std::abs(first[i] - expected))) {
        throw Error(ErrorCode::NotDistinguished,
                    "first column of member " + std::to_string(k + 1) + " is not e_" + std::to_string(k + 1));
      }
    }
  }
  DistinguishedBasis d{p, q, {}};
  for (std::size_t l = 1; l < p; ++l) {
    Matrix a(q, q);
    for (std::size_t k = 0; k < q; ++k) a.set_column(k, e.basis()[k].column(l));
    d.a.push_back(std::move(a));
  }
  return d;
}

AbelianElement apply_h_transform(const AbelianElement& e, const HTransform& h) {
  if (h.a().rows() != e.p() || h.b().rows() != e.q()) {
    throw Error(ErrorCode::ShapeMismatch, "transform does not match element shape");
  }
  std::vector<Matrix> basis;
  basis.reserve(e.basis().size());
  for (const auto& m : e.basis()) basis.push_back(h.b() * m * h.a());
  return AbelianElement(e.p(), e.q(), std::move(basis));
}

Normalization normalize_to_distinguished(const AbelianElement& e, std::span<const Complex> witness,
                                         const Tolerance& tol) {
  require_q_dimensional(e);
  if (!passes_genericity_test(e, witness, tol)) {
    throw Error(ErrorCode::NotGeneric, "witness fails the determinant test");
  }
  const std::size_t p = e.p();
  const std::size_t q = e.q();

  // Complete the witness to a basis of C^p with Hermitian Gram–Schmidt,
  // greedily taking the standard vector with the largest residual.
  std::vector<Vector> columns{Vector(witness.begin(), witness.end())};
  std::vector<Vector> orthonormal;
  {
    Vector w = columns.front();
    const double n = hermitian_norm(w);
    for (auto& z : w) z /= n;
    orthonormal.push_back(std::move(w));
  }
  std::vector<bool> used(p, false);
  while (columns.size() < p) {
    double best_norm = -1.0;
    std::size_t best = 0;
    Vector best_residual;
    for (std::size_t i = 0; i < p; ++i) {
      if (used[i]) continue;
      Vector r = unit_vector(p, i);
      for (const auto& qv : orthonormal) {
        const Complex coeff = std::conj(qv[i]);
        for (std::size_t k = 0; k < p; ++k) r[k] -= coeff * qv[k];
      }
      const double n = hermitian_norm(r);
      if (n > best_norm + 1e-12) {
        best_norm = n;
        best = i;
        best_residual = std::move(r);
      }
    }
    used[best] = true;
    for (auto& z : best_residual) z /= best_norm;
    columns.push_back(best_residual);
    orthonormal.push_back(std::move(best_residual));
  }

  HTransform h(Matrix::from_columns(columns), Matrix::identity(q));
  const AbelianElement moved = apply_h_transform(e, h);

  // Re-frame so that each member sends e_1 to the matching standard vector.
  const Matrix images = image_matrix(moved, unit_vector(p, 0));
  const Matrix coefficients = solve(images, Matrix::identity(q));
  std::vector<Matrix> reframed;
  reframed.reserve(q);
  for (std::size_t j = 0; j < q; ++j) {
    Matrix n(q, p);
    for (std::size_t k = 0; k < q; ++k) n += coefficients(k, j) * moved.basis()[k];
    reframed.push_back(std::move(n));
  }
  const AbelianElement distinguished(p, q, std::move(reframed));
  return {commuting_from_distinguished(distinguished, Tolerance(1e-8, 1e-8)), h};
}

Dimensions dims(std::size_t p, std::size_t q) {
  if (p == 0 || q == 0) throw Error(ErrorCode::InvariantViolation, "p and q must be positive");
  const auto pp = static_cast<long long>(p);
  const auto qq = static_cast<long long>(q);
  const long long codim = pp * (pp - 1) / 2;
  const long long max_dim = (qq % 2 == 0) ? pp * qq / 2 : pp * (qq - 1) / 2 + 1;
  return {pp * qq + codim, pp * qq, codim, max_dim};
}

bool tangent_in_distribution(const TangentVector& t, const Tolerance& tol) {
  return tol.accepts(t.psi.max_abs());
}

}  // namespace griffiths
