#include "griffiths/generating_functions.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "griffiths/error.hpp"
#include "griffiths/linalg.hpp"

namespace griffiths {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_quadratic_shape(const QuadraticFamily& f, std::size_t p, std::size_t q) {
  if (f.a.size() != p - 1) throw Error(ErrorCode::ShapeMismatch, "quadratic family needs p - 1 matrices");
  for (const auto& m : f.a)
    if (m.rows() != q || m.cols() != q) throw Error(ErrorCode::ShapeMismatch, "quadratic matrices must be q x q");
}

void check_separable_shape(const SeparableFamily& f, std::size_t p, std::size_t q) {
  if (f.h.size() != p - 1) throw Error(ErrorCode::ShapeMismatch, "separable family needs p - 1 rows");
  for (const auto& row : f.h)
    if (row.size() != q) throw Error(ErrorCode::ShapeMismatch, "separable rows need q polynomials");
}

QuadraticFamily symmetrized(QuadraticFamily f) {
  for (auto& m : f.a) m = symmetric_part(m);
  return f;
}

void check_index(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u) {
  if (l < 1 || l >= s.p()) {
    throw Error(ErrorCode::IndexOutOfRange, "generating function index " + std::to_string(l) +
                                                " outside [1, " + std::to_string(s.p() - 1) + "]");
  }
  if (u.size() != s.q()) throw Error(ErrorCode::ShapeMismatch, "point must have length q");
}

Complex eval_quadratic(const QuadraticFamily& f, std::size_t l, std::span<const Complex> u) {
  return 0.5 * bilinear_dot(u, f.a[l - 1] * u);
}

Complex eval_separable(const SeparableFamily& f, std::size_t l, std::span<const Complex> u) {
  Complex acc{};
  for (std::size_t j = 0; j < u.size(); ++j) acc += f.h[l - 1][j](u[j]);
  return acc;
}

Vector grad_quadratic(const QuadraticFamily& f, std::size_t l, std::span<const Complex> u) {
  return f.a[l - 1] * u;
}

Vector grad_separable(const SeparableFamily& f, std::size_t l, std::span<const Complex> u) {
  Vector g(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) g[j] = f.h[l - 1][j].derivative()(u[j]);
  return g;
}

Matrix hess_separable(const SeparableFamily& f, std::size_t l, std::span<const Complex> u) {
  Vector d(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) d[j] = f.h[l - 1][j].derivative().derivative()(u[j]);
  return Matrix::diagonal(d);
}

Complex eval_inner(const std::variant<QuadraticFamily, SeparableFamily>& inner, std::size_t l,
                   std::span<const Complex> u) {
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return eval_quadratic(f, l, u); },
                               [&](const SeparableFamily& f) { return eval_separable(f, l, u); }},
                    inner);
}

Vector grad_inner(const std::variant<QuadraticFamily, SeparableFamily>& inner, std::size_t l,
                  std::span<const Complex> u) {
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return grad_quadratic(f, l, u); },
                               [&](const SeparableFamily& f) { return grad_separable(f, l, u); }},
                    inner);
}

Matrix hess_inner(const std::variant<QuadraticFamily, SeparableFamily>& inner, std::size_t l,
                  std::span<const Complex> u) {
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return f.a[l - 1]; },
                               [&](const SeparableFamily& f) { return hess_separable(f, l, u); }},
                    inner);
}

SeparableFamily normalized(SeparableFamily f) {
  for (auto& row : f.h)
    for (auto& poly : row) poly = poly.drop_below(2);
  return f;
}

bool separable_normalized(const SeparableFamily& f) {
  for (const auto& row : f.h)
    for (const auto& poly : row)
      if (poly.coefficient(0) != Complex{} || poly.coefficient(1) != Complex{}) return false;
  return true;
}

}  // namespace

UnivariatePoly::UnivariatePoly(std::vector<Complex> coefficients) : coefficients_(std::move(coefficients)) {
  for (const auto& z : coefficients_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::NonFinite, "polynomial coefficient is not finite");
    }
  }
  while (!coefficients_.empty() && coefficients_.back() == Complex{}) coefficients_.pop_back();
}

Complex UnivariatePoly::operator()(Complex x) const noexcept {
  Complex acc{};
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (coefficients_.size() <= 1) return {};
  std::vector<Complex> d(coefficients_.size() - 1);
  for (std::size_t k = 1; k < coefficients_.size(); ++k) d[k - 1] = static_cast<double>(k) * coefficients_[k];
  return UnivariatePoly(std::move(d));
}

UnivariatePoly UnivariatePoly::antiderivative() const {
  if (coefficients_.empty()) return {};
  std::vector<Complex> a(coefficients_.size() + 1);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) a[k + 1] = coefficients_[k] / static_cast<double>(k + 1);
  return UnivariatePoly(std::move(a));
}

UnivariatePoly UnivariatePoly::drop_below(std::size_t degree) const {
  std::vector<Complex> c = coefficients_;
  for (std::size_t k = 0; k < degree && k < c.size(); ++k) c[k] = Complex{};
  return UnivariatePoly(std::move(c));
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
  std::vector<Complex> c(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coefficient(k) + b.coefficient(k);
  return UnivariatePoly(std::move(c));
}

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i)
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) c[i + j] += a.coefficients_[i] * b.coefficients_[j];
  return UnivariatePoly(std::move(c));
}

GeneratingSystem::GeneratingSystem(std::size_t p, std::size_t q, Family family)
    : p_(p), q_(q), family_(std::move(family)) {
  if (p == 0 || q == 0) throw Error(ErrorCode::ShapeMismatch, "p and q must be positive");
  std::visit(Overloaded{[&](const QuadraticFamily& f) { check_quadratic_shape(f, p, q); },
                        [&](const SeparableFamily& f) { check_separable_shape(f, p, q); },
                        [&](const ConjugatedFamily& f) {
                          if (f.c.rows() != q || f.c.cols() != q) {
                            throw Error(ErrorCode::ShapeMismatch, "conjugating matrix must be q x q");
                          }
                          std::visit(Overloaded{[&](const QuadraticFamily& g) { check_quadratic_shape(g, p, q); },
                                                [&](const SeparableFamily& g) { check_separable_shape(g, p, q); }},
                                     f.inner);
                        }},
             family_);
}

GeneratingSystem GeneratingSystem::quadratic(std::size_t q, std::vector<Matrix> a, const Tolerance& tol) {
  const std::size_t p = a.size() + 1;
  DistinguishedBasis d{p, q, a};
  d.validate(tol);
  return GeneratingSystem(p, q, symmetrized(QuadraticFamily{std::move(a)}));
}

GeneratingSystem GeneratingSystem::separable(std::size_t q, std::vector<std::vector<UnivariatePoly>> h) {
  const std::size_t p = h.size() + 1;
  return GeneratingSystem(p, q, SeparableFamily{std::move(h)});
}

GeneratingSystem GeneratingSystem::conjugated(std::size_t q, std::variant<QuadraticFamily, SeparableFamily> inner,
                                              Matrix c, const Tolerance& tol) {
  if (!c.is_square() || c.rows() != q) throw Error(ErrorCode::ShapeMismatch, "conjugating matrix must be q x q");
  if (!is_complex_orthogonal(c, tol)) throw Error(ErrorCode::NotOrthogonal, "conjugating matrix is not orthogonal");
  std::size_t p = 0;
  if (auto* quad = std::get_if<QuadraticFamily>(&inner)) {
    p = quad->a.size() + 1;
    DistinguishedBasis{p, q, quad->a}.validate(tol);
    inner = symmetrized(*quad);
  } else {
    p = std::get<SeparableFamily>(inner).h.size() + 1;
  }
  return GeneratingSystem(p, q, ConjugatedFamily{std::move(inner), std::move(c)});
}

GeneratingSystem GeneratingSystem::unchecked(std::size_t p, std::size_t q, Family family) {
  if (auto* quad = std::get_if<QuadraticFamily>(&family)) family = symmetrized(*quad);
  if (auto* conj = std::get_if<ConjugatedFamily>(&family)) {
    if (auto* quad = std::get_if<QuadraticFamily>(&conj->inner)) conj->inner = symmetrized(*quad);
  }
  return GeneratingSystem(p, q, std::move(family));
}

Complex eval(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u) {
  check_index(s, l, u);
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return eval_quadratic(f, l, u); },
                               [&](const SeparableFamily& f) { return eval_separable(f, l, u); },
                               [&](const ConjugatedFamily& f) { return eval_inner(f.inner, l, f.c * u); }},
                    s.family());
}

Vector grad(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u) {
  check_index(s, l, u);
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return grad_quadratic(f, l, u); },
                               [&](const SeparableFamily& f) { return grad_separable(f, l, u); },
                               [&](const ConjugatedFamily& f) {
                                 return f.c.transpose() * grad_inner(f.inner, l, f.c * u);
                               }},
                    s.family());
}

Matrix hess(const GeneratingSystem& s, std::size_t l, std::span<const Complex> u) {
  check_index(s, l, u);
  return std::visit(Overloaded{[&](const QuadraticFamily& f) { return f.a[l - 1]; },
                               [&](const SeparableFamily& f) { return hess_separable(f, l, u); },
                               [&](const ConjugatedFamily& f) {
                                 return symmetric_part(f.c.transpose() * hess_inner(f.inner, l, f.c * u) * f.c);
                               }},
                    s.family());
}

double commutator_residual(const GeneratingSystem& s, std::span<const Complex> u) {
  std::vector<Matrix> h;
  for (std::size_t l = 1; l < s.p(); ++l) h.push_back(hess(s, l, u));
  double r = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) r = std::max(r, commutator(h[i], h[j]).max_abs());
  return r;
}

GeneratingSystem system_matching_hessians(const DistinguishedBasis& target,
                                          const std::vector<std::vector<UnivariatePoly>>& enrichment,
                                          const Tolerance& tol) {
  target.validate(tol);
  const std::size_t p = target.p;
  const std::size_t q = target.q;
  if (!enrichment.empty()) {
    if (enrichment.size() != p - 1) throw Error(ErrorCode::ShapeMismatch, "enrichment needs p - 1 rows");
    for (const auto& row : enrichment) {
      if (row.size() != q) throw Error(ErrorCode::ShapeMismatch, "enrichment rows need q polynomials");
      for (const auto& poly : row) {
        if (poly.coefficient(0) != Complex{} || poly.coefficient(1) != Complex{} || poly.coefficient(2) != Complex{}) {
          throw Error(ErrorCode::InvariantViolation, "enrichment must vanish to second order at 0");
        }
        if (poly.degree() > kMaxEnrichmentDegree) {
          throw Error(ErrorCode::InvariantViolation, "enrichment degree exceeds the cap");
        }
      }
    }
  }

  bool all_diagonal = true;
  for (const auto& a : target.a)
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j)
        if (i != j && a(i, j) != Complex{}) all_diagonal = false;

  std::vector<Matrix> diagonals = target.a;
  std::optional<Matrix> c;
  if (!all_diagonal) {
    auto diag = simultaneous_orthogonal_diagonalization(target.a, tol);
    diagonals = std::move(diag.diagonals);
    c = std::move(diag.c);
  }

  SeparableFamily seed;
  for (std::size_t l = 1; l < p; ++l) {
    std::vector<UnivariatePoly> row;
    for (std::size_t j = 0; j < q; ++j) {
      UnivariatePoly poly({0.0, 0.0, 0.5 * diagonals[l - 1](j, j)});
      if (!enrichment.empty()) poly = poly + enrichment[l - 1][j];
      row.push_back(std::move(poly));
    }
    seed.h.push_back(std::move(row));
  }
  if (!c) return GeneratingSystem::separable(q, std::move(seed.h));
  return GeneratingSystem::conjugated(q, std::move(seed), std::move(*c), tol);
}

GeneratingSystem normalize_jet(const GeneratingSystem& s) {
  Family f = std::visit(
      Overloaded{[](const QuadraticFamily& g) -> Family { return g; },
                 [](const SeparableFamily& g) -> Family { return normalized(g); },
                 [](const ConjugatedFamily& g) -> Family {
                   if (const auto* sep = std::get_if<SeparableFamily>(&g.inner)) {
                     return ConjugatedFamily{normalized(*sep), g.c};
                   }
                   return g;
                 }},
      s.family());
  return GeneratingSystem::unchecked(s.p(), s.q(), std::move(f));
}

bool is_jet_normalized(const GeneratingSystem& s) noexcept {
  return std::visit(Overloaded{[](const QuadraticFamily&) { return true; },
                               [](const SeparableFamily& g) { return separable_normalized(g); },
                               [](const ConjugatedFamily& g) {
                                 const auto* sep = std::get_if<SeparableFamily>(&g.inner);
                                 return sep == nullptr || separable_normalized(*sep);
                               }},
                    s.family());
}

}  // namespace griffiths
