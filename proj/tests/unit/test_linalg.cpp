#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "griffiths/griffiths.hpp"
#include "test_support.hpp"

namespace griffiths {
namespace {

using testing::Rng;

const Complex I{0.0, 1.0};

TEST(Matrix, RejectsNonFiniteAndBadShapes) {
  EXPECT_THROW(Matrix(2, 2, {1.0, 2.0, 3.0}), Error);
  EXPECT_THROW(Matrix(0, 2), Error);
  EXPECT_THROW(Matrix(1, 1, {Complex(std::nan(""), 0.0)}), Error);
  Matrix m(1, 1);
  EXPECT_THROW(m.set(0, 0, Complex(INFINITY, 0.0)), Error);
  EXPECT_THROW(Matrix(2, 2) * Matrix(3, 1), Error);
}

TEST(Tolerance, NeedsAPositivePart) {
  EXPECT_THROW(Tolerance(0.0, 0.0), Error);
  EXPECT_THROW(Tolerance(-1.0, 1.0), Error);
  EXPECT_TRUE(Tolerance(1e-3, 1e-2).accepts(0.05, 10.0));
  EXPECT_FALSE(Tolerance(1e-3, 1e-2).accepts(0.2, 10.0));
}

TEST(Bracket, CanonicalColumnsCommute) {
  // M_i = [e_i, 0, ..., 0] pairwise.
  const auto a0 = testing::a0(3, 4);
  for (const auto& a : a0.basis())
    for (const auto& b : a0.basis()) EXPECT_EQ(bracket(a, b).max_abs(), 0.0);
}

TEST(Bracket, SelfBracketVanishes) {
  Rng rng(1);
  const Matrix a = rng.matrix(3, 4);
  EXPECT_EQ(bracket(a, a).max_abs(), 0.0);
}

TEST(Bracket, TwoByTwoHandValue) {
  const Matrix a{{1.0, 0.0}, {0.0, 0.0}};
  const Matrix b{{0.0, 1.0}, {0.0, 0.0}};
  const Matrix expected{{0.0, 1.0}, {-1.0, 0.0}};
  EXPECT_EQ(bracket(a, b), expected);
  EXPECT_EQ(testing::bracket_by_columns(a, b), expected);
}

TEST(Bracket, ShapeMismatch) {
  try {
    bracket(Matrix(2, 3), Matrix(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
}

TEST(BracketProperties, AntisymmetricBilinearAndMatchesEntrywiseFormula) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t q = rng.index(1, 5);
    const std::size_t p = rng.index(1, 5);
    const Matrix a = rng.matrix(q, p);
    const Matrix a2 = rng.matrix(q, p);
    const Matrix b = rng.matrix(q, p);
    const Complex alpha = rng.complex();
    const Complex beta = rng.complex();

    const Matrix br = bracket(a, b);
    EXPECT_EQ((br + br.transpose()).max_abs(), 0.0);
    EXPECT_LE(max_abs_diff(br, testing::bracket_by_columns(a, b)), 1e-12);
    const Matrix lhs = bracket(alpha * a + beta * a2, b);
    const Matrix rhs = alpha * bracket(a, b) + beta * bracket(a2, b);
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * 10);
  }
}

TEST(BracketProperties, HEquivariance) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t q = rng.index(1, 5);
    const std::size_t p = rng.index(1, 5);
    const Matrix a = rng.matrix(q, p);
    const Matrix b = rng.matrix(q, p);
    const Matrix A = rng.invertible(p);
    const Matrix B = rng.orthogonal(q);
    const Matrix lhs = bracket(B * a * A, B * b * A);
    const Matrix rhs = A.transpose() * bracket(a, b) * A;
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-10);
  }
}

TEST(SymSkewSplit, Examples) {
  const auto id = sym_skew_split(Matrix::identity(2));
  EXPECT_EQ(id.sym, Matrix::identity(2));
  EXPECT_EQ(id.skew.max_abs(), 0.0);

  const Matrix j{{0.0, 1.0}, {-1.0, 0.0}};
  const auto js = sym_skew_split(j);
  EXPECT_EQ(js.sym.max_abs(), 0.0);
  EXPECT_EQ(js.skew, j);

  const auto m = sym_skew_split(Matrix{{1.0, 2.0}, {4.0, 3.0}});
  EXPECT_EQ(m.sym, (Matrix{{1.0, 3.0}, {3.0, 3.0}}));
  EXPECT_EQ(m.skew, (Matrix{{0.0, -1.0}, {1.0, 0.0}}));

  EXPECT_THROW(sym_skew_split(Matrix(2, 3)), Error);
}

TEST(BilinearDot, NoConjugation) {
  const Vector iso{1.0, I};
  EXPECT_EQ(bilinear_dot(iso, iso), Complex(0.0));
  EXPECT_EQ(bilinear_dot(testing::unit(3, 0), testing::unit(3, 0)), Complex(1.0));
  EXPECT_EQ(bilinear_dot(Vector{1.0, 2.0}, Vector{3.0, 4.0}), Complex(11.0));
  EXPECT_THROW(bilinear_dot(Vector{1.0}, Vector{1.0, 2.0}), Error);
}

TEST(ComplexOrthogonal, Examples) {
  const Tolerance tol(1e-12);
  EXPECT_TRUE(is_complex_orthogonal(Matrix::identity(3), tol));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(is_complex_orthogonal(Matrix{{r, r}, {r, -r}}, tol));
  EXPECT_FALSE(is_complex_orthogonal(Matrix{{2.0, 0.0}, {0.0, 1.0}}, tol));
  // Complex orthogonal but not unitary.
  const Complex s = std::sinh(Complex(0.7));
  const Complex ch = std::cosh(Complex(0.7));
  EXPECT_TRUE(is_complex_orthogonal(Matrix{{ch, I * s}, {-I * s, ch}}, tol));
  EXPECT_THROW(is_complex_orthogonal(Matrix(2, 3), tol), Error);
}

TEST(SimultaneousDiagonalization, SingleDiagonalMember) {
  const std::vector<Matrix> family{Matrix::diagonal(Vector{1.0, 2.0})};
  const auto result = simultaneous_orthogonal_diagonalization(family);
  // Row permutation of the identity; eigenvalues come back in decreasing order.
  EXPECT_LE(max_abs_diff(result.c, Matrix{{0.0, 1.0}, {1.0, 0.0}}), 1e-14);
  EXPECT_LE(max_abs_diff(result.diagonals[0], Matrix::diagonal(Vector{2.0, 1.0})), 1e-14);
}

TEST(SimultaneousDiagonalization, SwapAndAffineCompanion) {
  const Matrix swap{{0.0, 1.0}, {1.0, 0.0}};
  const Matrix companion{{2.0, 3.0}, {3.0, 2.0}};
  const std::vector<Matrix> family{swap, companion};
  const auto result = simultaneous_orthogonal_diagonalization(family);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LE(max_abs_diff(result.c, Matrix{{r, r}, {r, -r}}), 1e-12);
  EXPECT_LE(max_abs_diff(result.diagonals[0], Matrix::diagonal(Vector{1.0, -1.0})), 1e-12);
  EXPECT_LE(max_abs_diff(result.diagonals[1], Matrix::diagonal(Vector{5.0, -1.0})), 1e-12);
  // Independent check by explicit multiplication.
  EXPECT_LE(max_abs_diff(result.c * companion * result.c.transpose(), Matrix::diagonal(Vector{5.0, -1.0})), 1e-12);
}

TEST(SimultaneousDiagonalization, Errors) {
  auto code_of = [](const std::vector<Matrix>& family) {
    try {
      simultaneous_orthogonal_diagonalization(family);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  EXPECT_EQ(code_of({Matrix::identity(2), Matrix::identity(2)}), ErrorCode::NoDistinctSpectrum);
  EXPECT_EQ(code_of({Matrix{{1.0, 2.0}, {0.0, 1.0}}}), ErrorCode::NotSymmetric);
  EXPECT_EQ(code_of({Matrix::diagonal(Vector{1.0, 2.0}), Matrix{{0.0, 1.0}, {1.0, 0.0}}}), ErrorCode::NotCommuting);
  // Symmetric and nilpotent: a double eigenvalue.
  const Matrix nilpotent{{1.0, I}, {I, -1.0}};
  EXPECT_EQ(code_of({nilpotent}), ErrorCode::NoDistinctSpectrum);
}

TEST(SimultaneousDiagonalization, NearlyIsotropicEigenvectors) {
  // a² + b² ≈ 0: eigenvalues ±4.5e-7 with eigenvectors close to (1, ±i).
  const Complex b = I * (1.0 - 1e-13);
  const Matrix near{{1.0, b}, {b, -1.0}};
  try {
    simultaneous_orthogonal_diagonalization(std::vector<Matrix>{near}, Tolerance(1e-5));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoDistinctSpectrum);
  }
  // Distinct enough for the gap test, too isotropic to normalize accurately.
  try {
    simultaneous_orthogonal_diagonalization(std::vector<Matrix>{near});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IsotropicEigenvector);
  }
  // A milder case is accepted and reconstructs accurately.
  const Complex b2 = I * 0.9;
  const Matrix mild{{1.0, b2}, {b2, -1.0}};
  const auto result = simultaneous_orthogonal_diagonalization(std::vector<Matrix>{mild});
  EXPECT_LE(max_abs_diff(result.c.transpose() * result.diagonals[0] * result.c, mild), 1e-12);
}

TEST(SimultaneousDiagonalizationProperties, RoundTripOnRandomFamilies) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t q = rng.index(2, 5);
    const auto family = rng.commuting_family(rng.index(1, 3), q);
    const auto result = simultaneous_orthogonal_diagonalization(family);
    EXPECT_TRUE(is_complex_orthogonal(result.c, Tolerance(1e-10)));
    for (std::size_t l = 0; l < family.size(); ++l) {
      const Matrix d = result.c * family[l] * result.c.transpose();
      EXPECT_TRUE(testing::is_diagonal(d, 1e-8 * std::max(1.0, family[l].max_abs())));
      const Matrix back = result.c.transpose() * result.diagonals[l] * result.c;
      EXPECT_LE(max_abs_diff(back, family[l]), 1e-8 * std::max(1.0, family[l].max_abs()));
    }
  }
}

TEST(FiniteDifference, ConstantAndSquare) {
  const Matrix k{{1.0, 2.0}};
  const auto zero = finite_difference_jacobian([&](std::span<const Complex>) { return k; }, Vector{0.3, 0.4}, 1e-5);
  ASSERT_EQ(zero.size(), 2u);
  EXPECT_EQ(zero[0].max_abs(), 0.0);
  EXPECT_EQ(zero[1].max_abs(), 0.0);

  const auto sq = finite_difference_jacobian(
      [](std::span<const Complex> u) { return Matrix(1, 1, {u[0] * u[0]}); }, Vector{3.0}, 1e-5);
  EXPECT_NEAR(std::abs(sq[0](0, 0) - 6.0), 0.0, 1e-8);
}

TEST(FiniteDifference, GradientOfQuadraticFormGivesColumns) {
  Rng rng(5);
  const Matrix a = symmetric_part(rng.matrix(3, 3));
  const auto jac = finite_difference_jacobian(
      [&](std::span<const Complex> u) {
        const Vector g = a * u;
        return Matrix::from_columns(std::vector<Vector>{g});
      },
      rng.vector(3), 1e-5);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(std::abs(jac[k](i, 0) - a(i, k)), 1e-8);
}

TEST(FiniteDifferenceProperties, CubicsWithinTenStepSquared) {
  Rng rng(6);
  const double step = 1e-3;
  for (int trial = 0; trial < 20; ++trial) {
    const Vector c = rng.vector(4);
    const Vector u = rng.vector(2);
    // f(u) = c0 u0³ + c1 u0² u1 + c2 u1³ + c3 u0 u1; analytic partials below.
    auto f = [&](std::span<const Complex> x) {
      return Matrix(1, 1, {c[0] * x[0] * x[0] * x[0] + c[1] * x[0] * x[0] * x[1] + c[2] * x[1] * x[1] * x[1] +
                           c[3] * x[0] * x[1]});
    };
    const auto jac = finite_difference_jacobian(f, u, step);
    const Complex d0 = 3.0 * c[0] * u[0] * u[0] + 2.0 * c[1] * u[0] * u[1] + c[3] * u[1];
    const Complex d1 = c[1] * u[0] * u[0] + 3.0 * c[2] * u[1] * u[1] + c[3] * u[0];
    EXPECT_LE(std::abs(jac[0](0, 0) - d0), 10 * step * step);
    EXPECT_LE(std::abs(jac[1](0, 0) - d1), 10 * step * step);
  }
}

TEST(MatrixExpSkew, ZeroAndRotation) {
  EXPECT_LE(max_abs_diff(matrix_exp_skew(Matrix(3, 3)), Matrix::identity(3)), 1e-15);
  const double theta = std::numbers::pi / 2;
  const Matrix rot = matrix_exp_skew(Matrix{{0.0, theta}, {-theta, 0.0}});
  EXPECT_LE(max_abs_diff(rot, Matrix{{0.0, 1.0}, {-1.0, 0.0}}), 1e-10);
}

TEST(MatrixExpSkew, RejectsNonSkew) {
  try {
    matrix_exp_skew(Matrix{{1.0, 0.0}, {0.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSkew);
  }
}

TEST(MatrixExpSkewProperties, OrthogonalForAdmissibleGenerators) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = rng.index(1, 6);
    Matrix s = rng.skew(n, 1.0);
    if (s.max_abs() > 0.0) s *= Complex(rng.uniform(0.0, 2.0) / s.max_abs());
    const Matrix e = matrix_exp_skew(s);
    EXPECT_LE(max_abs_diff(e.transpose() * e, Matrix::identity(n)), 1e-10);
  }
}

TEST(SubspaceDistance, IdenticalAndOrthogonalSpans) {
  const std::vector<Vector> a{testing::unit(3, 0), testing::unit(3, 1)};
  const std::vector<Vector> b{Vector{1.0, 1.0, 0.0}, Vector{1.0, -1.0, 0.0}};
  EXPECT_LE(subspace_distance(a, b), 1e-14);
  const std::vector<Vector> c{testing::unit(3, 0), testing::unit(3, 2)};
  EXPECT_NEAR(subspace_distance(a, c), 1.0, 1e-14);
}

TEST(LinearIndependence, DetectsDependence) {
  EXPECT_TRUE(linearly_independent(std::vector<Vector>{testing::unit(2, 0), testing::unit(2, 1)}));
  EXPECT_FALSE(linearly_independent(std::vector<Vector>{Vector{1.0, 2.0}, Vector{2.0, 4.0}}));
  EXPECT_FALSE(linearly_independent(std::vector<Vector>{Vector{1.0}, Vector{2.0}}));
}

}  // namespace
}  // namespace griffiths
