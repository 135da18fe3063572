#include <gtest/gtest.h>

#include "griffiths/griffiths.hpp"
#include "test_support.hpp"

namespace griffiths {
namespace {

using testing::Rng;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Parse;
}

GroupElement random_element(Rng& rng, std::size_t p, std::size_t q) {
  return GroupElement(rng.matrix(q, p), rng.matrix(p, q), rng.matrix(p, p));
}

double distance(const GroupElement& a, const GroupElement& b) {
  return std::max({max_abs_diff(a.x(), b.x()), max_abs_diff(a.y(), b.y()), max_abs_diff(a.z(), b.z())});
}

// Product of the assembled (2p+q)-square matrices, an independent route.
Matrix assemble(const GroupElement& g) {
  const std::size_t p = g.p();
  const std::size_t q = g.q();
  Matrix m = Matrix::identity(2 * p + q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < p; ++j) m.set(p + i, j, g.x()(i, j));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) m.set(p + q + i, p + j, g.y()(i, j));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m.set(p + q + i, j, g.z()(i, j));
  return m;
}

TEST(GroupElement, ScalarComposition) {
  // p = q = 1: Z = c + c' + b·a'.
  const GroupElement g(Matrix{{2.0}}, Matrix{{3.0}}, Matrix{{5.0}});
  const GroupElement h(Matrix{{7.0}}, Matrix{{11.0}}, Matrix{{13.0}});
  const auto gh = compose(g, h);
  EXPECT_EQ(gh.x(), (Matrix{{9.0}}));
  EXPECT_EQ(gh.y(), (Matrix{{14.0}}));
  EXPECT_EQ(gh.z(), (Matrix{{5.0 + 13.0 + 3.0 * 7.0}}));
}

TEST(GroupElement, ShapeChecks) {
  EXPECT_EQ(code_of([] { GroupElement(Matrix(2, 1), Matrix(2, 2), Matrix(1, 1)); }), ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([] { compose(GroupElement::identity(1, 2), GroupElement::identity(2, 1)); }),
            ErrorCode::ShapeMismatch);
}

TEST(GroupProperties, AxiomsAndAssembledProduct) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t p = rng.index(1, 4);
    const std::size_t q = rng.index(1, 4);
    const auto a = random_element(rng, p, q);
    const auto b = random_element(rng, p, q);
    const auto c = random_element(rng, p, q);
    EXPECT_LE(distance(compose(compose(a, b), c), compose(a, compose(b, c))), 1e-12);
    EXPECT_LE(distance(compose(a, inverse(a)), GroupElement::identity(p, q)), 1e-12);
    EXPECT_LE(distance(compose(inverse(a), a), GroupElement::identity(p, q)), 1e-12);
    EXPECT_LE(distance(compose(a, GroupElement::identity(p, q)), a), 0.0);
    EXPECT_LE(max_abs_diff(assemble(compose(a, b)), assemble(a) * assemble(b)), 1e-12);
  }
}

TEST(EmbedUPoint, IdentityAndRejection) {
  const auto g = embed_u_point(Matrix(2, 2), Matrix(2, 2));
  EXPECT_EQ(distance(g, GroupElement::identity(2, 2)), 0.0);
  EXPECT_EQ(code_of([] { embed_u_point(Matrix(2, 2), Matrix::identity(2)); }), ErrorCode::NotSkew);
}

TEST(EmbedUPointProperties, LandsInU) {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t p = rng.index(1, 4);
    const std::size_t q = rng.index(1, 4);
    const auto g = embed_u_point(rng.matrix(q, p), rng.skew(p, 1.0));
    EXPECT_LE(membership_residual(g), 1e-12);
  }
}

TEST(MembershipResidual, DetectsOffU) {
  const GroupElement g(Matrix{{1.0}}, Matrix{{1.0}}, Matrix{{0.0}});
  // Z + ᵀZ − ᵀX·X = -1.
  EXPECT_EQ(membership_residual(g), 1.0);
}

TEST(DiscreteCurve, Validation) {
  const auto id = GroupElement::identity(1, 1);
  EXPECT_EQ(code_of([&] { DiscreteCurve({0.0}, {id}); }), ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([&] { DiscreteCurve({0.0, 0.0}, {id, id}); }), ErrorCode::DegenerateStep);
  EXPECT_EQ(code_of([&] { DiscreteCurve({0.0, 1.0}, {id, GroupElement::identity(2, 1)}); }),
            ErrorCode::ShapeMismatch);
}

TEST(MaurerCartan, StraightLineInBlockCoordinates) {
  // g(t) = (tX0, tY0, tZ0): dX = X0, dY = Y0, omega = Z0 − t·Y0·X0.
  Rng rng(33);
  const Matrix x0 = rng.matrix(2, 3);
  const Matrix y0 = rng.matrix(3, 2);
  const Matrix z0 = rng.matrix(3, 3);
  std::vector<double> t;
  std::vector<GroupElement> points;
  for (int i = 0; i <= 10; ++i) {
    const double s = 0.1 * i;
    t.push_back(s);
    points.emplace_back(Complex(s) * x0, Complex(s) * y0, Complex(s) * z0);
  }
  const auto samples = maurer_cartan_discrete(DiscreteCurve(t, points));
  ASSERT_EQ(samples.size(), 9u);
  for (const auto& s : samples) {
    EXPECT_LE(max_abs_diff(s.dx, x0), 1e-12);
    EXPECT_LE(max_abs_diff(s.dy, y0), 1e-12);
    EXPECT_LE(max_abs_diff(s.omega, z0 - Complex(s.t) * y0 * x0), 1e-12);
  }
}

DiscreteCurve u_curve(const Matrix& phi, const Matrix& psi, std::size_t n, double dt) {
  std::vector<double> t;
  std::vector<GroupElement> points;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = dt * static_cast<double>(i);
    t.push_back(s);
    // Quadratic term in the skew part checks the one-sided stencil order.
    points.push_back(embed_u_point(Complex(s) * phi, Complex(s) * psi + Complex(s * s) * psi));
  }
  return DiscreteCurve(t, points);
}

TEST(TangentFromCurve, RecoversTangentOfULine) {
  Rng rng(34);
  const Matrix phi = rng.matrix(3, 2);
  const Matrix psi = rng.skew(2, 1.0);
  const auto tv = tangent_from_curve(u_curve(phi, psi, 5, 1e-3));
  EXPECT_LE(max_abs_diff(tv.phi, phi), 1e-9);
  EXPECT_LE(max_abs_diff(tv.psi, psi), 1e-9);
  EXPECT_LE(max_abs_diff(tv.psi, -tv.psi.transpose()), 1e-12);
  EXPECT_FALSE(tangent_in_distribution(tv, Tolerance(1e-6)));

  const auto flat = tangent_from_curve(u_curve(phi, Matrix(2, 2), 3, 1e-3));
  EXPECT_TRUE(tangent_in_distribution(flat, Tolerance(1e-6)));
}

TEST(TangentFromCurve, TwoPointsUseForwardDifference) {
  const Matrix phi{{1.0}, {2.0}};
  const auto tv = tangent_from_curve(u_curve(phi, Matrix(1, 1), 2, 0.5));
  EXPECT_LE(max_abs_diff(tv.phi, phi), 1e-12);
}

TEST(TangentFromCurve, RequiresIdentityBase) {
  const auto g = embed_u_point(Matrix{{1.0}}, Matrix{{0.0}});
  const DiscreteCurve curve({0.0, 1.0}, {g, g});
  EXPECT_EQ(code_of([&] { tangent_from_curve(curve); }), ErrorCode::NotBasedAtIdentity);
}

TEST(MaurerCartanProperties, ChartCurvesAreIntegral) {
  // Both routes: discrete Maurer–Cartan along u(t) = t·v and the direct
  // ω residual of the chart.
  Rng rng(35);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t p = rng.index(2, 4);
    const std::size_t q = rng.index(2, 4);
    const DistinguishedBasis target{p, q, rng.commuting_family(p - 1, q)};
    const Chart chart(system_matching_hessians(target));
    const Vector v = rng.vector(q, 0.5);
    const double dt = 1e-3;
    std::vector<double> t;
    std::vector<GroupElement> points;
    for (int i = 0; i <= 20; ++i) {
      const double s = 0.5 + dt * i;
      Vector u(q);
      for (std::size_t k = 0; k < q; ++k) u[k] = s * v[k];
      const Matrix x = chart_x(chart, u);
      const Matrix z = chart_z(chart, u);
      const GroupElement g(x, x.transpose(), z);
      EXPECT_LE(membership_residual(g), 1e-10);
      t.push_back(s);
      points.push_back(g);
    }
    for (const auto& s : maurer_cartan_discrete(DiscreteCurve(t, points))) {
      EXPECT_LE(s.omega.max_abs(), 1e-5);
      Vector u(q);
      for (std::size_t k = 0; k < q; ++k) u[k] = s.t * v[k];
      EXPECT_LE(omega_residual(chart, u, default_fd_step(u)), 1e-6);
    }
  }
}

}  // namespace
}  // namespace griffiths
