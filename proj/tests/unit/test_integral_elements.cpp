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

DistinguishedBasis random_valid(Rng& rng, std::size_t p, std::size_t q) {
  return DistinguishedBasis{p, q, rng.commuting_family(p - 1, q)};
}

TEST(AbelianElement, RejectsBadShapesAndDependence) {
  EXPECT_EQ(code_of([] { AbelianElement(2, 2, {Matrix(2, 3)}); }), ErrorCode::ShapeMismatch);
  const Matrix m{{1.0, 0.0}, {0.0, 0.0}};
  EXPECT_EQ(code_of([&] { AbelianElement(2, 2, {m, 2.0 * m}); }), ErrorCode::InvariantViolation);
}

TEST(IsAbelian, CanonicalElementAndNonAbelianPair) {
  EXPECT_TRUE(is_abelian(testing::a0(3, 4)));
  const Matrix a{{1.0, 0.0}, {0.0, 0.0}};
  const Matrix b{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_FALSE(is_abelian(AbelianElement(2, 2, {a, b})));
}

TEST(Genericity, CanonicalElementHasFirstUnitWitness) {
  const auto witness = genericity_witness(testing::a0(3, 4));
  ASSERT_TRUE(witness.has_value());
  EXPECT_EQ(*witness, testing::unit(3, 0));
}

TEST(Genericity, WrongDimensionRejected) {
  const auto a0 = testing::a0(2, 3);
  const AbelianElement short_element(2, 3, {a0.basis()[0], a0.basis()[1]});
  EXPECT_EQ(code_of([&] { genericity_witness(short_element); }), ErrorCode::DimensionMismatch);
}

TEST(Genericity, NonGenericElementHasNoWitness) {
  // M_1 v and M_2 v are both multiples of e_1 for every v.
  const Matrix m1{{1.0, 0.0}, {0.0, 0.0}};
  const Matrix m2{{0.0, 1.0}, {0.0, 0.0}};
  const AbelianElement e(2, 2, {m1, m2});
  EXPECT_FALSE(genericity_witness(e, 16, 3).has_value());
  EXPECT_FALSE(passes_genericity_test(e, Vector{1.0, 1.0}));
}

TEST(GenericityProperties, HTransformsOfCanonicalElementStayGeneric) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = rng.index(1, 4);
    const std::size_t q = rng.index(1, 5);
    const HTransform h(rng.invertible(p), rng.orthogonal(q));
    const auto e = apply_h_transform(testing::a0(p, q), h);
    EXPECT_TRUE(is_abelian(e, Tolerance(1e-10)));
    const auto witness = genericity_witness(e, 16, static_cast<std::uint64_t>(trial));
    ASSERT_TRUE(witness.has_value());
    EXPECT_TRUE(passes_genericity_test(e, *witness));
  }
}

TEST(Distinguished, SingleScalarExample) {
  // p = 2, q = 1, A_2 = [[5]] gives M_1 = [[1, 5]].
  const DistinguishedBasis d{2, 1, {Matrix{{5.0}}}};
  const auto e = distinguished_from_commuting(d);
  ASSERT_EQ(e.basis().size(), 1u);
  EXPECT_EQ(e.basis()[0], (Matrix{{1.0, 5.0}}));
}

TEST(Distinguished, DiagonalExample) {
  const DistinguishedBasis d{2, 2, {Matrix::diagonal(Vector{1.0, 2.0})}};
  const auto e = distinguished_from_commuting(d);
  EXPECT_EQ(e.basis()[0], (Matrix{{1.0, 1.0}, {0.0, 0.0}}));
  EXPECT_EQ(e.basis()[1], (Matrix{{0.0, 0.0}, {1.0, 2.0}}));
  EXPECT_TRUE(is_abelian(e));
}

TEST(Distinguished, RejectsNonSymmetricAndNonCommuting) {
  const DistinguishedBasis not_sym{2, 2, {Matrix{{1.0, 1.0}, {0.0, 1.0}}}};
  EXPECT_EQ(code_of([&] { distinguished_from_commuting(not_sym); }), ErrorCode::InvariantViolation);
  const DistinguishedBasis not_comm{3, 2, {Matrix::diagonal(Vector{1.0, 2.0}), Matrix{{0.0, 1.0}, {1.0, 0.0}}}};
  EXPECT_FALSE(not_comm.is_valid());
  EXPECT_EQ(code_of([&] { distinguished_from_commuting(not_comm); }), ErrorCode::InvariantViolation);
}

TEST(Distinguished, BracketOfAssembledMembersIsCommutatorPattern) {
  // Independent route: (M_i, M_j)_{lm} = (A_l)_{ij}... column ℓ of M_k is
  // column k of A_ℓ, so (M_i, M_j) vanishes iff the A_ℓ are symmetric and
  // commute. A symmetric but non-commuting pair must leave a bracket.
  const DistinguishedBasis d{3, 2, {Matrix::diagonal(Vector{1.0, 2.0}), Matrix{{0.0, 1.0}, {1.0, 0.0}}}};
  const auto members = assemble_distinguished(d);
  EXPECT_GT(bracket(members[0], members[1]).max_abs(), 0.5);
}

TEST(Distinguished, CommutingFromNonDistinguishedFails) {
  const Matrix m1{{0.0, 1.0}, {0.0, 0.0}};
  const Matrix m2{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(code_of([&] { commuting_from_distinguished(AbelianElement(2, 2, {m1, m2})); }),
            ErrorCode::NotDistinguished);
}

TEST(DistinguishedProperties, RoundTripIsExact) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t p = rng.index(2, 4);
    const std::size_t q = rng.index(1, 5);
    const auto d = random_valid(rng, p, q);
    const auto e = distinguished_from_commuting(d, Tolerance(1e-10, 1e-10));
    EXPECT_TRUE(is_abelian(e, Tolerance(1e-10)));
    const auto back = commuting_from_distinguished(e);
    ASSERT_EQ(back.a.size(), d.a.size());
    for (std::size_t l = 0; l < d.a.size(); ++l) EXPECT_EQ(back.a[l], d.a[l]);
  }
}

TEST(HTransform, RejectsSingularAndNonOrthogonal) {
  EXPECT_EQ(code_of([] { HTransform(Matrix(2, 2), Matrix::identity(2)); }), ErrorCode::Singular);
  EXPECT_EQ(code_of([] { HTransform(Matrix::identity(2), Matrix::diagonal(Vector{2.0, 1.0})); }),
            ErrorCode::NotOrthogonal);
}

TEST(HTransform, IdentityActsTrivially) {
  const auto a0 = testing::a0(2, 3);
  const auto e = apply_h_transform(a0, HTransform::identity(2, 3));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(e.basis()[k], a0.basis()[k]);
}

TEST(HTransformProperties, PreservesAbelian) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t p = rng.index(2, 4);
    const std::size_t q = rng.index(1, 5);
    const auto e = distinguished_from_commuting(random_valid(rng, p, q), Tolerance(1e-10, 1e-10));
    const auto moved = apply_h_transform(e, HTransform(rng.invertible(p), rng.orthogonal(q)));
    EXPECT_TRUE(is_abelian(moved, Tolerance(1e-10)));
  }
}

TEST(Normalize, AlreadyDistinguishedIsRecovered) {
  Rng rng(14);
  const auto d = random_valid(rng, 3, 3);
  const auto e = distinguished_from_commuting(d, Tolerance(1e-10, 1e-10));
  const auto n = normalize_to_distinguished(e, testing::unit(3, 0));
  for (std::size_t l = 0; l < d.a.size(); ++l) EXPECT_LE(max_abs_diff(n.basis.a[l], d.a[l]), 1e-10);
}

TEST(Normalize, TransformedCanonicalElementGivesScalarFamily) {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t p = 3;
    const std::size_t q = rng.index(2, 4);
    const auto e = apply_h_transform(testing::a0(p, q), HTransform(rng.invertible(p), rng.orthogonal(q)));
    const auto witness = genericity_witness(e);
    ASSERT_TRUE(witness.has_value());
    const auto n = normalize_to_distinguished(e, *witness);
    ASSERT_EQ(n.basis.a.size(), p - 1);
    // Each A_j is c_j·I; the shift fixing e_1 removes it.
    Vector shift(p);
    for (std::size_t l = 0; l < p - 1; ++l) {
      const Complex c = n.basis.a[l](0, 0);
      EXPECT_LE(max_abs_diff(n.basis.a[l], c * Matrix::identity(q)), 1e-8);
      shift[l + 1] = c;
    }
    Matrix a = Matrix::identity(p);
    for (std::size_t l = 1; l < p; ++l) a.set(0, l, -shift[l]);
    const auto members = assemble_distinguished(n.basis);
    const auto zeroed = apply_h_transform(AbelianElement(p, q, members), HTransform(a, Matrix::identity(q)));
    const auto flat = commuting_from_distinguished(zeroed, Tolerance(1e-8, 1e-8));
    for (const auto& m : flat.a) EXPECT_LE(m.max_abs(), 1e-8);
  }
}

TEST(Normalize, NonGenericWitnessRejected) {
  const auto a0 = testing::a0(2, 2);
  EXPECT_EQ(code_of([&] { normalize_to_distinguished(a0, testing::unit(2, 1)); }), ErrorCode::NotGeneric);
}

TEST(Dims, HandValues) {
  EXPECT_EQ(dims(2, 3), (Dimensions{7, 6, 1, 3}));
  EXPECT_EQ(dims(1, 5).codim, 0);
  EXPECT_EQ(dims(2, 2), (Dimensions{5, 4, 1, 2}));
  EXPECT_EQ(dims(3, 4), (Dimensions{15, 12, 3, 6}));
  EXPECT_EQ(code_of([] { dims(0, 3); }), ErrorCode::InvariantViolation);
}

TEST(DimsProperties, GridAgainstDirectCount) {
  for (std::size_t p = 1; p <= 6; ++p)
    for (std::size_t q = 1; q <= 6; ++q) {
      const auto d = dims(p, q);
      // Count free entries: X has pq, skew part of Z has p(p-1)/2.
      long long skew = 0;
      for (std::size_t i = 0; i < p; ++i) skew += static_cast<long long>(i);
      EXPECT_EQ(d.dim_u, static_cast<long long>(p * q) + skew);
      EXPECT_EQ(d.dim_e, static_cast<long long>(p * q));
      EXPECT_EQ(d.codim, d.dim_u - d.dim_e);
      const long long expected_max = q % 2 == 0 ? static_cast<long long>(p * q / 2)
                                                : static_cast<long long>(p * (q - 1) / 2 + 1);
      EXPECT_EQ(d.max_integral_dim, expected_max);
    }
}

TEST(TangentInDistribution, ChecksSkewPart) {
  EXPECT_TRUE(tangent_in_distribution({Matrix(2, 2), Matrix(2, 2)}));
  EXPECT_FALSE(tangent_in_distribution({Matrix(2, 2), Matrix{{0.0, 1.0}, {-1.0, 0.0}}}));
}

}  // namespace
}  // namespace griffiths
