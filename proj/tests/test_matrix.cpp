#include <gtest/gtest.h>

#include "ldesc/counterexamples.hpp"
#include "ldesc/descent.hpp"
#include "support.hpp"

using namespace ldesc;

namespace {

ResMatrix random_res(oracle::Rng& rng, const ResidueFieldPtr& k, std::size_t n) {
  ResMatrix m(n, n, ResidueElement(k, std::int64_t{0}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FpPoly c(static_cast<std::size_t>(k->degree()));
      for (auto& x : c) x = rng.uniform(0, k->characteristic() - 1);
      m(i, j) = ResidueElement(k, c);
    }
  return m;
}

}  // namespace

TEST(Matrix, DeterminantMatchesCofactorExpansionOverQ) {
  oracle::Rng rng(21);
  const Field F = FieldDescriptor::make({1, 5, {1}, 0, std::nullopt, 32});
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
    const KMatrix a = oracle::random_matrix(rng, F, n, n, 4);
    EXPECT_EQ(determinant(a, F->one()), oracle::cofactor_det(a, F->zero(), F->one()));
  }
}

TEST(Matrix, DeterminantMatchesCofactorExpansionOverQZeta5) {
  oracle::Rng rng(22);
  const Field F = FieldDescriptor::make({5, 5, {1}, 0, std::nullopt, 32});
  for (int t = 0; t < 40; ++t) {
    const KMatrix a = oracle::random_matrix(rng, F, 3, 3, 3);
    EXPECT_EQ(determinant(a, F->one()), oracle::cofactor_det(a, F->zero(), F->one()));
  }
}

TEST(Matrix, CharpolyMatchesCofactorExpansion) {
  oracle::Rng rng(23);
  const Field Q = FieldDescriptor::make({1, 5, {1}, 0, std::nullopt, 32});
  const Field Qi = FieldDescriptor::make({4, 5, {1}, 0, std::nullopt, 32});
  const auto k7 = prime_field(7);
  const auto k49 = FieldDescriptor::make({4, 7, {1}, 0, 3, 32})->residue_field();
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const KMatrix a = oracle::random_matrix(rng, t % 2 ? Q : Qi, n, n, 4);
    const Field& F = t % 2 ? Q : Qi;
    EXPECT_EQ(charpoly(F, a), oracle::cofactor_charpoly(a, F->zero(), F->one()));
    const ResMatrix r = random_res(rng, t % 3 ? k7 : k49, n);
    const ResidueElement z(r(0, 0).zero()), o(r(0, 0).one());
    EXPECT_EQ(charpoly(r(0, 0).field(), r), oracle::cofactor_charpoly(r, z, o));
  }
}

TEST(Matrix, IdentityCharpoly) {
  const Field Q = FieldDescriptor::make({1, 5, {1}, 0, std::nullopt, 32});
  const auto cp = charpoly(Q, identity(Q, 4));
  const std::vector<FieldElement> expected{Q->integer(1), Q->integer(-4), Q->integer(6), Q->integer(-4), Q->integer(1)};
  EXPECT_EQ(cp, expected);
}

TEST(Matrix, InverseRankNullspace) {
  oracle::Rng rng(24);
  const Field F = FieldDescriptor::make({4, 5, {1}, 0, std::nullopt, 32});
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    KMatrix a = oracle::random_matrix(rng, F, n, n, 3);
    const bool singular = oracle::cofactor_det(a, F->zero(), F->one()).is_zero();
    const auto inv = try_inverse(a, F->one());
    EXPECT_EQ(inv.has_value(), !singular);
    if (inv) {
      EXPECT_EQ(a * *inv, identity(F, n));
      EXPECT_EQ(*inv * a, identity(F, n));
    }
    // Force a dependency and check the nullspace against the product.
    if (n >= 3) {
      for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = a(i, 0) + F->integer(2) * a(i, 1);
      EXPECT_LT(rank(a), n);
      const auto ns = nullspace(a, F->zero());
      EXPECT_EQ(ns.size(), n - rank(a));
      for (const auto& v : ns) {
        for (std::size_t i = 0; i < n; ++i) {
          FieldElement s = F->zero();
          for (std::size_t j = 0; j < n; ++j) s = s + a(i, j) * v[j];
          EXPECT_TRUE(s.is_zero());
        }
      }
    }
  }
  const KMatrix z = zeros(F, 2, 2);
  EXPECT_THROW(inverse(z, F->one()), Error);
}

TEST(Matrix, ConjugationAndReduction) {
  const Field F = FieldDescriptor::make({4, 7, {1}, 0, 3, 32});
  const FieldElement i = FieldElement::zeta_power(F->ring(), 1);
  KMatrix m = identity(F, 2);
  m(0, 1) = i;
  m(1, 0) = F->integer(3) + i;
  const KMatrix ct = conj_transpose(F, m);
  EXPECT_EQ(ct(1, 0), -i);
  EXPECT_EQ(ct(0, 1), F->integer(3) - i);
  EXPECT_EQ(reduce(F, conj(F, m)), conj(reduce(F, m)));
  EXPECT_EQ(min_valuation(F, F->integer(7) * m), 1);
  EXPECT_FALSE(is_integral(F, F->rational(mpq_class(1, 7)) * m));
}
