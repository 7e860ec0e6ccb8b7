#include <gtest/gtest.h>

#include "ldesc/kmatrix.hpp"
#include "support.hpp"

using namespace ldesc;

namespace {

Field make(std::int64_t n, std::int64_t ell, std::vector<std::int64_t> h = {1}, int prime_choice = 0,
           std::optional<std::int64_t> inv = std::nullopt) {
  return FieldDescriptor::make({n, ell, std::move(h), prime_choice, inv, 32});
}

FieldElement zeta(const Field& F, std::int64_t k = 1) { return FieldElement::zeta_power(F->ring(), k); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST(ExactField, RationalFieldAtFive) {
  const Field F = make(1, 5);
  EXPECT_EQ(F->ramification_index(), 1);
  EXPECT_EQ(F->residue_degree(), 1);
  EXPECT_EQ(F->uniformizer(), F->integer(5));
  EXPECT_TRUE(F->two_e_lt_ell_minus_one());
}

TEST(ExactField, TotallyRamifiedQZeta5) {
  const Field F = make(5, 5);
  EXPECT_EQ(F->ramification_index(), 4);
  EXPECT_EQ(F->residue_degree(), 1);
  EXPECT_FALSE(F->two_e_lt_ell_minus_one());
  const FieldElement x = F->one() - zeta(F);
  // N(1 - zeta_5) = Phi_5(1) = 5 and f = 1.
  EXPECT_EQ(oracle::cyclotomic_norm(x), 5);
  EXPECT_EQ(F->valuation(x), 1);
  EXPECT_EQ(F->valuation(F->uniformizer()), 1);
  EXPECT_EQ(F->valuation(F->integer(5)), 4);
}

TEST(ExactField, InertQiAtSeven) {
  const Field F = make(4, 7, {1}, 0, 3);
  EXPECT_EQ(F->ramification_index(), 1);
  EXPECT_EQ(F->residue_degree(), 2);
  EXPECT_EQ(F->involution_type(), InvolutionType::Unramified);
  EXPECT_EQ(F->residue_field()->order(), 49u);
  // x^2 + 1 has no root mod 7.
  for (int a = 0; a < 7; ++a) EXPECT_NE((a * a + 1) % 7, 0);
  const ResidueElement ri = F->reduce(zeta(F));
  EXPECT_EQ(ri * ri, -ri.one());
  EXPECT_NE(ri.coeffs().size() > 1 ? ri.coeffs()[1] : 0, 0);
  EXPECT_EQ(F->uniformizer(), F->integer(7));
}

TEST(ExactField, ValuationBasics) {
  for (const Field& F : {make(1, 5), make(5, 5), make(4, 7), make(4, 5), make(7, 7, {1, 6})}) {
    EXPECT_EQ(F->valuation(F->zero()), kInfiniteValuation);
    EXPECT_EQ(F->valuation(F->one()), 0);
    EXPECT_EQ(F->valuation(F->integer(F->ell())), F->ramification_index());
    EXPECT_EQ(F->valuation(F->uniformizer()), 1);
  }
}

TEST(ExactField, ReduceExamples) {
  const Field F = make(5, 5);
  EXPECT_EQ(F->reduce(zeta(F)), ResidueElement(F->residue_field(), std::int64_t{1}));
  EXPECT_EQ(F->reduce(F->rational(mpq_class(1, 2))), ResidueElement(F->residue_field(), std::int64_t{3}));
  EXPECT_EQ(code_of([&] { F->reduce(F->rational(mpq_class(1, 5))); }), ErrorCode::NegativeValuation);
  EXPECT_EQ(code_of([&] { F->reduce((F->one() - zeta(F)).inverse()); }), ErrorCode::NegativeValuation);
}

TEST(ExactField, Involutions) {
  const Field Qi = make(4, 7, {1}, 0, 3);
  const FieldElement x = Qi->element({3, 1});
  EXPECT_EQ(Qi->apply_involution(x), Qi->element({3, -1}));
  EXPECT_EQ(Qi->apply_involution(Qi->integer(5)), Qi->integer(5));

  const Field M = make(5, 5, {1}, 0, 4);
  EXPECT_EQ(M->involution_type(), InvolutionType::Ramified);
  EXPECT_EQ(M->apply_involution(zeta(M)), zeta(M, 4));
  const FieldElement real = zeta(M) + zeta(M, 4);
  EXPECT_EQ(M->apply_involution(real), real);

  const Field Q = make(1, 5);
  EXPECT_EQ(code_of([&] { Q->apply_involution(Q->one()); }), ErrorCode::NoInvolution);
}

TEST(ExactField, DescriptorErrors) {
  EXPECT_EQ(code_of([] { make(1, 2); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { make(1, 9); }), ErrorCode::InvalidDescriptor);
  EXPECT_EQ(code_of([] { make(7, 7, {1, 2}); }), ErrorCode::InvalidDescriptor);  // not closed: 4 missing
  EXPECT_EQ(code_of([] { make(4, 5, {1}, 2); }), ErrorCode::InvalidDescriptor);  // only two primes
  EXPECT_EQ(code_of([] { make(5, 5, {1}, 0, 2); }), ErrorCode::InvalidDescriptor);  // order 4
  EXPECT_EQ(code_of([] { make(0, 5); }), ErrorCode::InvalidDescriptor);
}

TEST(ExactField, MembershipIsHFixed) {
  const Field F = make(7, 7, {1, 6});
  EXPECT_TRUE(F->contains(zeta(F) + zeta(F, 6)));
  EXPECT_FALSE(F->contains(zeta(F)));
  EXPECT_EQ(code_of([&] { F->element({0, 1}); }), ErrorCode::NotInField);
}

// Valuations agree with v_ell(N(x)) / (|H| f) when one prime lies above ell.
TEST(ExactFieldProperty, ValuationMatchesNormWhenOnePrime) {
  oracle::Rng rng(11);
  for (const Field& F : {make(5, 5), make(4, 7), make(7, 7, {1, 6}), make(9, 3), make(1, 7)}) {
    const std::int64_t denom = static_cast<std::int64_t>(F->subgroup().size()) * F->residue_degree();
    for (int t = 0; t < 150; ++t) {
      FieldElement x = oracle::random_element(rng, F, 6);
      if (x.is_zero()) continue;
      if (rng.coin()) x = x * F->uniformizer().pow(rng.uniform(-2, 3));
      const std::int64_t vn = oracle::rational_valuation(oracle::cyclotomic_norm(x), F->ell());
      ASSERT_EQ(vn % denom, 0);
      EXPECT_EQ(F->valuation(x), vn / denom);
    }
  }
}

// With two primes above ell the valuations at both add up to the norm's.
TEST(ExactFieldProperty, SplitValuationsSumToNorm) {
  oracle::Rng rng(12);
  for (auto [n, ell] : {std::pair<std::int64_t, std::int64_t>{4, 5}, {4, 13}, {3, 7}}) {
    const Field F0 = make(n, ell, {1}, 0), F1 = make(n, ell, {1}, 1);
    EXPECT_EQ(F0->primes_above_ell(), 2);
    for (int t = 0; t < 150; ++t) {
      const FieldElement x = oracle::random_cyclotomic(rng, F0->ring(), 20);
      if (x.is_zero()) continue;
      EXPECT_EQ(F0->valuation(x) + F1->valuation(x), oracle::rational_valuation(oracle::cyclotomic_norm(x), ell));
    }
  }
}

TEST(ExactFieldProperty, ValuationAxioms) {
  oracle::Rng rng(13);
  for (const Field& F : {make(5, 5), make(4, 5), make(12, 7), make(7, 7, {1, 6}), make(15, 5, {1, 4})}) {
    for (int t = 0; t < 100; ++t) {
      const FieldElement x = oracle::random_element(rng, F, 5), y = oracle::random_element(rng, F, 5);
      if (x.is_zero() || y.is_zero()) continue;
      const auto vx = F->valuation(x), vy = F->valuation(y);
      EXPECT_EQ(F->valuation(x * y), vx + vy);
      const FieldElement s = x + y;
      if (!s.is_zero()) {
        EXPECT_GE(F->valuation(s), std::min(vx, vy));
        if (vx != vy) EXPECT_EQ(F->valuation(s), std::min(vx, vy));
      }
    }
  }
}

TEST(ExactFieldProperty, ReduceIsRingHomomorphismWithKernelLambda) {
  oracle::Rng rng(14);
  for (const Field& F : {make(5, 5), make(4, 7), make(4, 5, {1}, 1), make(12, 7), make(7, 7, {1, 6})}) {
    for (int t = 0; t < 100; ++t) {
      const FieldElement x = oracle::random_element(rng, F, 5), y = oracle::random_element(rng, F, 5);
      EXPECT_EQ(F->reduce(x + y), F->reduce(x) + F->reduce(y));
      EXPECT_EQ(F->reduce(x * y), F->reduce(x) * F->reduce(y));
      EXPECT_EQ(F->reduce(x).is_zero(), F->valuation(x) >= 1);
      // Units with a denominator prime to ell reduce through their inverse.
      if (!x.is_zero() && F->valuation(x) == 0) EXPECT_EQ(F->reduce(x.inverse()), F->reduce(x).inverse());
    }
  }
}

TEST(ExactFieldProperty, ConjugationCommutesWithReduction) {
  oracle::Rng rng(15);
  const Field F = make(4, 7, {1}, 0, 3);
  for (int t = 0; t < 100; ++t) {
    const FieldElement x = oracle::random_element(rng, F, 9);
    EXPECT_EQ(F->reduce(F->apply_involution(x)), F->reduce(x).conj());
    if (!x.is_zero()) EXPECT_EQ(F->valuation(F->apply_involution(x)), F->valuation(x));
  }
}

TEST(ExactFieldProperty, PrecisionNeverChangesACertifiedAnswer) {
  oracle::Rng rng(16);
  const Field F = make(5, 5);
  for (int t = 0; t < 60; ++t) {
    FieldElement x = oracle::random_element(rng, F, 30) * F->uniformizer().pow(rng.uniform(0, 6));
    if (x.is_zero()) continue;
    const auto v = F->valuation(x);
    for (int p : {2, 4, 8, 16, 64}) {
      const auto vp = F->valuation_at_precision(x, p);
      if (vp) EXPECT_EQ(*vp, v);
    }
    if (v == 0)
      for (int p : {4, 8, 64}) EXPECT_EQ(F->reduce_at_precision(x, p), F->reduce(x));
  }
}

TEST(ExactField, UniformizerReplacement) {
  const Field F = make(5, 5);
  const FieldElement u = F->integer(2) + zeta(F);  // a unit
  ASSERT_EQ(F->valuation(u), 0);
  const Field G = F->with_uniformizer(u * F->uniformizer());
  EXPECT_EQ(G->uniformizer(), u * F->uniformizer());
  EXPECT_EQ(G->valuation(F->integer(5)), 4);
  EXPECT_THROW(F->with_uniformizer(F->uniformizer() * F->uniformizer()), Error);
}
