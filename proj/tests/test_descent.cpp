#include <gtest/gtest.h>

#include <array>

#include "ldesc/bundles.hpp"
#include "ldesc/descent.hpp"
#include "support.hpp"

using namespace ldesc;

namespace {

Field make(std::int64_t n, std::int64_t ell) { return FieldDescriptor::make({n, ell, {1}, 0, std::nullopt, 32}); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InternalInconsistency;
}

std::vector<FieldElement> ints(const Field& F, std::vector<long> c) {
  std::vector<FieldElement> r;
  for (long x : c) r.push_back(F->integer(x));
  return r;
}

// Entries of an integer matrix as longs, for the exhaustive search.
using M2 = std::array<long, 4>;
M2 mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

}  // namespace

TEST(Charpoly, Q8xMuEllElements) {
  const GroupRep g = build_prop6_bundle(5);
  const Field& F = g.field();
  const auto sq = ints(F, {1, 0, 2, 0, 1}), m1 = ints(F, {1, 4, 6, 4, 1});
  // Generator 0 is an order-4 element of Q8 acting on both tensor factors.
  EXPECT_EQ(charpoly(F, g.generators()[0]), sq);
  const KMatrix minus = -identity(F, g.dim());
  ASSERT_LT(g.find(minus), g.order());
  EXPECT_EQ(charpoly(F, minus), m1);
  const auto k = F->residue_field();
  EXPECT_EQ(reduce(F, charpoly(F, minus)), charpoly(k, reduce(F, minus)));
}

TEST(Balance, SelfDualStartIsFixed) {
  const GroupRep g = make_group(q8_bundle(5));
  const Lattice o2 = Lattice::standard(g.field(), 2);
  const BalanceResult r = balance(o2, g.form(), g.generators());
  EXPECT_EQ(r.T, o2);
  EXPECT_EQ(r.j, 0);
  EXPECT_EQ(r.m, 0);
}

// S = O + 5O under J: f(S,S) = 5O, f' = J/5 and S is f'-self-dual.
TEST(Balance, HandComputedSymplecticExample) {
  const Field Q = make(1, 5);
  const GramForm J(Q, integer_matrix(Q, {{0, 1}, {-1, 0}}), FormKind::Alternating);
  const Lattice S(Q, diagonal(Q, ints(Q, {1, 5})));
  const BalanceResult r = balance(S, J, {-identity(Q, 2)});
  EXPECT_EQ(r.m, -1);
  EXPECT_EQ(r.j, 0);
  EXPECT_EQ(r.T, S);
  const Lattice tstar = dual_lattice(r.T, r.scaled);
  EXPECT_TRUE(r.T.contains(tstar.scaled(Q->integer(5))));
  EXPECT_TRUE(tstar.contains(r.T));
}

// S = O + 25O under the dot product: S_1 = O + 5O, S_2 = O^2, bound 4.
TEST(Balance, HandComputedChain) {
  const Field Q = make(1, 5);
  const GramForm dot(Q, identity(Q, 2), FormKind::Symmetric);
  const Lattice S(Q, diagonal(Q, ints(Q, {1, 25})));
  const BalanceResult r = balance(S, dot, {diagonal(Q, ints(Q, {-1, 1}))});
  EXPECT_EQ(r.m, 0);
  EXPECT_EQ(r.j, 2);
  EXPECT_EQ(r.bound, 4);
  ASSERT_EQ(r.chain.size(), 3u);
  EXPECT_EQ(r.chain[1], Lattice(Q, diagonal(Q, ints(Q, {1, 5}))));
  EXPECT_EQ(r.T, Lattice::standard(Q, 2));
}

TEST(Balance, RejectsUnstableStart) {
  const Field Q = make(1, 5);
  const GramForm dot(Q, identity(Q, 2), FormKind::Symmetric);
  const Lattice S(Q, diagonal(Q, ints(Q, {1, 5})));
  const KMatrix swap = integer_matrix(Q, {{0, 1}, {1, 0}});
  EXPECT_EQ(code_of([&] { balance(S, dot, {swap}); }), ErrorCode::NotStable);
}

TEST(Balance, TraceFormBlocksSumToTwo) {
  for (std::int64_t ell : {5, 7, 11}) {
    const GroupRep g = build_prop5_bundle(ell);
    const DescentResult r = descend(g);
    EXPECT_EQ(r.f0.s + (r.f0.dim() - r.f0.s), 2u);
    EXPECT_LE(r.balance.j, r.balance.bound);
  }
}

TEST(Rigidity, Examples) {
  const Field Q = make(1, 5);
  const Lattice o2 = Lattice::standard(Q, 2);
  const RigidityResult id = rigidity_check(identity(Q, 2), o2);
  EXPECT_TRUE(id.forced);
  EXPECT_TRUE(id.identity);
  const RigidityResult neg = rigidity_check(-identity(Q, 2), o2);
  EXPECT_FALSE(neg.forced);  // (A - 1)^2 = 4, a unit at 5
  EXPECT_FALSE(neg.identity);
  EXPECT_EQ(neg.order, 2u);

  const Field Z5 = make(5, 5);
  EXPECT_EQ(code_of([&] { rigidity_check(identity(Z5, 2), Lattice::standard(Z5, 2)); }), ErrorCode::HypothesisViolated);
  const KMatrix off = diagonal(Q, {Q->integer(5), Q->rational(mpq_class(1, 5))});
  EXPECT_EQ(code_of([&] { rigidity_check(off, o2); }), ErrorCode::NotStable);
  EXPECT_EQ(code_of([&] { rigidity_check(integer_matrix(Q, {{1, 1}, {0, 1}}), o2, 50); }), ErrorCode::NotFiniteOrder);
  EXPECT_EQ(code_of([&] { rigidity_check(identity(Q, 3), o2); }), ErrorCode::DimensionMismatch);
}

// Every integral 2x2 matrix with entries in [-3, 3] of order <= 12 over Q:
// the forcing condition is checked on integers, and forced means identity.
TEST(RigidityProperty, ExhaustiveSmallSearch) {
  for (std::int64_t ell : {5, 7}) {
    const Field Q = make(1, ell);
    const Lattice o2 = Lattice::standard(Q, 2);
    int finite = 0, forced = 0;
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b)
        for (long c = -3; c <= 3; ++c)
          for (long d = -3; d <= 3; ++d) {
            const M2 m{a, b, c, d};
            M2 p = m;
            bool has_order = false;
            for (int k = 1; k <= 12 && !has_order; ++k) {
              if (p == M2{1, 0, 0, 1}) has_order = true;
              p = mul(p, m);
            }
            if (!has_order) continue;
            ++finite;
            const M2 n{a - 1, b, c, d - 1};
            const M2 n2 = mul(n, n);
            const bool oracle_forced = std::all_of(n2.begin(), n2.end(), [&](long x) { return x % ell == 0; });
            const RigidityResult r = rigidity_check(integer_matrix(Q, {{a, b}, {c, d}}), o2);
            EXPECT_EQ(r.forced, oracle_forced);
            EXPECT_EQ(r.identity, m == (M2{1, 0, 0, 1}));
            if (oracle_forced) {
              ++forced;
              EXPECT_EQ(m, (M2{1, 0, 0, 1}));
            }
          }
    EXPECT_GT(finite, 10);
    EXPECT_EQ(forced, 1);
  }
}

TEST(Descend, Q8AtSplitPrime) {
  for (std::int64_t ell : {5, 13}) {
    const GroupRep g = make_group(q8_bundle(ell));
    const DescentResult r = descend(g);
    EXPECT_TRUE(r.certificates.all());
    EXPECT_EQ(r.f0.kind(), FormKind::Alternating);
    EXPECT_EQ(r.f0.dim(), 2u);
    const Field& F = g.field();
    const auto k = F->residue_field();
    const auto t2p1 = reduce(F, ints(F, {1, 0, 1}));
    int order4 = 0;
    for (std::size_t i = 0; i < g.order(); ++i) {
      const KMatrix& m = g.elements()[i].matrix;
      const auto cp = oracle::cofactor_charpoly(m, F->zero(), F->one());
      EXPECT_EQ(charpoly(k, r.rho_bar[i]), reduce(F, cp));
      if (reduce(F, cp) == t2p1) ++order4;
      // rho_bar(g) lies in Sp_2: det 1 and preserves f0
      EXPECT_EQ(oracle::cofactor_det(r.rho_bar[i], t2p1[0].zero(), t2p1[0].one()), t2p1[0].one());
      EXPECT_EQ(r.rho_bar[i].transpose() * r.f0.gram * r.rho_bar[i], r.f0.gram);
    }
    EXPECT_EQ(order4, 6);
  }
}

TEST(Descend, TrivialGroupReducesTheForm) {
  const Field Q = make(1, 5);
  const GramForm f(Q, diagonal(Q, ints(Q, {1, 2, 3})), FormKind::Symmetric);
  const GroupRep g(f, {});
  const DescentResult r = descend(g);
  EXPECT_EQ(r.rho_bar.size(), 1u);
  EXPECT_EQ(r.rho_bar[0], residue_identity(Q->residue_field(), 3));
  EXPECT_EQ(r.f0.gram, reduce(Q, f.gram()));
  EXPECT_TRUE(r.certificates.all());
}

TEST(Descend, Z4HermitianInert) {
  const GroupRep g = make_group(z4_hermitian_bundle(7));
  const DescentResult r = descend(g);
  EXPECT_TRUE(r.certificates.all());
  EXPECT_EQ(r.f0.kind(), FormKind::Hermitian);
  EXPECT_EQ(g.field()->residue_field()->order(), 49u);
  EXPECT_TRUE(satisfies(r.f0.gram, FormKind::Hermitian));
}

TEST(Descend, RamifiedParity) {
  for (std::int64_t ell : {7, 11, 13}) {
    for (bool odd : {false, true}) {
      const GroupRep g = make_group(ramified_hermitian_bundle(ell, odd));
      const DescentResult r = descend(g);
      EXPECT_TRUE(r.certificates.all()) << ell << " " << odd;
      EXPECT_TRUE(r.f0.mixed());
      const bool m_odd = r.balance.m % 2 != 0;
      EXPECT_EQ(m_odd, odd);
      // hermitian f' reduces to symmetric (+) alternating, skew-hermitian
      // to alternating (+) symmetric
      EXPECT_EQ(r.f0.kind_name(), odd ? "symplectic x orthogonal" : "orthogonal x symplectic");
      const ResMatrix bar = r.f0.gram.submatrix({0}, {0});
      if (!odd) EXPECT_TRUE(satisfies(bar, FormKind::Symmetric));
    }
  }
}

TEST(Descend, MuEllFlagsTheHypothesis) {
  for (std::int64_t ell : {5, 7}) {
    const DescentResult r = descend(build_prop5_bundle(ell));
    EXPECT_FALSE(r.certificates.hypothesis_2e_lt_ell_minus_1);
    EXPECT_FALSE(r.certificates.faithful);
    EXPECT_TRUE(r.certificates.charpoly_preserved);
    EXPECT_FALSE(r.certificates.all());
    EXPECT_EQ(r.kernel.size(), static_cast<std::size_t>(ell - 1));
  }
}

TEST(Descend, KernelDimensionsAddUp) {
  for (const GroupRep& g : {make_group(q8_bundle(5)), make_group(ramified_hermitian_bundle(7, true)),
                            build_prop5_bundle(7), build_prop6_bundle(5)}) {
    const DescentResult r = descend(g);
    const Reduction bar = reduce_bar(r.adapted, r.balance.scaled), tilde = reduce_tilde(r.adapted, r.balance.scaled);
    EXPECT_EQ(bar.kernel.size() + tilde.kernel.size(), g.dim());
    EXPECT_EQ(r.f0.dim(), g.dim());
  }
}
