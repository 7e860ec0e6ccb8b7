#include "ldesc/descent.hpp"

#include <algorithm>
#include <numeric>

namespace ldesc {

std::vector<FieldElement> charpoly(const Field& F, const KMatrix& m) { return ldesc::charpoly(m, F->one()); }

std::vector<ResidueElement> charpoly(const ResidueFieldPtr& k, const ResMatrix& m) {
  return ldesc::charpoly(m, ResidueElement(k, std::int64_t{1}));
}

BalanceResult balance(const Lattice& S, const GramForm& f, const std::vector<KMatrix>& generators) {
  const Field& F = S.field();
  if (!is_stable(S, generators)) throw Error(ErrorCode::NotStable, "starting lattice is not G-stable");
  ScaledForm sf = normalize_scale(f, S);
  const FieldElement& pi = F->uniformizer();
  const FieldElement pi_inv = pi.inverse();

  BalanceResult r{S, sf.m, 0, 0, sf.form, {S}};
  r.bound = quotient_length(S, dual_lattice(S, r.scaled));
  for (;;) {
    const Lattice& cur = r.chain.back();
    const Lattice dual = dual_lattice(cur, r.scaled);
    const Lattice pi_dual = dual.scaled(pi);
    if (cur.contains(pi_dual)) break;
    Lattice next = lattice_sum(cur, lattice_intersect(cur.scaled(pi_inv), pi_dual));
    if (!is_stable(next, generators)) throw Error(ErrorCode::NotStable, "chain lattice lost G-stability");
    r.chain.push_back(std::move(next));
    ++r.j;
    if (r.j > r.bound) throw Error(ErrorCode::InternalInconsistency, "chain longer than length(S*/S)");
  }
  r.T = r.chain.back();
  return r;
}

RigidityResult rigidity_check(const KMatrix& A, const Lattice& S, std::uint64_t order_cap) {
  const Field& F = S.field();
  if (!F->two_e_lt_ell_minus_one())
    throw Error(ErrorCode::HypothesisViolated, "rigidity needs 2e < ell - 1");
  if (A.rows() != S.dim() || A.cols() != S.dim()) throw Error(ErrorCode::DimensionMismatch, "rigidity_check");
  if (!(S.transformed(A) == S)) throw Error(ErrorCode::NotStable, "A does not stabilize S");

  const KMatrix one = identity(F, S.dim());
  RigidityResult r;
  KMatrix p = A;
  for (std::uint64_t k = 1; k <= order_cap; ++k) {
    if (p == one) {
      r.order = k;
      break;
    }
    p = p * A;
  }
  if (r.order == 0) throw Error(ErrorCode::NotFiniteOrder, "no A^k = 1 within the order cap");

  const KMatrix d = A - one;
  const KMatrix b = S.basis();
  // (A - 1)^2 in the basis of S; forced iff every entry lies in lambda.
  const KMatrix sq = inverse(b, F->one()) * d * d * b;
  const std::int64_t v = min_valuation(F, sq);
  r.forced = v >= 1;
  r.identity = A == one;
  if (r.forced && !r.identity)
    throw Error(ErrorCode::InternalInconsistency, "finite-order A with (A-1)^2 in lambda End(S) is not 1");
  return r;
}

std::vector<CharpolyRow> charpoly_table(const GroupRep& rep) {
  const Field& F = rep.field();
  std::vector<CharpolyRow> rows;
  rows.reserve(rep.order());
  for (const auto& e : rep.elements()) {
    CharpolyRow row;
    row.over_K = charpoly(F, e.matrix);
    row.reduced = reduce(F, row.over_K);
    rows.push_back(std::move(row));
  }
  return rows;
}

DescentResult descend(const GroupRep& rep, const DescentOptions& options) {
  const Field& F = rep.field();
  const ResidueFieldPtr& k = F->residue_field();
  const std::size_t n = rep.dim();
  const std::vector<KMatrix> elems = rep.matrices();

  const Lattice S = options.start ? *options.start : stabilize(Lattice::standard(F, n), elems);
  DescentResult r{balance(S, rep.form(), rep.generators())};
  const GramForm& fp = r.balance.scaled;

  r.adapted = adapted_basis(r.balance.T, fp);
  const Reduction bar = reduce_bar(r.adapted, fp);
  const Reduction tilde = reduce_tilde(r.adapted, fp);
  std::tie(r.expected_bar_kind, r.expected_tilde_kind) = reduction_kinds(F, fp.kind());
  r.f0 = assemble_f0(F, bar.block, tilde.block);
  r.s = r.f0.s;

  const auto& bi = r.adapted.bar_index;
  const auto& ti = r.adapted.tilde_index;
  const KMatrix e_inv = inverse(r.adapted.basis, F->one());
  const ResidueElement zero(k, std::int64_t{0});
  const ResMatrix ident = residue_identity(k, n);

  Certificates& c = r.certificates;
  c.hypothesis_2e_lt_ell_minus_1 = F->two_e_lt_ell_minus_one();
  c.charpoly_preserved = true;
  c.isometries = true;

  r.rho_bar.reserve(elems.size());
  r.charpolys = charpoly_table(rep);
  for (std::size_t idx = 0; idx < elems.size(); ++idx) {
    const KMatrix a = e_inv * elems[idx] * r.adapted.basis;
    if (!is_integral(F, a)) throw Error(ErrorCode::InternalInconsistency, "group element does not preserve T*");
    const ResMatrix abar = reduce(F, a);
    // T / lambda T* (the bar indices) must be a stable subspace.
    for (auto i : ti)
      for (auto j : bi)
        if (!abar(i, j).is_zero()) throw Error(ErrorCode::InternalInconsistency, "T/lambda T* is not stable");
    ResMatrix rb = block_diag(abar.submatrix(bi, bi), abar.submatrix(ti, ti), zero);
    if (n == 0) rb = ident;
    CharpolyRow& row = r.charpolys[idx];
    row.of_rho_bar = charpoly(k, rb);
    if (!(row.of_rho_bar == row.reduced)) c.charpoly_preserved = false;
    if (!(rb.transpose() * r.f0.gram * conj(rb) == r.f0.gram)) c.isometries = false;
    if (idx != 0 && rb == ident) r.kernel.push_back(idx);
    r.rho_bar.push_back(std::move(rb));
  }
  c.faithful = r.kernel.empty();
  if (!c.faithful && c.hypothesis_2e_lt_ell_minus_1) {
    // A kernel element acts trivially on T*/T and T/lambda T*, so
    // (g-1)^2 T* lies in lambda T* and rigidity applies to T*.
    const Lattice dual = dual_lattice(r.balance.T, fp);
    for (auto idx : r.kernel) rigidity_check(elems[idx], dual);
    throw Error(ErrorCode::InternalInconsistency, "kernel element not detected by rigidity");
  }

  c.multiplicative = true;
  const std::size_t order = elems.size();
  for (std::size_t i = 0; i < order && r.pairs_checked < options.pair_cap; ++i) {
    for (std::size_t j = 0; j < order && r.pairs_checked < options.pair_cap; ++j) {
      ++r.pairs_checked;
      if (!(r.rho_bar[i] * r.rho_bar[j] == r.rho_bar[rep.product(i, j)])) c.multiplicative = false;
    }
  }

  c.f0_nondegenerate = is_nondegenerate(r.f0.gram) && is_nondegenerate(bar.block.gram) &&
                       is_nondegenerate(tilde.block.gram);
  c.kind_correct = satisfies(bar.block.gram, r.expected_bar_kind) &&
                   satisfies(tilde.block.gram, r.expected_tilde_kind) && r.f0.bar_kind == r.expected_bar_kind &&
                   r.f0.tilde_kind == r.expected_tilde_kind;
  return r;
}

}  // namespace ldesc
