#pragma once

// Reduction of a finite group preserving a form over K to one preserving a
// form f0 over k: balance a G-stable lattice, reduce the form on both
// sides of the balanced lattice, and let G act on the two pieces.

#include <cstdint>
#include <optional>
#include <vector>

#include "ldesc/group.hpp"

namespace ldesc {

std::vector<FieldElement> charpoly(const Field& F, const KMatrix& m);
std::vector<ResidueElement> charpoly(const ResidueFieldPtr& k, const ResMatrix& m);

struct BalanceResult {
  Lattice T;
  std::int64_t m = 0;          // f' = pi^m f
  std::int64_t j = 0;          // chain length
  std::int64_t bound = 0;      // length(S*/S) for the scaled form
  GramForm scaled;             // f'
  std::vector<Lattice> chain;  // S = S_0, ..., S_j = T
};

/// Runs S_{i+1} = S_i + (pi^-1 S_i cap pi S_i*) until pi S_i* lies in S_i.
/// Every S_i is checked against the generators (NotStable).
BalanceResult balance(const Lattice& S, const GramForm& f, const std::vector<KMatrix>& generators);

struct RigidityResult {
  bool forced = false;    // (A - 1)^2 S lies in lambda S
  bool identity = false;  // A = 1
  std::uint64_t order = 0;
};

/// Finite-order A stabilizing S with 2e < ell - 1. When (A-1)^2 S lies in
/// lambda S, A must be the identity; a disagreement throws
/// InternalInconsistency. Errors: HypothesisViolated, NotStable,
/// NotFiniteOrder (no A^k = 1 with k <= order_cap).
RigidityResult rigidity_check(const KMatrix& A, const Lattice& S, std::uint64_t order_cap = kDefaultMaxGroupOrder);

struct Certificates {
  bool faithful = false;
  bool charpoly_preserved = false;
  bool f0_nondegenerate = false;
  bool kind_correct = false;
  bool hypothesis_2e_lt_ell_minus_1 = false;
  // rho_bar(g) preserves f0 for every g, and rho_bar(gh) = rho_bar(g) rho_bar(h)
  // on the checked pairs.
  bool isometries = false;
  bool multiplicative = false;

  bool all() const {
    return faithful && charpoly_preserved && f0_nondegenerate && kind_correct && hypothesis_2e_lt_ell_minus_1 &&
           isometries && multiplicative;
  }
};

struct CharpolyRow {
  std::vector<FieldElement> over_K;
  std::vector<ResidueElement> reduced;     // reduction of over_K
  std::vector<ResidueElement> of_rho_bar;  // charpoly of rho_bar(g)
};

struct DescentOptions {
  std::optional<Lattice> start;    // default: the G-span of O^N
  std::size_t pair_cap = 250000;   // products checked for multiplicativity
};

struct DescentResult {
  BalanceResult balance;
  AdaptedBasis adapted;
  std::size_t s = 0;  // dimension of the f-bar block
  FormKind expected_bar_kind = FormKind::Symmetric;
  FormKind expected_tilde_kind = FormKind::Symmetric;
  ResidueForm f0;
  std::vector<ResMatrix> rho_bar;  // indexed like rep.elements()
  std::vector<CharpolyRow> charpolys;
  std::vector<std::size_t> kernel;  // nonidentity elements with rho_bar = 1
  std::size_t pairs_checked = 0;
  Certificates certificates;
};

DescentResult descend(const GroupRep& rep, const DescentOptions& options = {});

// The element table alone: charpoly over K and its reduction.
std::vector<CharpolyRow> charpoly_table(const GroupRep& rep);

}  // namespace ldesc
