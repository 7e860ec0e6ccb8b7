#pragma once

// Finite certificates for the three nonexistence statements: no symmetric
// form is invariant under a unipotent 2x2 matrix, the mu_ell bundle has no
// good reduction to a symmetric form, and Q8 x mu_ell has none to an
// alternating form. All computations are over F_ell.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ldesc/finite_field.hpp"
#include "ldesc/matrix.hpp"

namespace ldesc {

using FpMatrix = Matrix<ResidueElement>;

struct NonexistenceCertificate {
  std::string tag;  // "lemma", "prop5" or "prop6"
  std::int64_t ell = 0;
  std::string search_space;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::vector<std::pair<std::string, bool>> checks;
  bool verdict = false;

  std::uint64_t count(const std::string& name) const;
  bool check(const std::string& name) const;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

/// All ell^3 symmetric Gram matrices over F_ell against g = [[1,1],[0,1]].
/// Throws CharTwo for ell = 2.
NonexistenceCertificate no_invariant_symmetric_form(std::int64_t ell);

NonexistenceCertificate verify_prop5(std::int64_t ell);

NonexistenceCertificate verify_prop6(std::int64_t ell, std::uint64_t enum_cap = kDefaultEnumerationCap);

// Linear-algebra helpers over a finite field, exposed for testing.
// Basis of {X in span(basis) : g^T X g = X for all g}.
std::vector<FpMatrix> invariant_forms(const std::vector<FpMatrix>& generators, const std::vector<FpMatrix>& basis);
// Basis of {X : X g = g X for all g}.
std::vector<FpMatrix> commutant(const std::vector<FpMatrix>& generators);
// Basis matrices of the alternating (or all) n x n forms.
std::vector<FpMatrix> alternating_basis(const ResidueFieldPtr& k, std::size_t n);
std::vector<FpMatrix> full_basis(const ResidueFieldPtr& k, std::size_t n);
// Two-dimensional Q8 representation over F_ell: a pair (a, b) with
// a^2 = b^2 = -1 and ab = -ba.
std::pair<FpMatrix, FpMatrix> q8_over_prime_field(std::int64_t ell);
ResidueFieldPtr prime_field(std::int64_t ell);

}  // namespace ldesc
