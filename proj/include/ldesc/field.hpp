#pragma once

// Subfields K = Q(zeta_n)^H of cyclotomic fields with a designated prime
// lambda above an odd prime ell: certified valuations, residue maps to
// k = O/lambda, and an optional involution with fixed field L.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ldesc/adic.hpp"
#include "ldesc/cyclotomic.hpp"
#include "ldesc/finite_field.hpp"

namespace ldesc {

inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

struct DescriptorSpec {
  std::int64_t n = 1;
  std::int64_t ell = 3;
  std::vector<std::int64_t> subgroup{1};  // residues mod n; must be a subgroup of (Z/n)^*
  int prime_choice = 0;                    // index into the sorted factors of Phi_m mod ell
  std::optional<std::int64_t> involution;  // zeta -> zeta^s, of order 2 modulo H
  int precision_start = 32;
};

enum class InvolutionType { None, Unramified, Ramified };

class FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

class FieldDescriptor {
 public:
  static Field make(const DescriptorSpec& spec);

  const DescriptorSpec& spec() const noexcept { return spec_; }
  const RingPtr& ring() const noexcept { return ring_; }
  std::int64_t conductor() const noexcept { return spec_.n; }
  std::int64_t ell() const noexcept { return spec_.ell; }
  const std::vector<std::int64_t>& subgroup() const noexcept { return spec_.subgroup; }

  int ramification_index() const noexcept { return e_; }
  int residue_degree() const noexcept { return f_; }
  int primes_above_ell() const noexcept { return g_; }
  int absolute_degree() const noexcept { return degree_; }
  bool two_e_lt_ell_minus_one() const noexcept { return 2 * e_ < ell() - 1; }

  InvolutionType involution_type() const noexcept { return inv_type_; }
  bool has_involution() const noexcept { return spec_.involution.has_value(); }
  // Ramification and residue degree of the fixed field L (equal to K's when
  // there is no involution).
  int base_ramification_index() const noexcept { return e_base_; }
  int base_residue_degree() const noexcept { return f_base_; }

  const FieldElement& uniformizer() const noexcept { return *pi_; }
  const ResidueFieldPtr& residue_field() const noexcept { return k_; }
  // The factor of Phi_m mod ell selected by prime_choice.
  const FpPoly& prime_factor() const noexcept { return prime_factor_; }

  /// Same field and prime, different uniformizer. u_pi must have valuation
  /// one (and, with an involution, satisfy the same conjugation rule as the
  /// canonical choice).
  Field with_uniformizer(const FieldElement& u_pi) const;

  FieldElement zero() const { return FieldElement(ring_, mpq_class(0)); }
  FieldElement one() const { return FieldElement(ring_, mpq_class(1)); }
  FieldElement rational(const mpq_class& q) const { return FieldElement(ring_, q); }
  FieldElement integer(long v) const { return FieldElement(ring_, mpq_class(v)); }
  /// Validated construction from power-basis coefficients.
  FieldElement element(std::vector<mpq_class> coeffs) const;
  bool contains(const FieldElement& x) const;
  FieldElement trace_from_cyclotomic(const FieldElement& x) const;
  // Distinct Gauss periods Tr(zeta^c), c = 0..n-1. They span K over Q.
  std::vector<FieldElement> periods() const;

  std::int64_t valuation(const FieldElement& x) const;
  // Valuation at one fixed precision; nullopt when inconclusive there.
  std::optional<std::int64_t> valuation_at_precision(const FieldElement& x, int precision) const;
  bool is_integral(const FieldElement& x) const { return valuation(x) >= 0; }
  bool is_unit(const FieldElement& x) const { return valuation(x) == 0; }

  ResidueElement reduce(const FieldElement& x) const;
  ResidueElement reduce_at_precision(const FieldElement& x, int precision) const;
  FieldElement apply_involution(const FieldElement& x) const;
  // Identity without an involution; used by the sesquilinear code paths.
  FieldElement conj(const FieldElement& x) const {
    return spec_.involution ? x.galois(*spec_.involution) : x;
  }

  // Valuation of x at the prime of Q(zeta_n) underlying lambda.
  std::int64_t cyclotomic_valuation(const FieldElement& x) const;

 private:
  FieldDescriptor() = default;
  void build();
  std::int64_t valuation_in_subfield(const FieldElement& x, const std::vector<std::int64_t>& group) const;
  std::int64_t inertia_size(const std::vector<std::int64_t>& group) const;
  FieldElement find_uniformizer(const std::vector<std::int64_t>& group) const;
  void build_residue_field();
  void validate_uniformizer(const FieldElement& pi) const;

  DescriptorSpec spec_;
  RingPtr ring_;
  std::shared_ptr<const AdicCompletion> adic_;
  std::int64_t m_ = 1, ell_part_ = 1;
  std::vector<std::int64_t> units_;
  std::vector<std::int64_t> inertia_group_, decomposition_group_;
  std::vector<std::int64_t> base_group_;  // H together with s H
  int e_ = 1, f_ = 1, g_ = 1, degree_ = 1;
  int e_base_ = 1, f_base_ = 1;
  InvolutionType inv_type_ = InvolutionType::None;
  std::shared_ptr<const FieldElement> pi_;
  ResidueFieldPtr k_;
  ResidueFieldPtr big_residue_;  // residue field of the prime of Q(zeta_n)
  FpPoly prime_factor_;
  FpPoly zeta_m_residue_;
  // Embedding k -> big residue field: columns are theta^i, with a solver.
  std::vector<FpPoly> theta_powers_;
};

std::string to_string(InvolutionType t);

}  // namespace ldesc
