#pragma once

// Truncated completion of Q(zeta_n) at one prime P above ell.
//
// With n = m * ell^a (ell not dividing m) the completion is W[w]/(E(w)),
// where W = Z_ell[x]/(G) is unramified of degree f0 = ord_m(ell) and
// E(w) = +-Phi_{ell^a}(1 - w) is Eisenstein of degree phi(ell^a), so
// zeta_{ell^a} maps to 1 - w and zeta_m to the Teichmueller lift of a fixed
// residue root. Elements are coefficient arrays c_j in W on the basis w^j,
// and v_P(sum c_j w^j) = min_j (phi(ell^a) * v_ell(c_j) + j).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "ldesc/finite_field.hpp"

namespace ldesc {

class AdicCompletion {
 public:
  /// residue_modulus: monic irreducible g0 of degree ord_m(ell) over F_ell;
  /// zeta_m_residue: image of zeta_m in F_ell[x]/(g0), a primitive m-th root.
  AdicCompletion(std::int64_t ell, std::int64_t n, FpPoly residue_modulus, FpPoly zeta_m_residue);

  std::int64_t ell() const noexcept { return ell_; }
  int ramification() const noexcept { return e_; }       // phi(ell^a) = e(P/ell)
  int residue_degree() const noexcept { return f0_; }    // f(P/ell)
  const FpPoly& residue_modulus() const noexcept { return g0_; }

  /// Image of an integer vector on the power basis of zeta_n, truncated at
  /// ell^precision. Layout: entry [j * f0 + i] is coefficient x^i of c_j.
  std::vector<mpz_class> image(const std::vector<mpz_class>& numerator, int precision) const;

  /// v_P of an integer vector, or nullopt if its image vanishes at this
  /// precision (then only a larger precision or an exact test can decide).
  std::optional<std::int64_t> valuation(const std::vector<mpz_class>& numerator, int precision) const;

  /// Class of numerator / ell^t modulo P, in F_ell[x]/(g0). Requires
  /// v_P(numerator) >= t * e(P/ell) and precision > t.
  FpPoly residue_of_quotient(const std::vector<mpz_class>& numerator, int t, int precision) const;

 private:
  struct Table {
    mpz_class modulus;
    std::vector<std::vector<mpz_class>> zeta_powers;  // image of zeta_n^k, k < phi(n)
  };
  std::shared_ptr<const Table> table(int precision) const;
  std::shared_ptr<const Table> build_table(int precision) const;

  std::vector<mpz_class> mul_w(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                               const mpz_class& mod) const;
  std::vector<mpz_class> mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                             const mpz_class& mod) const;

  std::int64_t ell_, n_, m_, ell_part_;
  int a_ = 0, e_ = 1, f0_ = 1;
  std::size_t phi_n_ = 1;
  FpPoly g0_;
  FpPoly zeta_m_res_;
  std::vector<mpz_class> eisenstein_;  // monic, low-to-high, degree e_

  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Table>> tables_;
};

}  // namespace ldesc
