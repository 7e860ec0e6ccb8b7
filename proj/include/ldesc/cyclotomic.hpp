#pragma once

// Exact arithmetic in Q(zeta_n), elements stored as rational coefficient
// vectors on the power basis 1, zeta, ..., zeta^(phi(n)-1).

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ldesc {

std::int64_t euler_phi(std::int64_t n);
std::vector<mpz_class> cyclotomic_polynomial(std::int64_t n);  // low-to-high, monic

class CyclotomicRing {
 public:
  explicit CyclotomicRing(std::int64_t n);

  std::int64_t conductor() const noexcept { return n_; }
  std::size_t degree() const noexcept { return phi_; }
  const std::vector<mpz_class>& modulus() const noexcept { return phi_n_; }

  // zeta^k on the power basis, k taken mod n. Integer coefficients.
  const std::vector<mpz_class>& power(std::int64_t k) const;

  std::vector<mpq_class> multiply(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) const;
  std::vector<mpq_class> inverse(const std::vector<mpq_class>& a) const;
  // zeta -> zeta^s
  std::vector<mpq_class> galois(const std::vector<mpq_class>& a, std::int64_t s) const;
  // Reduce an arbitrary-length power-basis vector mod Phi_n.
  std::vector<mpq_class> reduce(std::vector<mpq_class> a) const;

 private:
  std::int64_t n_;
  std::size_t phi_;
  std::vector<mpz_class> phi_n_;
  std::vector<std::vector<mpz_class>> powers_;
};

using RingPtr = std::shared_ptr<const CyclotomicRing>;

/// Element of Q(zeta_n). Subfield membership is a property checked by the
/// field descriptor, not enforced here.
class FieldElement {
 public:
  FieldElement(RingPtr ring, std::vector<mpq_class> coeffs);
  FieldElement(RingPtr ring, const mpq_class& rational);

  static FieldElement zeta_power(RingPtr ring, std::int64_t k);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

  FieldElement zero() const { return FieldElement(ring_, mpq_class(0)); }
  FieldElement one() const { return FieldElement(ring_, mpq_class(1)); }
  bool is_zero() const;
  bool is_rational() const;

  FieldElement galois(std::int64_t s) const { return FieldElement(ring_, ring_->galois(c_, s)); }
  FieldElement inverse() const;
  FieldElement pow(std::int64_t e) const;

  // Least common denominator of the coefficients, and the numerator vector.
  mpz_class denominator() const;
  std::vector<mpz_class> numerator(const mpz_class& den) const;

  // Canonical text form: coefficients joined by ',' (used as a hash key).
  std::string key() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  void check_ring(const FieldElement& other) const;

  RingPtr ring_;
  std::vector<mpq_class> c_;
};

}  // namespace ldesc
