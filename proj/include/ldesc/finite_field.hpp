#pragma once

// Finite fields F_{l^f} = F_l[y]/(h) with small l, and polynomial helpers
// over F_l. Coefficients are stored low-to-high as int64.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ldesc {

using FpPoly = std::vector<std::int64_t>;

namespace fp {

std::int64_t mod(std::int64_t a, std::int64_t p);
std::int64_t inv(std::int64_t a, std::int64_t p);
std::int64_t pow(std::int64_t a, std::uint64_t e, std::int64_t p);
bool is_prime(std::int64_t n);

void trim(FpPoly& a);
FpPoly mul(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly rem(FpPoly a, const FpPoly& m, std::int64_t p);
FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p);
FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::int64_t p);
FpPoly gcd(FpPoly a, FpPoly b, std::int64_t p);
bool is_irreducible(const FpPoly& f, std::int64_t p);

/// First monic irreducible polynomial of degree d in the enumeration where
/// the tuple (c_0, ..., c_{d-1}) is read as a base-p counter with c_0 the
/// least significant digit.
FpPoly first_irreducible(int d, std::int64_t p);

std::uint64_t ipow(std::uint64_t b, unsigned e);

}  // namespace fp

class ResidueField {
 public:
  /// modulus must be monic irreducible of degree f >= 1 over F_ell.
  /// involution_power, when set, is the exponent j of y -> y^(ell^j) used as
  /// the conjugation of a quadratic extension over its index-2 subfield.
  ResidueField(std::int64_t ell, FpPoly modulus, std::optional<int> involution_power = std::nullopt);

  std::int64_t characteristic() const noexcept { return ell_; }
  int degree() const noexcept { return f_; }
  const FpPoly& modulus() const noexcept { return modulus_; }
  std::uint64_t order() const noexcept { return q_; }
  const std::optional<int>& involution_power() const noexcept { return inv_power_; }

 private:
  std::int64_t ell_;
  int f_;
  FpPoly modulus_;
  std::uint64_t q_;
  std::optional<int> inv_power_;
};

using ResidueFieldPtr = std::shared_ptr<const ResidueField>;

class ResidueElement {
 public:
  ResidueElement(ResidueFieldPtr field, FpPoly coeffs);
  ResidueElement(ResidueFieldPtr field, std::int64_t value);

  const ResidueFieldPtr& field() const noexcept { return k_; }
  const FpPoly& coeffs() const noexcept { return c_; }

  ResidueElement zero() const { return ResidueElement(k_, std::int64_t{0}); }
  ResidueElement one() const { return ResidueElement(k_, std::int64_t{1}); }
  bool is_zero() const;

  ResidueElement pow(std::uint64_t e) const;
  ResidueElement inverse() const;
  // x -> x^(ell^j)
  ResidueElement frobenius(int j) const;
  // The field's involution, or the identity when none is configured.
  ResidueElement conj() const;
  std::uint64_t multiplicative_order() const;

  friend ResidueElement operator+(const ResidueElement& a, const ResidueElement& b);
  friend ResidueElement operator-(const ResidueElement& a, const ResidueElement& b);
  friend ResidueElement operator*(const ResidueElement& a, const ResidueElement& b);
  friend ResidueElement operator/(const ResidueElement& a, const ResidueElement& b);
  friend ResidueElement operator-(const ResidueElement& a);
  friend bool operator==(const ResidueElement& a, const ResidueElement& b) { return a.c_ == b.c_; }

 private:
  ResidueFieldPtr k_;
  FpPoly c_;
};

}  // namespace ldesc
