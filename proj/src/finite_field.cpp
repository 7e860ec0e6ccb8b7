#include "ldesc/finite_field.hpp"

#include "ldesc/errors.hpp"

namespace ldesc {

namespace fp {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t pow(std::int64_t a, std::uint64_t e, std::int64_t p) {
  __int128 result = 1, base = mod(a, p);
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t inv(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) throw Error(ErrorCode::Singular, "inverse of zero mod p");
  // extended Euclid
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return mod(s0, p);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  trim(c);
  return c;
}

FpPoly rem(FpPoly a, const FpPoly& m, std::int64_t p) {
  for (auto& x : a) x = mod(x, p);
  trim(a);
  const std::int64_t lead_inv = inv(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const std::int64_t coef = a.back() * lead_inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = mod(a[shift + i] - coef * m[i], p);
    trim(a);
  }
  return a;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p) {
  return rem(mul(a, b, p), m, p);
}

FpPoly powmod(FpPoly base, std::uint64_t e, const FpPoly& m, std::int64_t p) {
  FpPoly result{1};
  result = rem(result, m, p);
  base = rem(base, m, p);
  while (e) {
    if (e & 1) result = mulmod(result, base, m, p);
    e >>= 1;
    if (e) base = mulmod(base, base, m, p);
  }
  return result;
}

FpPoly gcd(FpPoly a, FpPoly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::int64_t li = inv(a.back(), p);
    for (auto& x : a) x = x * li % p;
  }
  return a;
}

bool is_irreducible(const FpPoly& f, std::int64_t p) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  FpPoly x{0, 1};
  FpPoly xp = x;
  for (int i = 1; i <= d / 2; ++i) {
    xp = powmod(xp, static_cast<std::uint64_t>(p), f, p);
    FpPoly diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = mod(diff[1] - 1, p);
    trim(diff);
    if (diff.empty()) return false;
    if (gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

FpPoly first_irreducible(int d, std::int64_t p) {
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(d));
  for (std::uint64_t t = 0; t < total; ++t) {
    FpPoly f(static_cast<std::size_t>(d) + 1, 0);
    std::uint64_t u = t;
    for (int i = 0; i < d; ++i) {
      f[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(u % static_cast<std::uint64_t>(p));
      u /= static_cast<std::uint64_t>(p);
    }
    f[static_cast<std::size_t>(d)] = 1;
    if (is_irreducible(f, p)) return f;
  }
  throw Error(ErrorCode::InternalInconsistency, "no irreducible polynomial found");
}

}  // namespace fp

ResidueField::ResidueField(std::int64_t ell, FpPoly modulus, std::optional<int> involution_power)
    : ell_(ell), modulus_(std::move(modulus)), inv_power_(involution_power) {
  if (!fp::is_prime(ell_)) throw Error(ErrorCode::InvalidDescriptor, "residue characteristic must be prime");
  f_ = static_cast<int>(modulus_.size()) - 1;
  if (f_ < 1 || modulus_.back() != 1 || !fp::is_irreducible(modulus_, ell_))
    throw Error(ErrorCode::InvalidDescriptor, "residue modulus must be monic irreducible");
  q_ = fp::ipow(static_cast<std::uint64_t>(ell_), static_cast<unsigned>(f_));
  if (inv_power_ && 2 * *inv_power_ != f_)
    throw Error(ErrorCode::InvalidDescriptor, "residue involution must be the order-2 Frobenius power");
}

ResidueElement::ResidueElement(ResidueFieldPtr field, FpPoly coeffs) : k_(std::move(field)) {
  c_ = fp::rem(std::move(coeffs), k_->modulus(), k_->characteristic());
  c_.resize(static_cast<std::size_t>(k_->degree()), 0);
}

ResidueElement::ResidueElement(ResidueFieldPtr field, std::int64_t value) : k_(std::move(field)) {
  c_.assign(static_cast<std::size_t>(k_->degree()), 0);
  c_[0] = fp::mod(value, k_->characteristic());
}

bool ResidueElement::is_zero() const {
  for (auto x : c_)
    if (x != 0) return false;
  return true;
}

ResidueElement ResidueElement::pow(std::uint64_t e) const {
  FpPoly r = fp::powmod(c_, e, k_->modulus(), k_->characteristic());
  return ResidueElement(k_, std::move(r));
}

ResidueElement ResidueElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Singular, "inverse of zero in residue field");
  return pow(k_->order() - 2);
}

ResidueElement ResidueElement::frobenius(int j) const {
  ResidueElement r = *this;
  for (int i = 0; i < j; ++i) r = r.pow(static_cast<std::uint64_t>(k_->characteristic()));
  return r;
}

ResidueElement ResidueElement::conj() const {
  if (!k_->involution_power()) return *this;
  return frobenius(*k_->involution_power());
}

std::uint64_t ResidueElement::multiplicative_order() const {
  if (is_zero()) throw Error(ErrorCode::Singular, "order of zero");
  std::uint64_t order = k_->order() - 1;
  std::uint64_t m = order;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    while (order % p == 0 && pow(order / p) == one()) order /= p;
  }
  if (m > 1)
    while (order % m == 0 && pow(order / m) == one()) order /= m;
  return order;
}

ResidueElement operator+(const ResidueElement& a, const ResidueElement& b) {
  ResidueElement c = a;
  const auto p = a.k_->characteristic();
  for (std::size_t i = 0; i < c.c_.size(); ++i) c.c_[i] = (c.c_[i] + b.c_[i]) % p;
  return c;
}

ResidueElement operator-(const ResidueElement& a, const ResidueElement& b) {
  ResidueElement c = a;
  const auto p = a.k_->characteristic();
  for (std::size_t i = 0; i < c.c_.size(); ++i) c.c_[i] = fp::mod(c.c_[i] - b.c_[i], p);
  return c;
}

ResidueElement operator*(const ResidueElement& a, const ResidueElement& b) {
  return ResidueElement(a.k_, fp::mul(a.c_, b.c_, a.k_->characteristic()));
}

ResidueElement operator/(const ResidueElement& a, const ResidueElement& b) { return a * b.inverse(); }

ResidueElement operator-(const ResidueElement& a) {
  ResidueElement c = a;
  const auto p = a.k_->characteristic();
  for (auto& x : c.c_) x = fp::mod(-x, p);
  return c;
}

}  // namespace ldesc
