#include "ldesc/cyclotomic.hpp"

#include <sstream>

#include "ldesc/errors.hpp"

namespace ldesc {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// q, r with a = q b + r, deg r < deg b. b must be nonzero and trimmed.
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  const mpq_class lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    mpq_class coef = a.back() / lead;
    q[shift] = coef;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= coef * b[i];
    a.pop_back();
    trim(a);
  }
  r = std::move(a);
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

}  // namespace

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t result = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<mpz_class> cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidDescriptor, "cyclotomic polynomial needs n >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<mpz_class> num(static_cast<std::size_t>(n) + 1, mpz_class(0));
  num[0] = -1;
  num[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto den = cyclotomic_polynomial(d);
    // exact division by a monic integer polynomial
    const auto dn = static_cast<std::int64_t>(den.size()) - 1;
    std::vector<mpz_class> q(num.size() - den.size() + 1, mpz_class(0));
    for (auto k = static_cast<std::int64_t>(num.size()) - 1; k >= dn; --k) {
      const mpz_class coef = num[static_cast<std::size_t>(k)];
      if (coef == 0) continue;
      const auto shift = static_cast<std::size_t>(k - dn);
      q[shift] = coef;
      for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= coef * den[i];
    }
    num = std::move(q);
  }
  return num;
}

CyclotomicRing::CyclotomicRing(std::int64_t n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::InvalidDescriptor, "conductor must be positive");
  phi_n_ = cyclotomic_polynomial(n);
  phi_ = phi_n_.size() - 1;
  powers_.reserve(static_cast<std::size_t>(n));
  std::vector<mpz_class> cur(phi_, mpz_class(0));
  cur[0] = 1;
  for (std::int64_t k = 0; k < n; ++k) {
    powers_.push_back(cur);
    // multiply by zeta, reduce the overflow with the monic modulus
    mpz_class top = cur[phi_ - 1];
    for (std::size_t i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < phi_; ++i) cur[i] -= top * phi_n_[i];
  }
}

const std::vector<mpz_class>& CyclotomicRing::power(std::int64_t k) const {
  std::int64_t r = k % n_;
  if (r < 0) r += n_;
  return powers_[static_cast<std::size_t>(r)];
}

std::vector<mpq_class> CyclotomicRing::reduce(std::vector<mpq_class> a) const {
  if (a.size() <= phi_) {
    a.resize(phi_, mpq_class(0));
    return a;
  }
  std::vector<mpq_class> out(phi_, mpq_class(0));
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    const auto& p = power(static_cast<std::int64_t>(k));
    for (std::size_t i = 0; i < phi_; ++i)
      if (p[i] != 0) out[i] += a[k] * p[i];
  }
  return out;
}

std::vector<mpq_class> CyclotomicRing::multiply(const std::vector<mpq_class>& a,
                                                const std::vector<mpq_class>& b) const {
  std::vector<mpq_class> c(2 * phi_ - 1, mpq_class(0));
  for (std::size_t i = 0; i < phi_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < phi_; ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  for (std::size_t k = c.size(); k-- > phi_;) {
    if (c[k] == 0) continue;
    const std::size_t shift = k - phi_;
    mpq_class top = c[k];
    for (std::size_t i = 0; i <= phi_; ++i) c[shift + i] -= top * phi_n_[i];
  }
  c.resize(phi_);
  return c;
}

std::vector<mpq_class> CyclotomicRing::inverse(const std::vector<mpq_class>& a) const {
  // Extended Euclid in Q[x] against Phi_n: track s with s*a = r mod Phi_n.
  QPoly m(phi_n_.begin(), phi_n_.end());
  QPoly r0 = m, r1 = a;
  trim(r1);
  if (r1.empty()) throw Error(ErrorCode::Singular, "inverse of zero");
  QPoly s0, s1{mpq_class(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw Error(ErrorCode::InternalInconsistency, "element shares a factor with Phi_n");
  }
  // r1 is a nonzero constant
  mpq_class c = r1[0];
  for (auto& x : s1) x /= c;
  QPoly q, rem;
  divmod(s1, m, q, rem);
  rem.resize(phi_, mpq_class(0));
  return rem;
}

std::vector<mpq_class> CyclotomicRing::galois(const std::vector<mpq_class>& a, std::int64_t s) const {
  std::vector<mpq_class> out(phi_, mpq_class(0));
  for (std::size_t k = 0; k < phi_; ++k) {
    if (a[k] == 0) continue;
    const auto& p = power(static_cast<std::int64_t>(k) * s);
    for (std::size_t i = 0; i < phi_; ++i)
      if (p[i] != 0) out[i] += a[k] * p[i];
  }
  return out;
}

FieldElement::FieldElement(RingPtr ring, std::vector<mpq_class> coeffs) : ring_(std::move(ring)) {
  c_ = ring_->reduce(std::move(coeffs));
  for (auto& x : c_) x.canonicalize();
}

FieldElement::FieldElement(RingPtr ring, const mpq_class& rational) : ring_(std::move(ring)) {
  c_.assign(ring_->degree(), mpq_class(0));
  c_[0] = rational;
  c_[0].canonicalize();
}

FieldElement FieldElement::zeta_power(RingPtr ring, std::int64_t k) {
  const auto& p = ring->power(k);
  std::vector<mpq_class> c(p.begin(), p.end());
  return FieldElement(std::move(ring), std::move(c));
}

bool FieldElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

void FieldElement::check_ring(const FieldElement& other) const {
  if (ring_ != other.ring_ && ring_->conductor() != other.ring_->conductor())
    throw Error(ErrorCode::ContextMismatch, "elements of different cyclotomic fields");
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Singular, "inverse of zero");
  if (is_rational()) return FieldElement(ring_, mpq_class(1) / c_[0]);
  return FieldElement(ring_, ring_->inverse(c_));
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

mpz_class FieldElement::denominator() const {
  mpz_class d = 1;
  for (const auto& x : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

std::vector<mpz_class> FieldElement::numerator(const mpz_class& den) const {
  std::vector<mpz_class> out;
  out.reserve(c_.size());
  for (const auto& x : c_) {
    mpq_class y = x * den;
    out.push_back(y.get_num());
  }
  return out;
}

std::string FieldElement::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ',';
    os << c_[i].get_str();
  }
  return os.str();
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  a.check_ring(b);
  FieldElement c = a;
  for (std::size_t i = 0; i < c.c_.size(); ++i) c.c_[i] += b.c_[i];
  return c;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  a.check_ring(b);
  FieldElement c = a;
  for (std::size_t i = 0; i < c.c_.size(); ++i) c.c_[i] -= b.c_[i];
  return c;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.check_ring(b);
  if (a.is_rational() || b.is_rational()) {
    const FieldElement& scalar = a.is_rational() ? a : b;
    const FieldElement& other = a.is_rational() ? b : a;
    FieldElement c = other;
    for (auto& x : c.c_) x *= scalar.c_[0];
    return c;
  }
  FieldElement c = a;
  c.c_ = a.ring_->multiply(a.c_, b.c_);
  return c;
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement operator-(const FieldElement& a) {
  FieldElement c = a;
  for (auto& x : c.c_) x = -x;
  return c;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.ring_->conductor() == b.ring_->conductor() && a.c_ == b.c_;
}

}  // namespace ldesc
