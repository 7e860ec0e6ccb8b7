#include "ldesc/adic.hpp"

#include "ldesc/cyclotomic.hpp"
#include "ldesc/errors.hpp"

namespace ldesc {

namespace {

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  return fp::inv(a, m);
}

mpz_class reduce_mod(const mpz_class& x, const mpz_class& mod) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  return r;
}

}  // namespace

AdicCompletion::AdicCompletion(std::int64_t ell, std::int64_t n, FpPoly residue_modulus, FpPoly zeta_m_residue)
    : ell_(ell), n_(n), g0_(std::move(residue_modulus)), zeta_m_res_(std::move(zeta_m_residue)) {
  m_ = n;
  ell_part_ = 1;
  while (m_ % ell_ == 0) {
    m_ /= ell_;
    ell_part_ *= ell_;
    ++a_;
  }
  e_ = static_cast<int>(euler_phi(ell_part_));
  f0_ = static_cast<int>(g0_.size()) - 1;
  phi_n_ = static_cast<std::size_t>(euler_phi(n_));
  zeta_m_res_.resize(static_cast<std::size_t>(f0_), 0);

  if (a_ == 0) {
    eisenstein_ = {mpz_class(0), mpz_class(1)};
  } else {
    // Phi_{ell^a}(y) = sum_{k < ell} y^(k ell^(a-1)), evaluated at y = 1 - w.
    const std::int64_t step = ell_part_ / ell_;
    std::vector<mpz_class> poly(static_cast<std::size_t>(e_) + 1, mpz_class(0));
    for (std::int64_t k = 0; k < ell_; ++k) {
      const auto d = static_cast<unsigned long>(k * step);
      for (unsigned long j = 0; j <= d; ++j) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), d, j);
        if (j % 2) binom = -binom;
        poly[j] += binom;
      }
    }
    if (poly.back() < 0)
      for (auto& c : poly) c = -c;
    eisenstein_ = std::move(poly);
  }
}

std::vector<mpz_class> AdicCompletion::mul_w(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                             const mpz_class& mod) const {
  const auto f = static_cast<std::size_t>(f0_);
  std::vector<mpz_class> c(2 * f - 1, mpz_class(0));
  for (std::size_t i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < f; ++j) c[i + j] += a[i] * b[j];
  }
  for (std::size_t k = c.size(); k-- > f;) {
    if (c[k] == 0) continue;
    const mpz_class t = c[k];
    for (std::size_t i = 0; i <= f; ++i) c[k - f + i] -= t * g0_[i];
  }
  c.resize(f);
  for (auto& x : c) x = reduce_mod(x, mod);
  return c;
}

std::vector<mpz_class> AdicCompletion::mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                           const mpz_class& mod) const {
  const auto f = static_cast<std::size_t>(f0_);
  const auto e = static_cast<std::size_t>(e_);
  auto block = [&](const std::vector<mpz_class>& v, std::size_t j) {
    return std::vector<mpz_class>(v.begin() + static_cast<std::ptrdiff_t>(j * f),
                                  v.begin() + static_cast<std::ptrdiff_t>((j + 1) * f));
  };
  std::vector<std::vector<mpz_class>> c(2 * e - 1, std::vector<mpz_class>(f, mpz_class(0)));
  for (std::size_t i = 0; i < e; ++i) {
    auto ai = block(a, i);
    bool zero = true;
    for (const auto& x : ai) zero = zero && x == 0;
    if (zero) continue;
    for (std::size_t j = 0; j < e; ++j) {
      auto p = mul_w(ai, block(b, j), mod);
      for (std::size_t t = 0; t < f; ++t) c[i + j][t] += p[t];
    }
  }
  for (std::size_t k = c.size(); k-- > e;) {
    for (std::size_t t = 0; t < f; ++t) {
      if (c[k][t] == 0) continue;
      const mpz_class top = c[k][t];
      for (std::size_t i = 0; i <= e; ++i) c[k - e + i][t] -= top * eisenstein_[i];
    }
  }
  std::vector<mpz_class> out;
  out.reserve(e * f);
  for (std::size_t j = 0; j < e; ++j)
    for (std::size_t t = 0; t < f; ++t) out.push_back(reduce_mod(c[j][t], mod));
  return out;
}

std::shared_ptr<const AdicCompletion::Table> AdicCompletion::build_table(int precision) const {
  auto table = std::make_shared<Table>();
  mpz_ui_pow_ui(table->modulus.get_mpz_t(), static_cast<unsigned long>(ell_), static_cast<unsigned long>(precision));
  const mpz_class& mod = table->modulus;
  const auto f = static_cast<std::size_t>(f0_);
  const auto e = static_cast<std::size_t>(e_);

  auto one_w = std::vector<mpz_class>(f, mpz_class(0));
  one_w[0] = 1;
  auto pow_w = [&](std::vector<mpz_class> base, mpz_class exp) {
    std::vector<mpz_class> r = one_w;
    while (exp > 0) {
      if (mpz_odd_p(exp.get_mpz_t())) r = mul_w(r, base, mod);
      exp >>= 1;
      if (exp > 0) base = mul_w(base, base, mod);
    }
    return r;
  };

  // Teichmueller lift of the residue root: r <- r^q converges ell-adically.
  std::vector<mpz_class> zeta_m(f, mpz_class(0));
  for (std::size_t i = 0; i < f; ++i) zeta_m[i] = zeta_m_res_[i];
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(ell_), static_cast<unsigned long>(f0_));
  for (int it = 0; it <= precision; ++it) zeta_m = pow_w(zeta_m, q);

  auto embed = [&](const std::vector<mpz_class>& w) {
    std::vector<mpz_class> v(e * f, mpz_class(0));
    for (std::size_t t = 0; t < f; ++t) v[t] = w[t];
    return v;
  };
  auto pow_a = [&](std::vector<mpz_class> base, std::int64_t exp) {
    std::vector<mpz_class> r = embed(one_w);
    while (exp > 0) {
      if (exp & 1) r = mul(r, base, mod);
      exp >>= 1;
      if (exp > 0) base = mul(base, base, mod);
    }
    return r;
  };

  std::vector<mpz_class> zeta_l = embed(one_w);
  if (a_ > 0) zeta_l[f] = reduce_mod(mpz_class(-1), mod);  // 1 - w

  // zeta_n = zeta_m^alpha * zeta_{ell^a}^beta with alpha ell^a + beta m = 1 mod n
  const std::int64_t alpha = inverse_mod(ell_part_ % m_, m_);
  const std::int64_t beta = inverse_mod(m_ % ell_part_, ell_part_);
  std::vector<mpz_class> zeta = mul(pow_a(embed(zeta_m), alpha), pow_a(zeta_l, beta), mod);

  std::vector<mpz_class> cur = embed(one_w);
  table->zeta_powers.reserve(phi_n_);
  for (std::size_t k = 0; k < phi_n_; ++k) {
    table->zeta_powers.push_back(cur);
    cur = mul(cur, zeta, mod);
  }
  return table;
}

std::shared_ptr<const AdicCompletion::Table> AdicCompletion::table(int precision) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = tables_.find(precision);
  if (it != tables_.end()) return it->second;
  auto t = build_table(precision);
  tables_.emplace(precision, t);
  return t;
}

std::vector<mpz_class> AdicCompletion::image(const std::vector<mpz_class>& numerator, int precision) const {
  auto t = table(precision);
  const std::size_t len = static_cast<std::size_t>(e_ * f0_);
  std::vector<mpz_class> acc(len, mpz_class(0));
  for (std::size_t k = 0; k < numerator.size() && k < phi_n_; ++k) {
    if (numerator[k] == 0) continue;
    const auto& z = t->zeta_powers[k];
    for (std::size_t i = 0; i < len; ++i)
      if (z[i] != 0) acc[i] += numerator[k] * z[i];
  }
  for (auto& x : acc) x = reduce_mod(x, t->modulus);
  return acc;
}

std::optional<std::int64_t> AdicCompletion::valuation(const std::vector<mpz_class>& numerator, int precision) const {
  auto img = image(numerator, precision);
  std::optional<std::int64_t> best;
  mpz_class scratch;
  mpz_class ell(static_cast<long>(ell_));
  for (std::size_t j = 0; j < static_cast<std::size_t>(e_); ++j) {
    for (std::size_t i = 0; i < static_cast<std::size_t>(f0_); ++i) {
      const mpz_class& c = img[j * static_cast<std::size_t>(f0_) + i];
      if (c == 0) continue;
      const auto v = static_cast<std::int64_t>(mpz_remove(scratch.get_mpz_t(), c.get_mpz_t(), ell.get_mpz_t()));
      const std::int64_t cand = e_ * v + static_cast<std::int64_t>(j);
      if (!best || cand < *best) best = cand;
    }
  }
  return best;
}

FpPoly AdicCompletion::residue_of_quotient(const std::vector<mpz_class>& numerator, int t, int precision) const {
  if (precision <= t) throw Error(ErrorCode::PreconditionViolated, "precision too small for residue");
  auto img = image(numerator, precision);
  mpz_class lt;
  mpz_ui_pow_ui(lt.get_mpz_t(), static_cast<unsigned long>(ell_), static_cast<unsigned long>(t));
  FpPoly out(static_cast<std::size_t>(f0_), 0);
  mpz_class ell(static_cast<long>(ell_));
  for (std::size_t i = 0; i < static_cast<std::size_t>(f0_); ++i) {
    const mpz_class& c = img[i];
    if (!mpz_divisible_p(c.get_mpz_t(), lt.get_mpz_t()))
      throw Error(ErrorCode::InternalInconsistency, "residue taken of a non-integral quotient");
    mpz_class q = c / lt;
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), q.get_mpz_t(), ell.get_mpz_t());
    out[i] = r.get_si();
  }
  return out;
}

}  // namespace ldesc
