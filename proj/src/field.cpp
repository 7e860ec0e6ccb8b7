#include "ldesc/field.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ldesc/errors.hpp"

namespace ldesc {

namespace {

std::int64_t mod_n(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

bool in(const std::vector<std::int64_t>& sorted, std::int64_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::int64_t> intersect(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::int64_t> product_set(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                      std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto x : a)
    for (auto y : b) out.push_back(mod_n(x * y, n));
  return sorted_unique(std::move(out));
}

// Extended gcd on signed values: returns g >= 0 with u a + w b = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& u, std::int64_t& w) {
  std::int64_t r0 = a, r1 = b, u0 = 1, u1 = 0, w0 = 0, w1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = u0 - q * u1;
    u0 = u1;
    u1 = t;
    t = w0 - q * w1;
    w0 = w1;
    w1 = t;
  }
  if (r0 < 0) {
    r0 = -r0;
    u0 = -u0;
    w0 = -w0;
  }
  u = u0;
  w = w0;
  return r0;
}

// Row reduction over F_p on a dense int matrix; returns pivot columns.
std::vector<std::size_t> rref_mod(std::vector<std::vector<std::int64_t>>& a, std::size_t cols, std::int64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const std::int64_t inv = fp::inv(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t f = a[i][c];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = fp::mod(a[i][j] - f * a[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::string to_string(InvolutionType t) {
  switch (t) {
    case InvolutionType::None: return "none";
    case InvolutionType::Unramified: return "unramified";
    case InvolutionType::Ramified: return "ramified";
  }
  return "none";
}

Field FieldDescriptor::make(const DescriptorSpec& spec) {
  std::shared_ptr<FieldDescriptor> d(new FieldDescriptor());
  d->spec_ = spec;
  d->build();
  return d;
}

std::int64_t FieldDescriptor::inertia_size(const std::vector<std::int64_t>& group) const {
  return static_cast<std::int64_t>(intersect(inertia_group_, group).size());
}

void FieldDescriptor::build() {
  const std::int64_t n = spec_.n;
  const std::int64_t ell = spec_.ell;
  if (n < 1) throw Error(ErrorCode::InvalidDescriptor, "conductor must be positive");
  if (ell < 3 || !fp::is_prime(ell)) throw Error(ErrorCode::InvalidDescriptor, "ell must be an odd prime");
  if (spec_.precision_start < 1) throw Error(ErrorCode::InvalidDescriptor, "precision_start must be positive");

  for (std::int64_t s = 0; s < n; ++s)
    if (std::gcd(s, n) == 1) units_.push_back(s % n);
  if (n == 1) units_ = {0};

  std::vector<std::int64_t> h;
  for (auto x : spec_.subgroup) h.push_back(mod_n(x, n));
  h = sorted_unique(std::move(h));
  if (h.empty()) h.push_back(1 % n);
  for (auto x : h)
    if (!in(units_, x)) throw Error(ErrorCode::InvalidDescriptor, "subgroup element is not a unit mod n");
  if (!in(h, 1 % n)) throw Error(ErrorCode::InvalidDescriptor, "subgroup must contain 1");
  if (product_set(h, h, n) != h) throw Error(ErrorCode::InvalidDescriptor, "subgroup is not closed");
  spec_.subgroup = h;

  ring_ = std::make_shared<CyclotomicRing>(n);

  m_ = n;
  ell_part_ = 1;
  while (m_ % ell == 0) {
    m_ /= ell;
    ell_part_ *= ell;
  }
  std::vector<std::int64_t> ell_powers_mod_m;
  {
    std::int64_t x = 1 % m_;
    do {
      ell_powers_mod_m.push_back(x);
      x = mod_n(x * ell, m_);
    } while (x != 1 % m_);
    ell_powers_mod_m = sorted_unique(ell_powers_mod_m);
  }
  for (auto s : units_) {
    if (s % m_ == 1 % m_) inertia_group_.push_back(s);
    if (in(ell_powers_mod_m, s % m_)) decomposition_group_.push_back(s);
  }

  auto local_degrees = [&](const std::vector<std::int64_t>& group, int& e, int& f, int& g) {
    const auto ih = static_cast<std::int64_t>(intersect(inertia_group_, group).size());
    const auto dh = static_cast<std::int64_t>(intersect(decomposition_group_, group).size());
    const auto i_size = static_cast<std::int64_t>(inertia_group_.size());
    const auto d_size = static_cast<std::int64_t>(decomposition_group_.size());
    e = static_cast<int>(i_size / ih);
    f = static_cast<int>((d_size / i_size) / (dh / ih));
    const std::int64_t dhg = d_size * static_cast<std::int64_t>(group.size()) / dh;
    g = static_cast<int>(static_cast<std::int64_t>(units_.size()) / dhg);
  };
  local_degrees(h, e_, f_, g_);
  degree_ = static_cast<int>(units_.size() / h.size());
  if (e_ * f_ * g_ != degree_) throw Error(ErrorCode::InternalInconsistency, "e f g does not match [K:Q]");
  e_base_ = e_;
  f_base_ = f_;

  if (spec_.involution) {
    const std::int64_t s = mod_n(*spec_.involution, n);
    spec_.involution = s;
    if (!in(units_, s)) throw Error(ErrorCode::InvalidDescriptor, "involution is not a unit mod n");
    if (in(h, s)) throw Error(ErrorCode::InvalidDescriptor, "involution acts trivially on K");
    if (!in(h, mod_n(s * s, n))) throw Error(ErrorCode::InvalidDescriptor, "involution does not have order 2 on K");
    auto dh = product_set(decomposition_group_, h, n);
    if (!in(dh, s))
      throw Error(ErrorCode::InvalidDescriptor, "involution moves the chosen prime (lambda splits in K/L)");
    std::vector<std::int64_t> h2 = h;
    for (auto x : h) h2.push_back(mod_n(x * s, n));
    base_group_ = sorted_unique(std::move(h2));
    int g_base = 0;
    local_degrees(base_group_, e_base_, f_base_, g_base);
    if (e_ == 2 * e_base_ && f_ == f_base_) {
      inv_type_ = InvolutionType::Ramified;
    } else if (f_ == 2 * f_base_ && e_ == e_base_) {
      inv_type_ = InvolutionType::Unramified;
    } else {
      throw Error(ErrorCode::InvalidDescriptor, "K/L is neither ramified nor inert at lambda");
    }
  }

  const int f0 = static_cast<int>(decomposition_group_.size() / inertia_group_.size());

  FpPoly g0 = fp::first_irreducible(f0, ell);
  big_residue_ = std::make_shared<ResidueField>(ell, g0);
  const std::uint64_t q = big_residue_->order();
  std::optional<ResidueElement> gen;
  for (std::uint64_t t = 1; t < q && !gen; ++t) {
    FpPoly c(static_cast<std::size_t>(f0), 0);
    std::uint64_t u = t;
    for (int i = 0; i < f0; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(u % static_cast<std::uint64_t>(ell));
      u /= static_cast<std::uint64_t>(ell);
    }
    ResidueElement x(big_residue_, c);
    if (!x.is_zero() && x.multiplicative_order() == q - 1) gen = x;
  }
  if (!gen) throw Error(ErrorCode::InternalInconsistency, "no generator of the residue field");
  const ResidueElement omega = gen->pow((q - 1) / static_cast<std::uint64_t>(m_));

  struct Factor {
    FpPoly poly;
    std::int64_t rep;
  };
  std::vector<Factor> factors;
  std::set<std::int64_t> seen;
  std::vector<std::int64_t> units_m;
  for (std::int64_t s = 0; s < m_; ++s)
    if (std::gcd(s, m_) == 1) units_m.push_back(s);
  if (m_ == 1) units_m = {0};
  for (auto s : units_m) {
    if (seen.count(s)) continue;
    std::vector<std::int64_t> coset;
    for (auto p : ell_powers_mod_m) coset.push_back(mod_n(s * p, m_));
    coset = sorted_unique(coset);
    for (auto c : coset) seen.insert(c);
    std::vector<ResidueElement> poly{omega.one()};
    for (auto c : coset) {
      const ResidueElement root = omega.pow(static_cast<std::uint64_t>(c));
      std::vector<ResidueElement> next(poly.size() + 1, omega.zero());
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] = next[i + 1] + poly[i];
        next[i] = next[i] - root * poly[i];
      }
      poly = std::move(next);
    }
    FpPoly coeffs;
    for (const auto& c : poly) {
      for (std::size_t i = 1; i < c.coeffs().size(); ++i)
        if (c.coeffs()[i] != 0) throw Error(ErrorCode::InternalInconsistency, "factor of Phi_m not over F_ell");
      coeffs.push_back(c.coeffs()[0]);
    }
    factors.push_back({coeffs, coset.front()});
  }
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  if (spec_.prime_choice < 0 || static_cast<std::size_t>(spec_.prime_choice) >= factors.size())
    throw Error(ErrorCode::InvalidDescriptor, "prime_choice does not select a factor of Phi_m mod ell");
  prime_factor_ = factors[static_cast<std::size_t>(spec_.prime_choice)].poly;
  const ResidueElement zeta_m_res = omega.pow(static_cast<std::uint64_t>(factors[static_cast<std::size_t>(spec_.prime_choice)].rep));
  zeta_m_residue_ = zeta_m_res.coeffs();
  adic_ = std::make_shared<AdicCompletion>(ell, n, g0, zeta_m_residue_);

  build_residue_field();

  switch (inv_type_) {
    case InvolutionType::None:
      pi_ = std::make_shared<FieldElement>(find_uniformizer(spec_.subgroup));
      break;
    case InvolutionType::Unramified:
      pi_ = std::make_shared<FieldElement>(find_uniformizer(base_group_));
      break;
    case InvolutionType::Ramified: {
      FieldElement p0 = find_uniformizer(spec_.subgroup);
      pi_ = std::make_shared<FieldElement>(p0 - conj(p0));
      break;
    }
  }
  validate_uniformizer(*pi_);
}

void FieldDescriptor::build_residue_field() {
  const std::int64_t ell = spec_.ell;
  std::optional<int> inv_power;
  if (inv_type_ == InvolutionType::Unramified) inv_power = f_ / 2;
  k_ = std::make_shared<ResidueField>(ell, fp::first_irreducible(f_, ell), inv_power);

  // The degree-f subfield of the big residue field is ker(Frob^f - 1).
  const int f0 = big_residue_->degree();
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(f0),
                                              std::vector<std::int64_t>(static_cast<std::size_t>(f0), 0));
  for (int j = 0; j < f0; ++j) {
    FpPoly basis(static_cast<std::size_t>(f0), 0);
    basis[static_cast<std::size_t>(j)] = 1;
    ResidueElement x(big_residue_, basis);
    ResidueElement y = x.frobenius(f_) - x;
    for (int i = 0; i < f0; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = y.coeffs()[static_cast<std::size_t>(i)];
  }
  auto pivots = rref_mod(rows, static_cast<std::size_t>(f0), ell);
  std::vector<FpPoly> kernel;
  for (int free = 0; free < f0; ++free) {
    if (std::find(pivots.begin(), pivots.end(), static_cast<std::size_t>(free)) != pivots.end()) continue;
    FpPoly v(static_cast<std::size_t>(f0), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = fp::mod(-rows[r][static_cast<std::size_t>(free)], ell);
    kernel.push_back(v);
  }
  if (static_cast<int>(kernel.size()) != f_) throw Error(ErrorCode::InternalInconsistency, "subfield dimension");

  const FpPoly& h = k_->modulus();
  const std::uint64_t count = fp::ipow(static_cast<std::uint64_t>(ell), static_cast<unsigned>(f_));
  std::optional<ResidueElement> theta;
  for (std::uint64_t t = 0; t < count && !theta; ++t) {
    FpPoly c(static_cast<std::size_t>(f0), 0);
    std::uint64_t u = t;
    for (const auto& kv : kernel) {
      const auto digit = static_cast<std::int64_t>(u % static_cast<std::uint64_t>(ell));
      u /= static_cast<std::uint64_t>(ell);
      for (int i = 0; i < f0; ++i) c[static_cast<std::size_t>(i)] = fp::mod(c[static_cast<std::size_t>(i)] + digit * kv[static_cast<std::size_t>(i)], ell);
    }
    ResidueElement x(big_residue_, c);
    ResidueElement acc = x.zero();
    for (std::size_t i = h.size(); i-- > 0;) acc = acc * x + ResidueElement(big_residue_, h[i]);
    if (acc.is_zero()) theta = x;
  }
  if (!theta) throw Error(ErrorCode::InternalInconsistency, "residue modulus has no root in the subfield");
  ResidueElement p = theta->one();
  for (int i = 0; i < f_; ++i) {
    theta_powers_.push_back(p.coeffs());
    p = p * *theta;
  }
}

std::int64_t FieldDescriptor::cyclotomic_valuation(const FieldElement& x) const {
  if (x.is_zero()) return kInfiniteValuation;
  const mpz_class d = x.denominator();
  const auto num = x.numerator(d);
  int precision = spec_.precision_start;
  for (;;) {
    auto v = adic_->valuation(num, precision);
    if (v) {
      mpz_class scratch;
      mpz_class ell(static_cast<long>(spec_.ell));
      const auto vd = static_cast<std::int64_t>(mpz_remove(scratch.get_mpz_t(), d.get_mpz_t(), ell.get_mpz_t()));
      return *v - static_cast<std::int64_t>(adic_->ramification()) * vd;
    }
    if (precision > (1 << 16)) throw Error(ErrorCode::InternalInconsistency, "valuation did not stabilize");
    precision *= 2;
  }
}

std::int64_t FieldDescriptor::valuation_in_subfield(const FieldElement& x, const std::vector<std::int64_t>& group) const {
  const std::int64_t v = cyclotomic_valuation(x);
  if (v == kInfiniteValuation) return v;
  const std::int64_t ih = inertia_size(group);
  if (v % ih != 0) throw Error(ErrorCode::NotInField, "valuation is not integral on the subfield");
  return v / ih;
}

std::int64_t FieldDescriptor::valuation(const FieldElement& x) const {
  return valuation_in_subfield(x, spec_.subgroup);
}

std::optional<std::int64_t> FieldDescriptor::valuation_at_precision(const FieldElement& x, int precision) const {
  if (x.is_zero()) return kInfiniteValuation;
  const mpz_class d = x.denominator();
  auto v = adic_->valuation(x.numerator(d), precision);
  if (!v) return std::nullopt;
  mpz_class scratch;
  mpz_class ell(static_cast<long>(spec_.ell));
  const auto vd = static_cast<std::int64_t>(mpz_remove(scratch.get_mpz_t(), d.get_mpz_t(), ell.get_mpz_t()));
  const std::int64_t vp = *v - static_cast<std::int64_t>(adic_->ramification()) * vd;
  return vp / inertia_size(spec_.subgroup);
}

ResidueElement FieldDescriptor::reduce(const FieldElement& x) const { return reduce_at_precision(x, spec_.precision_start); }

ResidueElement FieldDescriptor::reduce_at_precision(const FieldElement& x, int precision) const {
  const std::int64_t v = valuation(x);
  if (v < 0) throw Error(ErrorCode::NegativeValuation, "reduce of a non-integral element");
  if (v == kInfiniteValuation) return ResidueElement(k_, std::int64_t{0});
  const mpz_class d = x.denominator();
  mpz_class unit_part;
  mpz_class ell(static_cast<long>(spec_.ell));
  const auto t = static_cast<int>(mpz_remove(unit_part.get_mpz_t(), d.get_mpz_t(), ell.get_mpz_t()));
  FpPoly r = adic_->residue_of_quotient(x.numerator(d), t, std::max(precision, t + 1));
  mpz_class um;
  mpz_fdiv_r_ui(um.get_mpz_t(), unit_part.get_mpz_t(), static_cast<unsigned long>(spec_.ell));
  const std::int64_t scale = fp::inv(um.get_si(), spec_.ell);
  for (auto& c : r) c = c * scale % spec_.ell;

  // Coordinates of r on theta^0..theta^(f-1).
  const auto f0 = static_cast<std::size_t>(big_residue_->degree());
  const auto f = static_cast<std::size_t>(f_);
  std::vector<std::vector<std::int64_t>> rows(f0, std::vector<std::int64_t>(f + 1, 0));
  for (std::size_t i = 0; i < f0; ++i) {
    for (std::size_t j = 0; j < f; ++j) rows[i][j] = theta_powers_[j][i];
    rows[i][f] = r[i];
  }
  auto pivots = rref_mod(rows, f + 1, spec_.ell);
  if (!pivots.empty() && pivots.back() == f) throw Error(ErrorCode::InternalInconsistency, "residue outside k");
  FpPoly coords(f, 0);
  for (std::size_t p = 0; p < pivots.size(); ++p) coords[pivots[p]] = rows[p][f];
  return ResidueElement(k_, coords);
}

FieldElement FieldDescriptor::apply_involution(const FieldElement& x) const {
  if (!spec_.involution) throw Error(ErrorCode::NoInvolution, "descriptor has no involution");
  return x.galois(*spec_.involution);
}

bool FieldDescriptor::contains(const FieldElement& x) const {
  if (x.ring()->conductor() != spec_.n) return false;
  for (auto h : spec_.subgroup)
    if (!(x.galois(h) == x)) return false;
  return true;
}

FieldElement FieldDescriptor::element(std::vector<mpq_class> coeffs) const {
  FieldElement x(ring_, std::move(coeffs));
  if (!contains(x)) throw Error(ErrorCode::NotInField, "element is not fixed by the subgroup");
  return x;
}

FieldElement FieldDescriptor::trace_from_cyclotomic(const FieldElement& x) const {
  FieldElement acc = zero();
  for (auto h : spec_.subgroup) acc = acc + x.galois(h);
  return acc;
}

std::vector<FieldElement> FieldDescriptor::periods() const {
  std::vector<FieldElement> out;
  std::set<std::string> keys;
  for (std::int64_t c = 0; c < spec_.n; ++c) {
    FieldElement eta = trace_from_cyclotomic(FieldElement::zeta_power(ring_, c));
    if (keys.insert(eta.key()).second) out.push_back(eta);
  }
  return out;
}

FieldElement FieldDescriptor::find_uniformizer(const std::vector<std::int64_t>& group) const {
  const auto e_t = static_cast<std::int64_t>(inertia_group_.size()) / inertia_size(group);
  FieldElement ell_elem = integer(static_cast<long>(spec_.ell));
  if (e_t == 1) return ell_elem;

  auto fixed = [&](const FieldElement& x) {
    for (auto h : group)
      if (!(x.galois(h) == x)) return false;
    return true;
  };
  std::vector<FieldElement> candidates;
  const FieldElement z = FieldElement::zeta_power(ring_, m_);  // zeta_{ell^a}
  const FieldElement one_minus_z = one() - z;
  if (fixed(one_minus_z)) candidates.push_back(one_minus_z);
  FieldElement norm = one();
  for (auto h : group) norm = norm * (one() - z.galois(h));
  candidates.push_back(norm);
  std::vector<FieldElement> etas;
  for (std::int64_t c = 0; c < spec_.n; ++c) {
    FieldElement eta = zero();
    for (auto h : group) eta = eta + FieldElement::zeta_power(ring_, c * h);
    etas.push_back(eta);
  }
  for (const auto& eta : etas) candidates.push_back(eta);
  for (std::size_t i = 0; i < etas.size(); ++i)
    for (std::size_t j = i + 1; j < etas.size() && j < i + 8; ++j) candidates.push_back(etas[i] - etas[j]);

  FieldElement cur = ell_elem;
  std::int64_t cur_v = e_t;
  for (const auto& y : candidates) {
    if (y.is_zero()) continue;
    const std::int64_t vy = valuation_in_subfield(y, group);
    if (vy == 0) continue;
    std::int64_t u = 0, w = 0;
    const std::int64_t g = ext_gcd(cur_v, vy, u, w);
    if (g >= cur_v) continue;
    cur = cur.pow(u) * y.pow(w);
    cur_v = g;
    if (cur_v == 1) return cur;
  }
  throw Error(ErrorCode::InternalInconsistency, "could not construct a uniformizer");
}

void FieldDescriptor::validate_uniformizer(const FieldElement& pi) const {
  if (!contains(pi)) throw Error(ErrorCode::InvalidDescriptor, "uniformizer is not in K");
  if (valuation(pi) != 1) throw Error(ErrorCode::InvalidDescriptor, "uniformizer must have valuation 1");
  if (inv_type_ == InvolutionType::Ramified && !(conj(pi) == -pi))
    throw Error(ErrorCode::InvalidDescriptor, "ramified uniformizer must satisfy conj(pi) = -pi");
  if (inv_type_ == InvolutionType::Unramified && !(conj(pi) == pi))
    throw Error(ErrorCode::InvalidDescriptor, "unramified uniformizer must lie in L");
}

Field FieldDescriptor::with_uniformizer(const FieldElement& u_pi) const {
  validate_uniformizer(u_pi);
  std::shared_ptr<FieldDescriptor> d(new FieldDescriptor(*this));
  d->pi_ = std::make_shared<FieldElement>(u_pi);
  return d;
}

}  // namespace ldesc
