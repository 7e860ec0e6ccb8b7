#include "ldesc/bundles.hpp"

#include <algorithm>
#include <numeric>

namespace ldesc {

namespace {

KMatrix from_rows(const Field& F, std::vector<std::vector<FieldElement>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  std::vector<FieldElement> data;
  for (auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
    for (auto& x : row) data.push_back(std::move(x));
  }
  KMatrix m;
  m.assign(r, c, std::move(data));
  (void)F;
  return m;
}

std::vector<std::int64_t> squares_mod(std::int64_t ell) {
  std::vector<std::int64_t> sq;
  for (std::int64_t x = 1; x < ell; ++x) sq.push_back(x * x % ell);
  std::sort(sq.begin(), sq.end());
  sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
  return sq;
}

}  // namespace

GroupRep make_group(const Bundle& b) { return GroupRep(b.form, b.generators, b.options.max_group_order); }

Bundle q8_bundle(std::int64_t ell, int prime_choice) {
  Field F = FieldDescriptor::make({4, ell, {1}, prime_choice, std::nullopt, 32});
  const FieldElement i = FieldElement::zeta_power(F->ring(), 1);
  KMatrix a = integer_matrix(F, {{0, -1}, {1, 0}});
  KMatrix b = from_rows(F, {{i, F->zero()}, {F->zero(), -i}});
  GramForm f(F, integer_matrix(F, {{0, 1}, {-1, 0}}), FormKind::Alternating);
  return Bundle{f, {a, b}, std::nullopt, {}};
}

Bundle z4_hermitian_bundle(std::int64_t ell) {
  Field F = FieldDescriptor::make({4, ell, {1}, 0, 3, 32});
  const FieldElement i = FieldElement::zeta_power(F->ring(), 1);
  GramForm f(F, identity(F, 1), FormKind::Hermitian);
  return Bundle{f, {from_rows(F, {{i}})}, std::nullopt, {}};
}

Bundle ramified_hermitian_bundle(std::int64_t ell, bool odd_scale) {
  const auto sq = squares_mod(ell);
  std::int64_t s = 2;
  while (std::binary_search(sq.begin(), sq.end(), s)) ++s;
  Field F = FieldDescriptor::make({ell, ell, sq, 0, s, 32});
  const FieldElement& pi = F->uniformizer();
  const FieldElement z = F->zero(), o = F->one();
  if (!odd_scale) {
    KMatrix g = from_rows(F, {{o, z, z}, {z, z, pi}, {z, -pi, z}});
    GramForm f(F, g, FormKind::Hermitian);
    KMatrix a = integer_matrix(F, {{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    KMatrix b = integer_matrix(F, {{1, 0, 0}, {0, 0, -1}, {0, 1, 1}});
    return Bundle{f, {a, b}, std::nullopt, {}};
  }
  KMatrix g = from_rows(F, {{z, pi, z}, {-pi, z, z}, {z, z, pi * pi}});
  GramForm f(F, g, FormKind::Hermitian);
  KMatrix a = integer_matrix(F, {{0, -1, 0}, {1, 1, 0}, {0, 0, 1}});
  KMatrix b = integer_matrix(F, {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  return Bundle{f, {a, b}, std::nullopt, {}};
}

Field real_cyclotomic_field(std::int64_t ell, int precision_start) {
  return FieldDescriptor::make({ell, ell, {1, ell - 1}, 0, std::nullopt, precision_start});
}

Bundle prop5_bundle(std::int64_t ell) {
  Field F = real_cyclotomic_field(ell);
  const FieldElement c = FieldElement::zeta_power(F->ring(), 1) + FieldElement::zeta_power(F->ring(), -1);
  const FieldElement two = F->integer(2);
  GramForm f(F, from_rows(F, {{two, c}, {c, two}}), FormKind::Symmetric);
  KMatrix gen = from_rows(F, {{F->zero(), -F->one()}, {F->one(), c}});
  return Bundle{f, {gen}, std::nullopt, {}};
}

Bundle prop6_bundle(std::int64_t ell) {
  const std::int64_t n = 4 * ell;
  std::vector<std::int64_t> h;
  for (std::int64_t s = 1; s < n; ++s)
    if (s % 4 == 1 && (s % ell == 1 || s % ell == ell - 1)) h.push_back(s);
  Field F = FieldDescriptor::make({n, ell, h, 0, std::nullopt, 32});
  const FieldElement i = FieldElement::zeta_power(F->ring(), ell);
  const FieldElement c = FieldElement::zeta_power(F->ring(), 4) + FieldElement::zeta_power(F->ring(), -4);
  const FieldElement z = F->zero(), o = F->one();

  const KMatrix j1 = integer_matrix(F, {{0, 1}, {-1, 0}});
  const KMatrix f2 = from_rows(F, {{F->integer(2), c}, {c, F->integer(2)}});
  const KMatrix a = integer_matrix(F, {{0, -1}, {1, 0}});
  const KMatrix b = from_rows(F, {{i, z}, {z, -i}});
  const KMatrix zeta = from_rows(F, {{z, -o}, {o, c}});
  const KMatrix i2 = identity(F, 2);

  GramForm f(F, kronecker(j1, f2), FormKind::Alternating);
  return Bundle{f, {kronecker(a, i2), kronecker(b, i2), kronecker(i2, zeta)}, std::nullopt, {}};
}

GroupRep build_prop5_bundle(std::int64_t ell) { return make_group(prop5_bundle(ell)); }

GroupRep build_prop6_bundle(std::int64_t ell) { return make_group(prop6_bundle(ell)); }

}  // namespace ldesc
