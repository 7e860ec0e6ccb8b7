#include "ldesc/kmatrix.hpp"

#include <algorithm>

namespace ldesc {

KMatrix identity(const Field& F, std::size_t n) { return KMatrix::identity(n, F->one()); }

KMatrix zeros(const Field& F, std::size_t rows, std::size_t cols) { return KMatrix(rows, cols, F->zero()); }

KMatrix diagonal(const Field& F, const std::vector<FieldElement>& d) {
  KMatrix m = zeros(F, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

KMatrix integer_matrix(const Field& F, std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<FieldElement> data;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged integer matrix");
    for (long v : row) data.push_back(F->integer(v));
  }
  KMatrix m;
  m.assign(r, c, std::move(data));
  return m;
}

ResMatrix residue_identity(const ResidueFieldPtr& k, std::size_t n) {
  return ResMatrix::identity(n, ResidueElement(k, std::int64_t{1}));
}

KMatrix conj(const Field& F, const KMatrix& m) {
  return m.map([&](const FieldElement& x) { return F->conj(x); });
}

KMatrix conj_transpose(const Field& F, const KMatrix& m) { return conj(F, m).transpose(); }

ResMatrix conj(const ResMatrix& m) {
  return m.map([](const ResidueElement& x) { return x.conj(); });
}

ResMatrix conj_transpose(const ResMatrix& m) { return conj(m).transpose(); }

std::int64_t min_valuation(const Field& F, const KMatrix& m) {
  std::int64_t best = kInfiniteValuation;
  for (const auto& x : m.data())
    if (!x.is_zero()) best = std::min(best, F->valuation(x));
  return best;
}

bool is_integral(const Field& F, const KMatrix& m) {
  for (const auto& x : m.data())
    if (!x.is_zero() && F->valuation(x) < 0) return false;
  return true;
}

ResMatrix reduce(const Field& F, const KMatrix& m) {
  return m.map([&](const FieldElement& x) { return F->reduce(x); });
}

std::vector<ResidueElement> reduce(const Field& F, const std::vector<FieldElement>& poly) {
  std::vector<ResidueElement> out;
  out.reserve(poly.size());
  for (const auto& c : poly) out.push_back(F->reduce(c));
  return out;
}

}  // namespace ldesc
