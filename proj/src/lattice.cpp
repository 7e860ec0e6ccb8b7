#include "ldesc/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "ldesc/forms.hpp"

namespace ldesc {

SnfResult snf(const Field& F, const KMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "snf of non-square matrix");
  const std::size_t n = m.rows();
  KMatrix a = m;
  KMatrix u = identity(F, n);
  KMatrix v = identity(F, n);
  std::vector<std::int64_t> exps(n, 0);

  // Valuations of the active block, kept in step with the elimination.
  std::vector<std::int64_t> val(n * n);
  auto refresh = [&](std::size_t i, std::size_t j) {
    val[i * n + j] = a(i, j).is_zero() ? kInfiniteValuation : F->valuation(a(i, j));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) refresh(i, j);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    std::int64_t best = kInfiniteValuation;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (val[i * n + j] < best) {
          best = val[i * n + j];
          pr = i;
          pc = j;
        }
    if (best == kInfiniteValuation) throw Error(ErrorCode::Singular, "snf of a singular matrix");
    if (pr != k) {
      a.swap_rows(pr, k);
      u.swap_rows(pr, k);
      for (std::size_t j = 0; j < n; ++j) std::swap(val[pr * n + j], val[k * n + j]);
    }
    if (pc != k) {
      a.swap_cols(pc, k);
      v.swap_cols(pc, k);
      for (std::size_t i = 0; i < n; ++i) std::swap(val[i * n + pc], val[i * n + k]);
    }
    const FieldElement pivot_inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const FieldElement factor = a(i, k) * pivot_inv;
      a.axpy_row(i, k, factor);
      u.axpy_row(i, k, factor);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a(k, j).is_zero()) continue;
      const FieldElement factor = a(k, j) * pivot_inv;
      a.axpy_col(j, k, factor);
      v.axpy_col(j, k, factor);
    }
    // Make the pivot exactly pi^best; the factor is a unit.
    const FieldElement unit = F->uniformizer().pow(best) * pivot_inv;
    a.scale_row(k, unit);
    u.scale_row(k, unit);
    exps[k] = best;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) refresh(i, j);
  }

  // The pivots come out nondecreasing; reorder to nonincreasing, keeping
  // equal pivots in elimination order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return exps[x] > exps[y]; });
  SnfResult r{zeros(F, n, n), zeros(F, n, n), std::vector<std::int64_t>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t src = order[i];
    for (std::size_t j = 0; j < n; ++j) {
      r.u(i, j) = u(src, j);
      r.v(j, i) = v(j, src);
    }
    r.exps[i] = exps[src];
  }
  return r;
}

KMatrix column_reduce(const Field& F, const KMatrix& b_in) {
  const std::size_t n = b_in.rows();
  KMatrix b = b_in;
  const std::size_t cols = b.cols();
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t pc = cols;
    std::int64_t best = kInfiniteValuation;
    for (std::size_t c = r; c < cols; ++c) {
      if (b(r, c).is_zero()) continue;
      const std::int64_t v = F->valuation(b(r, c));
      if (v < best) {
        best = v;
        pc = c;
      }
    }
    if (pc == cols) throw Error(ErrorCode::Singular, "columns do not span K^N");
    b.swap_cols(pc, r);
    const FieldElement inv = b(r, r).inverse();
    for (std::size_t c = r + 1; c < cols; ++c)
      if (!b(r, c).is_zero()) b.axpy_col(c, r, b(r, c) * inv);
    const FieldElement unit = F->uniformizer().pow(best) * inv;
    b.scale_col(r, unit);
  }
  std::vector<std::size_t> rs(n);
  std::iota(rs.begin(), rs.end(), 0);
  return b.submatrix(rs, rs);
}

Lattice::Lattice(Field F, KMatrix basis) : F_(std::move(F)), basis_(std::move(basis)) {
  if (!basis_.square()) throw Error(ErrorCode::DimensionMismatch, "lattice basis must be square");
  if (!try_inverse(basis_, F_->one())) throw Error(ErrorCode::Singular, "lattice basis is singular");
}

Lattice Lattice::standard(const Field& F, std::size_t n) { return Lattice(F, identity(F, n)); }

bool Lattice::contains_vector(const std::vector<FieldElement>& x) const {
  KMatrix col = zeros(F_, x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) col(i, 0) = x[i];
  return is_integral(F_, inverse(basis_, F_->one()) * col);
}

bool Lattice::contains(const Lattice& sub) const {
  if (sub.dim() != dim()) throw Error(ErrorCode::DimensionMismatch, "lattices of different rank");
  return is_integral(F_, inverse(basis_, F_->one()) * sub.basis_);
}

Lattice Lattice::scaled(const FieldElement& c) const { return Lattice(F_, c * basis_); }

Lattice Lattice::transformed(const KMatrix& g) const { return Lattice(F_, g * basis_); }

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "lattice_sum");
  return Lattice(a.field(), column_reduce(a.field(), hconcat(a.basis(), b.basis())));
}

Lattice standard_dual(const Lattice& l) {
  return Lattice(l.field(), column_reduce(l.field(), inverse(l.basis(), l.field()->one()).transpose()));
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "lattice_intersect");
  return standard_dual(lattice_sum(standard_dual(a), standard_dual(b)));
}

Lattice dual_lattice(const Lattice& l, const GramForm& f) {
  if (f.dim() != l.dim()) throw Error(ErrorCode::DimensionMismatch, "dual_lattice");
  const Field& F = l.field();
  auto inv = try_inverse(f.gram() * conj(F, l.basis()), F->one());
  if (!inv) throw Error(ErrorCode::DegenerateForm, "form is degenerate");
  return Lattice(F, column_reduce(F, inv->transpose()));
}

Lattice stabilize(const Lattice& l, const std::vector<KMatrix>& elements) {
  Lattice acc = l;
  for (const auto& g : elements) {
    Lattice gl = l.transformed(g);
    if (!acc.contains(gl)) acc = lattice_sum(acc, gl);
  }
  return acc;
}

bool is_stable(const Lattice& l, const std::vector<KMatrix>& generators) {
  for (const auto& g : generators) {
    Lattice gl = l.transformed(g);
    if (!(gl == l)) return false;
  }
  return true;
}

std::int64_t quotient_length(const Lattice& sub, const Lattice& sup) {
  if (!sup.contains(sub)) throw Error(ErrorCode::NotContained, "quotient_length needs sub inside sup");
  const Field& F = sup.field();
  const SnfResult r = snf(F, inverse(sup.basis(), F->one()) * sub.basis());
  return std::accumulate(r.exps.begin(), r.exps.end(), std::int64_t{0});
}

}  // namespace ldesc
