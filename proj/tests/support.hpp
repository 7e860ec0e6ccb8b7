#pragma once

// Test-side oracles. Nothing here calls the elimination routines under
// test: determinants are Laplace expansions, characteristic polynomials are
// Laplace expansions over polynomial entries, valuations over Q come from
// gmp directly and valuations in a field via the field norm.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ldesc/kmatrix.hpp"

namespace oracle {

using ldesc::FieldElement;
using ldesc::Matrix;

template <class T>
T cofactor_det(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.rows();
  if (n == 0) return one;
  if (n == 1) return a(0, 0);
  T acc = zero;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 1; i < n; ++i) rs.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cs.push_back(c);
    const T minor = cofactor_det(a.submatrix(rs, cs), zero, one);
    if (j % 2 == 0) {
      acc = acc + a(0, j) * minor;
    } else {
      acc = acc - a(0, j) * minor;
    }
  }
  return acc;
}

// Polynomials with coefficients in T, lowest degree first.
template <class T>
std::vector<T> poly_add(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
  std::vector<T> r(std::max(a.size(), b.size()), zero);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

template <class T>
std::vector<T> poly_mul(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> r(a.size() + b.size() - 1, zero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

template <class T>
std::vector<T> poly_det(const std::vector<std::vector<std::vector<T>>>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return {one};
  if (n == 1) return m[0][0];
  std::vector<T> acc{zero};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<std::vector<T>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::vector<T>> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    auto term = poly_mul(m[0][j], poly_det(minor, zero, one), zero);
    if (j % 2 == 1)
      for (auto& c : term) c = zero - c;
    acc = poly_add(acc, term, zero);
  }
  return acc;
}

// det(t I - a) by cofactor expansion, padded to length n + 1.
template <class T>
std::vector<T> cofactor_charpoly(const Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.rows();
  std::vector<std::vector<std::vector<T>>> m(n, std::vector<std::vector<T>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = {zero - a(i, j)};
      if (i == j) m[i][j].push_back(one);
    }
  auto p = poly_det(m, zero, one);
  p.resize(n + 1, zero);
  return p;
}

inline std::int64_t rational_valuation(const mpq_class& q, std::int64_t ell) {
  if (q == 0) return ldesc::kInfiniteValuation;
  auto vz = [ell](mpz_class z) {
    std::int64_t v = 0;
    const mpz_class l(static_cast<long>(ell));
    while (z % l == 0) {
      z /= l;
      ++v;
    }
    return v;
  };
  return vz(q.get_num()) - vz(q.get_den());
}

// N_{Q(zeta_n)/Q}(x) as the product of all Galois conjugates.
inline mpq_class cyclotomic_norm(const FieldElement& x) {
  const std::int64_t n = x.ring()->conductor();
  FieldElement p = x.one();
  for (std::int64_t s = 1; s <= std::max<std::int64_t>(n, 1); ++s)
    if (std::gcd(s, std::max<std::int64_t>(n, 1)) == 1) p = p * x.galois(s);
  return p.coeffs()[0];
}

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::mt19937_64 gen;
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  bool coin() { return uniform(0, 1) == 1; }
};

// Random element of Q(zeta_n) with small integer coefficients.
inline FieldElement random_cyclotomic(Rng& rng, const ldesc::RingPtr& ring, long bound) {
  std::vector<mpq_class> c(ring->degree());
  for (auto& x : c) x = rng.uniform(-bound, bound);
  return FieldElement(ring, std::move(c));
}

// Random element of K = Q(zeta_n)^H: trace of a random cyclotomic element.
inline FieldElement random_element(Rng& rng, const ldesc::Field& F, long bound) {
  return F->trace_from_cyclotomic(random_cyclotomic(rng, F->ring(), bound));
}

inline ldesc::KMatrix random_matrix(Rng& rng, const ldesc::Field& F, std::size_t rows, std::size_t cols, long bound) {
  ldesc::KMatrix m(rows, cols, F->zero());
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(rng, F, bound);
  return m;
}

}  // namespace oracle
