#pragma once

// Full-rank O-lattices in K^N, stored as a basis matrix (columns), and the
// valuation-pivoted Smith normal form that all the lattice operations use.

#include <cstdint>
#include <vector>

#include "ldesc/kmatrix.hpp"

namespace ldesc {

struct SnfResult {
  KMatrix u, v;                    // integral, with integral inverses
  std::vector<std::int64_t> exps;  // nonincreasing; u * m * v = diag(pi^exps)
};

/// Pivot on the entry of least valuation (ties: lowest row, then column).
SnfResult snf(const Field& F, const KMatrix& m);

/// O-span of the columns of b (b must have rank = rows), as a square
/// lower-triangular basis.
KMatrix column_reduce(const Field& F, const KMatrix& b);

class GramForm;

class Lattice {
 public:
  Lattice(Field F, KMatrix basis);
  static Lattice standard(const Field& F, std::size_t n);

  const Field& field() const noexcept { return F_; }
  const KMatrix& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.rows(); }

  // x (a column) lies in the lattice
  bool contains_vector(const std::vector<FieldElement>& x) const;
  bool contains(const Lattice& sub) const;
  Lattice scaled(const FieldElement& c) const;
  Lattice transformed(const KMatrix& g) const;  // g * L

  // Two-sided integrality of the change of basis.
  friend bool operator==(const Lattice& a, const Lattice& b) { return a.contains(b) && b.contains(a); }

 private:
  Field F_;
  KMatrix basis_;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
// Dual under x^T y (no involution).
Lattice standard_dual(const Lattice& l);
/// {x : f(x, L) in O}. Throws DegenerateForm if f is degenerate.
Lattice dual_lattice(const Lattice& l, const GramForm& f);
/// Sum of g L over the given (enumerated) group elements.
Lattice stabilize(const Lattice& l, const std::vector<KMatrix>& elements);
bool is_stable(const Lattice& l, const std::vector<KMatrix>& generators);
/// Length of sup/sub; throws NotContained unless sub is contained in sup.
std::int64_t quotient_length(const Lattice& sub, const Lattice& sup);

}  // namespace ldesc
