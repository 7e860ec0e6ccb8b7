#pragma once

// A finite matrix group over K preserving a form, enumerated from its
// generators by breadth-first search.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldesc/forms.hpp"

namespace ldesc {

inline constexpr std::size_t kDefaultMaxGroupOrder = 100000;

struct GroupElement {
  KMatrix matrix;
  std::vector<std::size_t> word;  // generator indices, product left to right
};

class GroupRep {
 public:
  /// Validates the generators (square, entries in K, invertible, isometries
  /// of a nondegenerate form) and enumerates the closure. Throws
  /// GroupTooLarge past max_order elements, NotIsometry, DimensionMismatch.
  GroupRep(GramForm form, std::vector<KMatrix> generators, std::size_t max_order = kDefaultMaxGroupOrder);

  const Field& field() const noexcept { return form_.field(); }
  const GramForm& form() const noexcept { return form_; }
  std::size_t dim() const noexcept { return form_.dim(); }
  const std::vector<KMatrix>& generators() const noexcept { return generators_; }
  // Element 0 is the identity; order is BFS discovery order, generators
  // tried in index order, so words are shortlex-minimal.
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::vector<KMatrix> matrices() const;

  // Index of elements[i] * generators[g].
  std::size_t right_multiply(std::size_t i, std::size_t g) const { return cayley_[i * generators_.size() + g]; }
  // Index of elements[i] * elements[j].
  std::size_t product(std::size_t i, std::size_t j) const;
  // Index of a matrix in the group, or order() when absent.
  std::size_t find(const KMatrix& m) const;

 private:
  GramForm form_;
  std::vector<KMatrix> generators_;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> cayley_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Canonical text of a matrix, used for hashing.
std::string matrix_key(const KMatrix& m);

}  // namespace ldesc
