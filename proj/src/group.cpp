#include "ldesc/group.hpp"

namespace ldesc {

std::string matrix_key(const KMatrix& m) {
  std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  for (const auto& x : m.data()) {
    key += ';';
    key += x.key();
  }
  return key;
}

GroupRep::GroupRep(GramForm form, std::vector<KMatrix> generators, std::size_t max_order)
    : form_(std::move(form)), generators_(std::move(generators)) {
  const Field& F = form_.field();
  const std::size_t n = form_.dim();
  if (!form_.is_nondegenerate()) throw Error(ErrorCode::DegenerateForm, "group form is degenerate");
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    const KMatrix& m = generators_[g];
    const std::string which = "generator " + std::to_string(g);
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::DimensionMismatch, which + " has the wrong shape");
    for (const auto& x : m.data())
      if (!F->contains(x)) throw Error(ErrorCode::NotInField, which + " has an entry outside K");
    if (!try_inverse(m, F->one())) throw Error(ErrorCode::Singular, which + " is singular");
    if (!form_.is_isometry(m)) throw Error(ErrorCode::NotIsometry, which + " does not preserve the form");
  }

  elements_.push_back({identity(F, n), {}});
  index_.emplace(matrix_key(elements_[0].matrix), 0);
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (std::size_t g = 0; g < generators_.size(); ++g) {
      KMatrix next = elements_[head].matrix * generators_[g];
      std::string key = matrix_key(next);
      auto it = index_.find(key);
      if (it != index_.end()) {
        cayley_.push_back(it->second);
        continue;
      }
      if (elements_.size() >= max_order)
        throw Error(ErrorCode::GroupTooLarge, "group has more than " + std::to_string(max_order) + " elements");
      std::vector<std::size_t> word = elements_[head].word;
      word.push_back(g);
      index_.emplace(std::move(key), elements_.size());
      cayley_.push_back(elements_.size());
      elements_.push_back({std::move(next), std::move(word)});
    }
  }
}

std::vector<KMatrix> GroupRep::matrices() const {
  std::vector<KMatrix> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.matrix);
  return out;
}

std::size_t GroupRep::product(std::size_t i, std::size_t j) const {
  std::size_t cur = i;
  for (auto g : elements_[j].word) cur = right_multiply(cur, g);
  return cur;
}

std::size_t GroupRep::find(const KMatrix& m) const {
  auto it = index_.find(matrix_key(m));
  return it == index_.end() ? elements_.size() : it->second;
}

}  // namespace ldesc
