#pragma once

// Bilinear and sesquilinear forms f(x, y) = x^T G sigma(y) on K^N, their
// residue forms over k, and the reductions of a balanced lattice.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldesc/kmatrix.hpp"
#include "ldesc/lattice.hpp"

namespace ldesc {

enum class FormKind { Alternating, Symmetric, Hermitian, SkewHermitian };

std::string to_string(FormKind k);
FormKind form_kind_from_string(const std::string& s);  // throws Parse
bool is_sesquilinear(FormKind k);

bool satisfies(const Field& F, const KMatrix& gram, FormKind kind);
bool satisfies(const ResMatrix& gram, FormKind kind);
/// Kind of a Gram matrix over K, preferring the bilinear label when the
/// involution fixes every entry. nullopt if no kind equation holds.
std::optional<FormKind> classify(const Field& F, const KMatrix& gram);
std::optional<FormKind> classify(const ResMatrix& gram);

class GramForm {
 public:
  /// Checks shape and the kind equation (InvalidForm), and that the
  /// hermitian kinds come with an involution (NoInvolution).
  GramForm(Field F, KMatrix gram, FormKind kind);

  const Field& field() const noexcept { return F_; }
  const KMatrix& gram() const noexcept { return gram_; }
  FormKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return gram_.rows(); }

  bool is_nondegenerate() const;
  // Gram matrix of the form on the columns of b: b^T G sigma(b).
  KMatrix gram_on(const KMatrix& b) const;
  FieldElement operator()(const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) const;
  bool is_isometry(const KMatrix& g) const;
  /// c * f; the kind follows from sigma(c) = +-c.
  GramForm scaled(const FieldElement& c) const;

 private:
  Field F_;
  KMatrix gram_;
  FormKind kind_;
};

/// A form over k. For an assembled f0 the Gram matrix is block diagonal
/// with blocks of sizes (s, N - s) and kinds (bar_kind, tilde_kind); a mixed
/// pair is the orthogonal x symplectic case of a ramified involution.
struct ResidueForm {
  ResMatrix gram;
  std::size_t s = 0;
  FormKind bar_kind = FormKind::Symmetric;
  FormKind tilde_kind = FormKind::Symmetric;

  std::size_t dim() const noexcept { return gram.rows(); }
  bool mixed() const noexcept { return s > 0 && s < dim() && bar_kind != tilde_kind; }
  // Kind of the whole form when it is not mixed.
  FormKind kind() const noexcept { return s > 0 ? bar_kind : tilde_kind; }
  std::string kind_name() const;
};

bool is_nondegenerate(const ResMatrix& gram);

struct ScaledForm {
  std::int64_t m = 0;
  GramForm form;
};
/// pi^m f with the Gram matrix on S of minimum valuation exactly 0.
ScaledForm normalize_scale(const GramForm& f, const Lattice& S);

/// Kinds of (f-bar, f-tilde) for a form f' of the given kind: preserved in
/// the bilinear and unramified cases; in the ramified case f-bar is the
/// symmetric or alternating shadow of f' and f-tilde that of pi f'.
std::pair<FormKind, FormKind> reduction_kinds(const Field& F, FormKind scaled_kind);
/// Kind of pi^m f given the kind of f (parity rule for a ramified involution).
FormKind scaled_kind(const Field& F, FormKind kind, std::int64_t m);

/// Basis e'_1..e'_N of T* with T spanned by pi^{a_i} e'_i, a_i in {0, 1},
/// a nonincreasing. tilde_index lists a_i = 1, bar_index lists a_i = 0.
struct AdaptedBasis {
  Field field;
  KMatrix basis;
  std::vector<std::int64_t> exps;
  std::vector<std::size_t> bar_index, tilde_index;
  KMatrix t_basis() const;  // columns pi^{a_i} e'_i
};
/// Requires f'(T,T) = O and lambda T* <= T <= T* (PreconditionViolated).
AdaptedBasis adapted_basis(const Lattice& T, const GramForm& fp);

struct Reduction {
  ResidueForm form;                                  // full N x N Gram
  std::vector<std::vector<ResidueElement>> kernel;   // basis of the radical
  ResidueForm block;                                 // nondegenerate quotient, coordinate block
};
/// f-bar on T/lambda T in the adapted basis of T.
Reduction reduce_bar(const Lattice& T, const GramForm& fp);
/// f-tilde: reduction of pi f' on T*/lambda T* in the adapted basis of T*.
Reduction reduce_tilde(const Lattice& T, const GramForm& fp);
Reduction reduce_bar(const AdaptedBasis& ab, const GramForm& fp);
Reduction reduce_tilde(const AdaptedBasis& ab, const GramForm& fp);

/// Block diagonal f0 = f-bar block (+) f-tilde block. Mixed kinds are only
/// legal for a ramified involution (KindMismatch otherwise).
ResidueForm assemble_f0(const Field& F, const ResidueForm& bar, const ResidueForm& tilde);

}  // namespace ldesc
