#include "ldesc/forms.hpp"

#include <algorithm>

namespace ldesc {

std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::Alternating: return "alternating";
    case FormKind::Symmetric: return "symmetric";
    case FormKind::Hermitian: return "hermitian";
    case FormKind::SkewHermitian: return "skew-hermitian";
  }
  return "symmetric";
}

FormKind form_kind_from_string(const std::string& s) {
  if (s == "alternating") return FormKind::Alternating;
  if (s == "symmetric") return FormKind::Symmetric;
  if (s == "hermitian") return FormKind::Hermitian;
  if (s == "skew-hermitian") return FormKind::SkewHermitian;
  throw Error(ErrorCode::Parse, "unknown form kind '" + s + "'");
}

bool is_sesquilinear(FormKind k) { return k == FormKind::Hermitian || k == FormKind::SkewHermitian; }

namespace {

template <typename M, typename Conj>
bool kind_holds(const M& g, FormKind kind, Conj&& conj_fn) {
  if (!g.square()) return false;
  const std::size_t n = g.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = g(j, i);
      const auto& b = g(i, j);
      switch (kind) {
        case FormKind::Alternating:
          if (!(a == -b)) return false;
          if (i == j && !b.is_zero()) return false;
          break;
        case FormKind::Symmetric:
          if (!(a == b)) return false;
          break;
        case FormKind::Hermitian:
          if (!(a == conj_fn(b))) return false;
          break;
        case FormKind::SkewHermitian:
          if (!(a == -conj_fn(b))) return false;
          break;
      }
    }
  }
  return true;
}

FieldElement pi_power(const Field& F, std::int64_t m) { return F->uniformizer().pow(m); }

}  // namespace

bool satisfies(const Field& F, const KMatrix& gram, FormKind kind) {
  if (is_sesquilinear(kind) && !F->has_involution()) return false;
  return kind_holds(gram, kind, [&](const FieldElement& x) { return F->conj(x); });
}

bool satisfies(const ResMatrix& gram, FormKind kind) {
  return kind_holds(gram, kind, [](const ResidueElement& x) { return x.conj(); });
}

std::optional<FormKind> classify(const Field& F, const KMatrix& gram) {
  for (auto k : {FormKind::Alternating, FormKind::Symmetric, FormKind::Hermitian, FormKind::SkewHermitian})
    if (satisfies(F, gram, k)) return k;
  return std::nullopt;
}

std::optional<FormKind> classify(const ResMatrix& gram) {
  for (auto k : {FormKind::Alternating, FormKind::Symmetric, FormKind::Hermitian, FormKind::SkewHermitian})
    if (satisfies(gram, k)) return k;
  return std::nullopt;
}

GramForm::GramForm(Field F, KMatrix gram, FormKind kind) : F_(std::move(F)), gram_(std::move(gram)), kind_(kind) {
  if (!gram_.square()) throw Error(ErrorCode::DimensionMismatch, "Gram matrix must be square");
  if (is_sesquilinear(kind_) && !F_->has_involution())
    throw Error(ErrorCode::NoInvolution, to_string(kind_) + " form needs an involution");
  for (const auto& x : gram_.data())
    if (!F_->contains(x)) throw Error(ErrorCode::NotInField, "Gram entry is not in K");
  if (!satisfies(F_, gram_, kind_)) throw Error(ErrorCode::InvalidForm, "Gram matrix is not " + to_string(kind_));
}

bool GramForm::is_nondegenerate() const {
  return dim() == 0 || !determinant(gram_, F_->one()).is_zero();
}

KMatrix GramForm::gram_on(const KMatrix& b) const { return b.transpose() * gram_ * conj(F_, b); }

FieldElement GramForm::operator()(const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) const {
  if (x.size() != dim() || y.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "form evaluation");
  FieldElement acc = F_->zero();
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (!gram_(i, j).is_zero()) acc = acc + x[i] * gram_(i, j) * F_->conj(y[j]);
  return acc;
}

bool GramForm::is_isometry(const KMatrix& g) const {
  if (g.rows() != dim() || g.cols() != dim()) return false;
  return gram_on(g) == gram_;
}

GramForm GramForm::scaled(const FieldElement& c) const {
  FormKind k = kind_;
  if (is_sesquilinear(kind_) && !(F_->conj(c) == c)) {
    if (!(F_->conj(c) == -c)) throw Error(ErrorCode::InvalidForm, "scalar is neither fixed nor negated by the involution");
    k = kind_ == FormKind::Hermitian ? FormKind::SkewHermitian : FormKind::Hermitian;
  }
  return GramForm(F_, c * gram_, k);
}

std::string ResidueForm::kind_name() const {
  if (!mixed()) return to_string(s > 0 ? bar_kind : tilde_kind);
  // Ramified case: one symmetric and one alternating block.
  return bar_kind == FormKind::Symmetric ? "orthogonal x symplectic" : "symplectic x orthogonal";
}

bool is_nondegenerate(const ResMatrix& gram) {
  if (gram.rows() == 0) return true;
  return !determinant(gram, gram(0, 0).one()).is_zero();
}

FormKind scaled_kind(const Field& F, FormKind kind, std::int64_t m) {
  if (F->involution_type() == InvolutionType::Ramified && is_sesquilinear(kind) && (m % 2 != 0))
    return kind == FormKind::Hermitian ? FormKind::SkewHermitian : FormKind::Hermitian;
  return kind;
}

ScaledForm normalize_scale(const GramForm& f, const Lattice& S) {
  if (!f.is_nondegenerate()) throw Error(ErrorCode::DegenerateForm, "normalize_scale of a degenerate form");
  const Field& F = f.field();
  const std::int64_t v0 = min_valuation(F, f.gram_on(S.basis()));
  const std::int64_t m = v0 == kInfiniteValuation ? 0 : -v0;
  return ScaledForm{m, f.scaled(pi_power(F, m))};
}

std::pair<FormKind, FormKind> reduction_kinds(const Field& F, FormKind k) {
  if (F->involution_type() != InvolutionType::Ramified || !is_sesquilinear(k)) return {k, k};
  // conj is trivial on k: a hermitian Gram reduces to a symmetric one, and
  // a skew-hermitian one (diagonal in pi L) to an alternating one.
  if (k == FormKind::Hermitian) return {FormKind::Symmetric, FormKind::Alternating};
  return {FormKind::Alternating, FormKind::Symmetric};
}

KMatrix AdaptedBasis::t_basis() const {
  KMatrix t = basis;
  if (t.rows() == 0) return t;
  for (auto i : tilde_index) t.scale_col(i, field->uniformizer());
  return t;
}

AdaptedBasis adapted_basis(const Lattice& T, const GramForm& fp) {
  const Field& F = T.field();
  const std::size_t n = T.dim();
  AdaptedBasis ab;
  ab.field = F;
  if (n == 0) return ab;
  const KMatrix gram_t = fp.gram_on(T.basis());
  if (min_valuation(F, gram_t) != 0) throw Error(ErrorCode::PreconditionViolated, "f'(T,T) is not O");
  const Lattice dual = dual_lattice(T, fp);
  if (!dual.contains(T)) throw Error(ErrorCode::PreconditionViolated, "T is not contained in T*");
  if (!T.contains(dual.scaled(F->uniformizer())))
    throw Error(ErrorCode::PreconditionViolated, "lambda T* is not contained in T");
  const KMatrix c = inverse(dual.basis(), F->one()) * T.basis();
  const SnfResult r = snf(F, c);
  ab.basis = dual.basis() * inverse(r.u, F->one());
  ab.exps = r.exps;
  for (std::size_t i = 0; i < n; ++i) {
    if (ab.exps[i] == 1)
      ab.tilde_index.push_back(i);
    else if (ab.exps[i] == 0)
      ab.bar_index.push_back(i);
    else
      throw Error(ErrorCode::InternalInconsistency, "adapted exponent outside {0, 1}");
  }
  return ab;
}

namespace {

Reduction finish(const Field& F, const ResMatrix& gram, FormKind kind, const std::vector<std::size_t>& block_index,
                 const char* what) {
  Reduction red;
  red.form = ResidueForm{gram, gram.rows(), kind, kind};
  if (gram.rows() > 0) {
    red.kernel = nullspace(gram.transpose(), gram(0, 0));
  }
  red.block = ResidueForm{gram.submatrix(block_index, block_index), block_index.size(), kind, kind};
  if (red.kernel.size() + block_index.size() != gram.rows())
    throw Error(ErrorCode::InternalInconsistency, std::string(what) + ": kernel dimension disagrees with T*/T");
  if (!is_nondegenerate(red.block.gram))
    throw Error(ErrorCode::InternalInconsistency, std::string(what) + ": quotient form is degenerate");
  (void)F;
  return red;
}

}  // namespace

Reduction reduce_bar(const AdaptedBasis& ab, const GramForm& fp) {
  const Field& F = fp.field();
  const ResMatrix g = reduce(F, fp.gram_on(ab.t_basis()));
  return finish(F, g, reduction_kinds(F, fp.kind()).first, ab.bar_index, "reduce_bar");
}

Reduction reduce_tilde(const AdaptedBasis& ab, const GramForm& fp) {
  const Field& F = fp.field();
  const ResMatrix g = reduce(F, F->uniformizer() * fp.gram_on(ab.basis));
  return finish(F, g, reduction_kinds(F, fp.kind()).second, ab.tilde_index, "reduce_tilde");
}

Reduction reduce_bar(const Lattice& T, const GramForm& fp) { return reduce_bar(adapted_basis(T, fp), fp); }

Reduction reduce_tilde(const Lattice& T, const GramForm& fp) { return reduce_tilde(adapted_basis(T, fp), fp); }

ResidueForm assemble_f0(const Field& F, const ResidueForm& bar, const ResidueForm& tilde) {
  const FormKind kb = bar.bar_kind;
  const FormKind kt = tilde.bar_kind;
  const bool empty_side = bar.dim() == 0 || tilde.dim() == 0;
  if (kb != kt && !empty_side) {
    const bool legal = F->involution_type() == InvolutionType::Ramified &&
                       ((kb == FormKind::Symmetric && kt == FormKind::Alternating) ||
                        (kb == FormKind::Alternating && kt == FormKind::Symmetric));
    if (!legal) throw Error(ErrorCode::KindMismatch, "blocks of kinds " + to_string(kb) + " and " + to_string(kt));
  }
  ResidueForm f0;
  const ResidueElement zero(F->residue_field(), std::int64_t{0});
  f0.gram = block_diag(bar.gram, tilde.gram, zero);
  f0.s = bar.dim();
  f0.bar_kind = kb;
  f0.tilde_kind = kt;
  return f0;
}

}  // namespace ldesc
