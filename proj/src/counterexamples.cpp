#include "ldesc/counterexamples.hpp"

#include <algorithm>

#include "ldesc/bundles.hpp"
#include "ldesc/descent.hpp"
#include "ldesc/errors.hpp"

namespace ldesc {

std::uint64_t NonexistenceCertificate::count(const std::string& name) const {
  for (const auto& [k, v] : counts)
    if (k == name) return v;
  throw Error(ErrorCode::PreconditionViolated, "certificate has no count '" + name + "'");
}

bool NonexistenceCertificate::check(const std::string& name) const {
  for (const auto& [k, v] : checks)
    if (k == name) return v;
  throw Error(ErrorCode::PreconditionViolated, "certificate has no check '" + name + "'");
}

namespace {

void require_odd_prime(std::int64_t ell) {
  if (ell == 2) throw Error(ErrorCode::CharTwo, "characteristic 2 is excluded");
  if (ell < 3 || !fp::is_prime(ell)) throw Error(ErrorCode::PreconditionViolated, "ell must be an odd prime");
}

ResidueElement el(const ResidueFieldPtr& k, std::int64_t v) { return ResidueElement(k, fp::mod(v, k->characteristic())); }

FpMatrix fp_matrix(const ResidueFieldPtr& k, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<ResidueElement> d;
  std::size_t c = 0;
  for (const auto& row : rows) {
    c = row.size();
    for (auto v : row) d.push_back(el(k, v));
  }
  FpMatrix m;
  m.assign(rows.size(), c, std::move(d));
  return m;
}

FpMatrix fp_zero(const ResidueFieldPtr& k, std::size_t n) { return FpMatrix(n, n, el(k, 0)); }

FpMatrix fp_identity(const ResidueFieldPtr& k, std::size_t n) { return FpMatrix::identity(n, el(k, 1)); }

bool is_alternating(const FpMatrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (!x(i, i).is_zero()) return false;
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!(x(i, j) == -x(j, i))) return false;
  }
  return true;
}

bool is_symmetric(const FpMatrix& x) { return x == x.transpose(); }

bool nondegenerate(const FpMatrix& x) { return !determinant(x, el(x(0, 0).field(), 1)).is_zero(); }

// Solve sum_i t_i L(basis_i) = 0 where L is linear into matrices.
template <typename Op>
std::vector<FpMatrix> solve_linear(const std::vector<FpMatrix>& basis, std::size_t n_constraints, Op&& op) {
  if (basis.empty()) return {};
  const ResidueFieldPtr& k = basis[0](0, 0).field();
  std::vector<std::vector<ResidueElement>> images;
  for (const auto& b : basis) images.push_back(op(b));
  FpMatrix sys(n_constraints, basis.size(), el(k, 0));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n_constraints; ++i) sys(i, j) = images[j][i];
  std::vector<FpMatrix> out;
  for (const auto& v : nullspace(sys, el(k, 0))) {
    FpMatrix x = fp_zero(k, basis[0].rows());
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!v[j].is_zero()) x = x + v[j] * basis[j];
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<FpMatrix> closure(const std::vector<FpMatrix>& gens, std::size_t cap) {
  const ResidueFieldPtr& k = gens[0](0, 0).field();
  std::vector<FpMatrix> elems{fp_identity(k, gens[0].rows())};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      FpMatrix next = elems[head] * g;
      if (std::find(elems.begin(), elems.end(), next) == elems.end()) {
        if (elems.size() >= cap) throw Error(ErrorCode::GroupTooLarge, "finite closure exceeded its cap");
        elems.push_back(std::move(next));
      }
    }
  }
  return elems;
}

std::uint64_t element_order(const FpMatrix& a, std::uint64_t cap) {
  const FpMatrix one = fp_identity(a(0, 0).field(), a.rows());
  FpMatrix p = a;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (p == one) return k;
    p = p * a;
  }
  return 0;
}

std::uint64_t ipow_checked(std::uint64_t b, std::size_t e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > limit / b) return limit + 1;
    r *= b;
  }
  return r;
}

}  // namespace

ResidueFieldPtr prime_field(std::int64_t ell) { return std::make_shared<ResidueField>(ell, FpPoly{0, 1}); }

std::vector<FpMatrix> full_basis(const ResidueFieldPtr& k, std::size_t n) {
  std::vector<FpMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FpMatrix e = fp_zero(k, n);
      e(i, j) = el(k, 1);
      out.push_back(std::move(e));
    }
  return out;
}

std::vector<FpMatrix> alternating_basis(const ResidueFieldPtr& k, std::size_t n) {
  std::vector<FpMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      FpMatrix e = fp_zero(k, n);
      e(i, j) = el(k, 1);
      e(j, i) = el(k, -1);
      out.push_back(std::move(e));
    }
  return out;
}

std::vector<FpMatrix> invariant_forms(const std::vector<FpMatrix>& generators, const std::vector<FpMatrix>& basis) {
  if (basis.empty()) return {};
  const std::size_t n = basis[0].rows();
  return solve_linear(basis, generators.size() * n * n, [&](const FpMatrix& x) {
    std::vector<ResidueElement> v;
    for (const auto& g : generators) {
      const FpMatrix d = g.transpose() * x * g - x;
      v.insert(v.end(), d.data().begin(), d.data().end());
    }
    return v;
  });
}

std::vector<FpMatrix> commutant(const std::vector<FpMatrix>& generators) {
  const ResidueFieldPtr& k = generators[0](0, 0).field();
  const std::size_t n = generators[0].rows();
  return solve_linear(full_basis(k, n), generators.size() * n * n, [&](const FpMatrix& x) {
    std::vector<ResidueElement> v;
    for (const auto& g : generators) {
      const FpMatrix d = x * g - g * x;
      v.insert(v.end(), d.data().begin(), d.data().end());
    }
    return v;
  });
}

std::pair<FpMatrix, FpMatrix> q8_over_prime_field(std::int64_t ell) {
  require_odd_prime(ell);
  const ResidueFieldPtr k = prime_field(ell);
  const FpMatrix a = fp_matrix(k, {{0, -1}, {1, 0}});
  if (ell % 4 == 1) {
    // Reduce the Q(i) matrices at the chosen split prime.
    Field F = FieldDescriptor::make({4, ell, {1}, 0, std::nullopt, 32});
    const std::int64_t i = F->reduce(FieldElement::zeta_power(F->ring(), 1)).coeffs()[0];
    return {a, fp_matrix(k, {{i, 0}, {0, -i}})};
  }
  // i is not in F_ell; use b = [[x, y], [y, -x]] with x^2 + y^2 = -1.
  for (std::int64_t x = 0; x < ell; ++x)
    for (std::int64_t y = 0; y < ell; ++y)
      if (fp::mod(x * x + y * y + 1, ell) == 0) return {a, fp_matrix(k, {{x, y}, {y, -x}})};
  throw Error(ErrorCode::InternalInconsistency, "no solution of x^2 + y^2 = -1");
}

NonexistenceCertificate no_invariant_symmetric_form(std::int64_t ell) {
  require_odd_prime(ell);
  NonexistenceCertificate cert;
  cert.tag = "lemma";
  cert.ell = ell;
  cert.search_space = "symmetric 2x2 Gram matrices [[a,b],[b,c]] over F_ell";

  std::uint64_t candidates = 0, invariant = 0, nondeg = 0, both = 0;
  bool identities = true;
  for (std::int64_t a = 0; a < ell; ++a)
    for (std::int64_t b = 0; b < ell; ++b)
      for (std::int64_t c = 0; c < ell; ++c) {
        ++candidates;
        // g^T B g with g = [[1,1],[0,1]] is [[a, a+b], [a+b, a+2b+c]].
        const bool inv = fp::mod(a + b, ell) == b && fp::mod(a + 2 * b + c, ell) == c;
        const bool nd = fp::mod(a * c - b * b, ell) != 0;
        if (inv) {
          ++invariant;
          // u = e1 is fixed and v = e2 maps to u + v: f(u,u) = f(u,v) = 0.
          if (a != 0 || b != 0) identities = false;
        }
        if (nd) ++nondeg;
        if (inv && nd) ++both;
      }
  cert.counts = {{"candidates", candidates},
                 {"invariant", invariant},
                 {"nondegenerate", nondeg},
                 {"invariant_and_nondegenerate", both}};
  const auto ell_u = static_cast<std::uint64_t>(ell);
  cert.checks = {{"search_space_complete", candidates == ell_u * ell_u * ell_u},
                 {"invariant_forms_satisfy_f(u,u)=f(u,v)=0", identities},
                 {"no_invariant_nondegenerate_form", both == 0}};
  cert.verdict = std::all_of(cert.checks.begin(), cert.checks.end(), [](const auto& c) { return c.second; });
  return cert;
}

NonexistenceCertificate verify_prop5(std::int64_t ell) {
  require_odd_prime(ell);
  NonexistenceCertificate cert;
  cert.tag = "prop5";
  cert.ell = ell;
  cert.search_space = "GL_2(F_ell) for the normal form; symmetric 2x2 forms over F_ell";

  // Existence half over K = Q(zeta + zeta^-1).
  const Bundle bundle = prop5_bundle(ell);
  const GroupRep rep = make_group(bundle);
  const Field& F = rep.field();
  const GramForm& f = rep.form();
  const FieldElement zeta = FieldElement::zeta_power(F->ring(), 1);
  const auto cp = charpoly(F, rep.generators()[0]);
  // Eigenvalues zeta^{+-1} of the generator lie outside K, so no line is stable.
  FieldElement at_zeta = F->zero();
  for (std::size_t i = cp.size(); i-- > 0;) at_zeta = at_zeta * zeta + cp[i];
  const bool irreducible = at_zeta.is_zero() && !F->contains(zeta) && !F->contains(zeta.inverse());
  const DescentResult dr = descend(rep);

  // Normal form: every element of order ell in GL_2(F_ell) is a nonidentity
  // unipotent, conjugate to [[1,1],[0,1]].
  const ResidueFieldPtr k = prime_field(ell);
  const FpMatrix one = fp_identity(k, 2);
  const FpMatrix jordan = fp_matrix(k, {{1, 1}, {0, 1}});
  std::uint64_t gl2 = 0, order_ell = 0;
  bool unipotent = true, conjugate = true;
  for (std::int64_t a = 0; a < ell; ++a)
    for (std::int64_t b = 0; b < ell; ++b)
      for (std::int64_t c = 0; c < ell; ++c)
        for (std::int64_t d = 0; d < ell; ++d) {
          if (fp::mod(a * d - b * c, ell) == 0) continue;
          ++gl2;
          const FpMatrix m = fp_matrix(k, {{a, b}, {c, d}});
          if (element_order(m, static_cast<std::uint64_t>(ell)) != static_cast<std::uint64_t>(ell)) continue;
          ++order_ell;
          const FpMatrix n = m - one;
          if (!(n * n).is_zero() || n.is_zero()) unipotent = false;
          // Basis {n v, v} with n v != 0 puts m in Jordan form.
          FpMatrix v = fp_zero(k, 2);
          v(0, 0) = el(k, 1);
          if ((n * v).is_zero()) {
            v(0, 0) = el(k, 0);
            v(1, 0) = el(k, 1);
          }
          const FpMatrix nv = n * v;
          FpMatrix p = fp_zero(k, 2);
          p(0, 0) = nv(0, 0);
          p(1, 0) = nv(1, 0);
          p(0, 1) = v(0, 0);
          p(1, 1) = v(1, 0);
          auto pinv = try_inverse(p, el(k, 1));
          if (!pinv || !(*pinv * m * p == jordan)) conjugate = false;
        }

  const NonexistenceCertificate lemma = no_invariant_symmetric_form(ell);
  const auto ell_u = static_cast<std::uint64_t>(ell);
  cert.counts = {{"group_order", rep.order()},
                 {"ramification_index", static_cast<std::uint64_t>(F->ramification_index())},
                 {"gl2_elements", gl2},
                 {"order_ell_elements", order_ell},
                 {"lemma_candidates", lemma.count("candidates")},
                 {"lemma_invariant_and_nondegenerate", lemma.count("invariant_and_nondegenerate")}};
  cert.checks = {{"form_symmetric", satisfies(F, f.gram(), FormKind::Symmetric)},
                 {"form_nondegenerate", f.is_nondegenerate()},
                 {"form_invariant", std::all_of(rep.generators().begin(), rep.generators().end(),
                                                [&](const KMatrix& g) { return f.is_isometry(g); })},
                 {"faithful_of_order_ell", rep.order() == ell_u},
                 {"irreducible_over_K", irreducible},
                 {"descent_flags_2e_not_lt_ell_minus_1", !dr.certificates.hypothesis_2e_lt_ell_minus_1},
                 {"gl2_count", gl2 == (ell_u * ell_u - 1) * (ell_u * ell_u - ell_u)},
                 {"order_ell_elements_unipotent", unipotent && order_ell == ell_u * ell_u - 1},
                 {"order_ell_elements_conjugate_to_jordan_block", conjugate},
                 {"lemma", lemma.verdict}};
  cert.verdict = std::all_of(cert.checks.begin(), cert.checks.end(), [](const auto& c) { return c.second; });
  return cert;
}

NonexistenceCertificate verify_prop6(std::int64_t ell, std::uint64_t enum_cap) {
  require_odd_prime(ell);
  NonexistenceCertificate cert;
  cert.tag = "prop6";
  cert.ell = ell;
  cert.search_space = "(Q8 x mu_ell)-invariant alternating forms on W (+) W over F_ell";

  const ResidueFieldPtr k = prime_field(ell);
  const auto [a, b] = q8_over_prime_field(ell);
  const FpMatrix one2 = fp_identity(k, 2);
  const bool relations = a * a == -one2 && b * b == -one2 && a * b == -(b * a);
  const auto q8 = closure({a, b}, 64);

  // (a) Q8-invariant bilinear forms on W.
  const auto w_forms = invariant_forms({a, b}, full_basis(k, 2));
  const bool w_alternating =
      w_forms.size() == 1 && std::all_of(w_forms.begin(), w_forms.end(), [](const FpMatrix& x) { return is_alternating(x); });

  // (b) V0 = W (+) W with c(x, y) = (x + y, y).
  const FpMatrix a4 = block_diag(a, a, el(k, 0));
  const FpMatrix b4 = block_diag(b, b, el(k, 0));
  FpMatrix c4 = fp_identity(k, 4);
  for (std::size_t i = 0; i < 2; ++i) c4(i, i + 2) = el(k, 1);
  const auto ends = commutant({a4, b4});
  const bool c_commutes = c4 * a4 == a4 * c4 && c4 * b4 == b4 * c4;
  const bool c_order = element_order(c4, static_cast<std::uint64_t>(ell)) == static_cast<std::uint64_t>(ell);

  // (c) invariant alternating forms on V0.
  const auto v_forms = invariant_forms({a4, b4, c4}, alternating_basis(k, 4));
  const std::size_t d = v_forms.size();
  // Identity route: f((x,0),(y,0)) = 0 and h(x,y) = f((x,0),(0,y)) is both
  // symmetric and alternating, hence 0, so W (+) 0 lies in the radical.
  bool top_left_zero = true, h_symmetric = true, h_alternating = true;
  for (const auto& x : v_forms) {
    const FpMatrix tl = x.submatrix({0, 1}, {0, 1});
    const FpMatrix h = x.submatrix({0, 1}, {2, 3});
    if (!tl.is_zero()) top_left_zero = false;
    if (!is_symmetric(h)) h_symmetric = false;
    if (!is_alternating(h)) h_alternating = false;
  }
  const bool identity_route = top_left_zero && h_symmetric && h_alternating;

  const std::uint64_t space = ipow_checked(static_cast<std::uint64_t>(ell), d, enum_cap);
  const bool enumerated = space <= enum_cap;
  std::uint64_t examined = 0, nondeg = 0;
  if (enumerated) {
    std::vector<std::int64_t> digits(d, 0);
    for (std::uint64_t t = 0; t < space; ++t) {
      FpMatrix x = fp_zero(k, 4);
      for (std::size_t i = 0; i < d; ++i)
        if (digits[i]) x = x + el(k, digits[i]) * v_forms[i];
      ++examined;
      if (nondegenerate(x)) ++nondeg;
      for (std::size_t i = 0; i < d; ++i) {
        if (++digits[i] < ell) break;
        digits[i] = 0;
      }
    }
  }
  if (!enumerated && !identity_route)
    throw Error(ErrorCode::SearchSpaceTooLarge, "solution space too large and identity route inconclusive");

  // Existence half over K: the bundle itself and its characteristic polynomials.
  const GroupRep rep = build_prop6_bundle(ell);
  const auto ell_u = static_cast<std::uint64_t>(ell);
  std::uint64_t square_plus_one = 0, minus_one = 0;
  {
    const Field& F = rep.field();
    const FieldElement o = F->one(), z = F->zero(), two = F->integer(2);
    const std::vector<FieldElement> t2p1_sq{o, z, two, z, o};
    const std::vector<FieldElement> tp1_4{o, F->integer(4), F->integer(6), F->integer(4), o};
    for (const auto& e : rep.elements()) {
      const auto cp = charpoly(F, e.matrix);
      if (cp == t2p1_sq) ++square_plus_one;
      if (cp == tp1_4) ++minus_one;
    }
  }

  cert.counts = {{"ell", ell_u},
                 {"q8_order_over_F_ell", q8.size()},
                 {"w_invariant_forms_dim", w_forms.size()},
                 {"end_q8_dim", ends.size()},
                 {"invariant_alternating_dim", d},
                 {"solution_space_size", enumerated ? space : 0},
                 {"enumerated", examined},
                 {"nondegenerate_found", nondeg},
                 {"bundle_group_order", rep.order()},
                 {"charpoly_(t^2+1)^2", square_plus_one},
                 {"charpoly_(t+1)^4", minus_one}};
  cert.checks = {{"ell_coprime_to_q8_order", 8 % ell != 0},
                 {"q8_relations", relations},
                 {"q8_faithful_over_F_ell", q8.size() == 8},
                 {"w_invariant_forms_one_dim_alternating", w_alternating},
                 {"end_q8_is_m2", ends.size() == 4},
                 {"c_in_end_q8", c_commutes},
                 {"c_order_ell", c_order},
                 {"identity_route", identity_route},
                 {"enumeration_all_degenerate", !enumerated || nondeg == 0},
                 {"bundle_order_8_ell", rep.order() == 8 * ell_u},
                 {"six_elements_with_charpoly_(t^2+1)^2", square_plus_one == 6},
                 {"one_element_with_charpoly_(t+1)^4", minus_one == 1},
                 {"bundle_form_alternating", satisfies(rep.field(), rep.form().gram(), FormKind::Alternating)}};
  cert.verdict = std::all_of(cert.checks.begin(), cert.checks.end(), [](const auto& c) { return c.second; });
  return cert;
}

}  // namespace ldesc
