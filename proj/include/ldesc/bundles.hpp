#pragma once

// Representation bundles: a form, generators and run options, plus the
// named constructions used throughout the tests and the CLI.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldesc/group.hpp"

namespace ldesc {

struct BundleOptions {
  std::size_t max_group_order = kDefaultMaxGroupOrder;
  int precision_start = 32;
  std::size_t enum_cap = 1000000;
};

struct Bundle {
  GramForm form;
  std::vector<KMatrix> generators;
  std::optional<KMatrix> lattice;  // starting lattice basis; default G-span of O^N
  BundleOptions options;
};

GroupRep make_group(const Bundle& b);

/// Q8 inside SL2 over Q(i) with the standard alternating form. ell must be
/// 1 mod 4 for a split prime; other odd ell give the inert case.
Bundle q8_bundle(std::int64_t ell, int prime_choice = 0);
/// Z/4 acting by i on K = Q(i), f(x, y) = x conj(y), ell = 3 mod 4.
Bundle z4_hermitian_bundle(std::int64_t ell = 7);
/// K the quadratic subfield of Q(zeta_ell), ramified over Q, with
/// hermitian f. odd_scale = false: f = <1> (+) pi J, unimodular on O^3;
/// odd_scale = true: f = pi J (+) <pi^2>, which needs an odd rescaling.
Bundle ramified_hermitian_bundle(std::int64_t ell, bool odd_scale);
/// M = Q(zeta_ell) over K = Q(zeta_ell + zeta_ell^-1) on the basis {1, zeta},
/// f(x, y) = tr_{M/K}(x conj(y)), G = mu_ell by multiplication.
Bundle prop5_bundle(std::int64_t ell);
/// Q8 x mu_ell on the tensor product of the two constructions above over
/// the conductor-4 ell field K = Q(i, zeta_ell + zeta_ell^-1).
Bundle prop6_bundle(std::int64_t ell);

GroupRep build_prop5_bundle(std::int64_t ell);
GroupRep build_prop6_bundle(std::int64_t ell);

// Descriptor of Q(zeta_ell + zeta_ell^-1) with the unique prime above ell.
Field real_cyclotomic_field(std::int64_t ell, int precision_start = 32);

}  // namespace ldesc
