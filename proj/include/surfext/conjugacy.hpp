#pragma once

// Conjugacy questions for extendable actions.  Two extendable cyclic
// subgroups of the surface mapping class group are conjugate exactly when
// their standard-form classes coincide, so subgroup conjugacy is a class
// comparison.  Finer: two generators h^u and h of the same subgroup are
// conjugate exactly when the rescaling by the unit u preserves the gamma
// image data up to the per-point sign ambiguity of a loop and its reverse.

#include <algorithm>
#include <string>
#include <vector>

#include "cyclic.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "moves.hpp"
#include "orbifold.hpp"
#include "search.hpp"

namespace surfext {

struct GeneratorUnit {
  Int n = 0, u = 1;
};

/// Subgroup conjugacy: the standard-form class is a complete invariant.
inline bool subgroups_conjugate(const StandardFormClass& a, const StandardFormClass& b) {
  check_class(a);
  check_class(b);
  return a == b;
}

enum class SignRule {
  per_point,  // each gamma image may keep or flip its sign independently
  uniform,    // one global sign choice for every gamma image
};

/// Is the generator rescaling by the unit u realized by a conjugating
/// homeomorphism?  Criterion: u * gamma_k ≡ gamma_k or ≡ -gamma_k (mod n)
/// for every k, with the sign chosen per point (the reverse of a cone loop
/// is as good as the loop itself).  SignRule::uniform demands one global
/// sign instead; the two readings rarely disagree but are kept apart.
inline bool generators_conjugate(const OrbifoldSignature& sig, const EpimorphismSpec& spec,
                                 Int u, SignRule rule = SignRule::per_point) {
  require_valid(sig, spec);
  const Int n = spec.order;
  u = normalize_residue(n, u);
  if (!is_unit(n, u))
    throw NotAUnit("u = " + std::to_string(u) + " is not a unit mod " + std::to_string(n));
  bool all_keep = true, all_flip = true, each = true;
  for (Int c : spec.gamma) {
    Int uc = normalize_residue(n, checked_mul(u, c));
    bool keep = (uc == c);
    bool flip = (uc == normalize_residue(n, -c));
    all_keep = all_keep && keep;
    all_flip = all_flip && flip;
    each = each && (keep || flip);
  }
  return rule == SignRule::per_point ? each : (all_keep || all_flip);
}

/// Units where the per-point and uniform readings disagree.  Nonempty as soon
/// as some unit keeps one gamma value and can only flip another (smallest
/// case n=12, gamma = (4,8,3,9), u=5), so counts depend on the chosen rule.
inline std::vector<Int> sign_rule_disagreements(const OrbifoldSignature& sig,
                                                const EpimorphismSpec& spec) {
  std::vector<Int> out;
  for (Int u = 1; u < spec.order; ++u)
    if (is_unit(spec.order, u) &&
        generators_conjugate(sig, spec, u, SignRule::per_point) !=
            generators_conjugate(sig, spec, u, SignRule::uniform))
      out.push_back(u);
  return out;
}

/// The units accepted by generators_conjugate.  Always contains 1 and n-1.
inline std::vector<Int> accepted_units(const OrbifoldSignature& sig, const EpimorphismSpec& spec,
                                       SignRule rule = SignRule::per_point) {
  std::vector<Int> units;
  for (Int u = 1; u < spec.order; ++u)
    if (is_unit(spec.order, u) && generators_conjugate(sig, spec, u, rule)) units.push_back(u);
  return units;
}

/// Number of conjugacy classes of generators of the acting subgroup:
/// phi(n) / |U| where U is the accepted-unit set.  U is verified to be a
/// subgroup of the unit group before dividing.
inline Int count_generator_classes(const OrbifoldSignature& sig, const EpimorphismSpec& spec,
                                   SignRule rule = SignRule::per_point) {
  ExtendabilityVerdict v = check_extendable(sig, spec);
  if (!v.extendable)
    throw NotExtendable("generator class counting needs an extendable action");
  const Int n = spec.order;
  std::vector<Int> units = accepted_units(sig, spec, rule);
  std::vector<bool> in_set(static_cast<std::size_t>(n), false);
  for (Int u : units) in_set[static_cast<std::size_t>(u)] = true;
  if (!in_set[1])
    throw CriterionNotSubgroup("accepted units do not contain 1");
  for (Int a : units)
    for (Int b : units)
      if (!in_set[static_cast<std::size_t>(normalize_residue(n, checked_mul(a, b)))])
        throw CriterionNotSubgroup("accepted units are not closed under multiplication: " +
                                   std::to_string(a) + " * " + std::to_string(b));
  Int phi = euler_phi(n);
  if (phi % static_cast<Int>(units.size()) != 0)
    throw CriterionNotSubgroup("accepted-unit count does not divide phi(n)");
  return phi / static_cast<Int>(units.size());
}

enum class SemiDecision { yes, unknown };

namespace detail {

inline EpimorphismSpec scale_spec(const EpimorphismSpec& spec, Int u) {
  EpimorphismSpec out = spec;
  for (auto* vec : {&out.alpha, &out.beta, &out.gamma})
    for (Int& c : *vec) c = normalize_residue(spec.order, checked_mul(c, u));
  return out;
}

// Stable sort of the cone points by index so two presentations of the same
// orbifold become comparable; images travel with their points.
inline void sort_points(OrbifoldSignature& sig, EpimorphismSpec& spec) {
  std::vector<std::size_t> perm(sig.singular_indices.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return sig.singular_indices[a] < sig.singular_indices[b];
  });
  OrbifoldSignature nsig = sig;
  EpimorphismSpec nspec = spec;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    nsig.singular_indices[i] = sig.singular_indices[perm[i]];
    nspec.gamma[i] = spec.gamma[perm[i]];
  }
  sig = std::move(nsig);
  spec = std::move(nspec);
}

}  // namespace detail

/// Bounded search for a conjugacy between two arbitrary (possibly
/// non-extendable) actions: try every generator rescaling of the first and
/// search the move graph for the second, up to the given depth.  "yes" comes
/// with certainty; "unknown" only means the bound was too small.
inline SemiDecision conjugate_semidecision(OrbifoldSignature sig_a, EpimorphismSpec spec_a,
                                           OrbifoldSignature sig_b, EpimorphismSpec spec_b,
                                           Int depth) {
  require_valid(sig_a, spec_a);
  require_valid(sig_b, spec_b);
  if (spec_a.order != spec_b.order) return SemiDecision::unknown;
  if (sig_a.underlying_genus != sig_b.underlying_genus) return SemiDecision::unknown;
  if (sig_a.canonical_indices() != sig_b.canonical_indices()) return SemiDecision::unknown;
  detail::sort_points(sig_a, spec_a);
  detail::sort_points(sig_b, spec_b);
  for (Int u = 1; u < spec_a.order; ++u) {
    if (!is_unit(spec_a.order, u)) continue;
    if (bounded_move_search(sig_a, detail::scale_spec(spec_a, u), spec_b, depth))
      return SemiDecision::yes;
  }
  return SemiDecision::unknown;
}

}  // namespace surfext
