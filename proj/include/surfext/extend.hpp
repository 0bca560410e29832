#pragma once

// Deciding which finite cyclic actions on a closed orientable surface bound:
// the action of Z/n extends over the 3-sphere (with the surface embedded
// unknottedly enough to see it) exactly when
//
//   (a) the cone indices take at most two values p, q, and gcd(p, q) = 1;
//   (b) gamma images at equal-index points agree up to sign: for each index
//       the image multiset is contained in {x, -x} for a single x;
//   (c) the whole gamma multiset splits into pairs summing to 0 mod n.
//
// Extendable actions are classified by the discrete data
// (n, p, q, m, r, s1, s2) -- a StandardFormClass -- and every class is
// realized by an explicit standard action built from a double-rotation of
// round solid tori.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclic.hpp"
#include "errors.hpp"
#include "orbifold.hpp"

namespace surfext {

using Pairing = std::vector<std::pair<Int, Int>>;  // 1-based point indices

/// Perfect matching of the values into pairs summing to 0 mod n, if one
/// exists.  Deterministic: the lowest unpaired index is paired with the
/// lowest-index holder of the negated value.
inline std::optional<Pairing> inverse_pairing(Int n, const std::vector<Int>& values) {
  const std::size_t s = values.size();
  std::vector<bool> used(s, false);
  Pairing pairing;
  for (std::size_t i = 0; i < s; ++i) {
    if (used[i]) continue;
    Int want = normalize_residue(n, -values[i]);
    std::size_t j = i + 1;
    while (j < s && (used[j] || normalize_residue(n, values[j]) != want)) ++j;
    if (j == s) return std::nullopt;
    used[i] = used[j] = true;
    pairing.emplace_back(static_cast<Int>(i + 1), static_cast<Int>(j + 1));
  }
  return pairing;
}

struct ConditionResult {
  bool pass = false;
  std::string witness;
};

struct ExtendabilityVerdict {
  bool extendable = false;
  ConditionResult condition_a, condition_b, condition_c;
  std::optional<Pairing> pairing;  // present iff condition (c) passes

  std::vector<char> failed_conditions() const {
    std::vector<char> f;
    if (!condition_a.pass) f.push_back('a');
    if (!condition_b.pass) f.push_back('b');
    if (!condition_c.pass) f.push_back('c');
    return f;
  }
};

namespace detail {

template <typename Container>
inline std::string brace_list(const Container& c) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto v : c) {
    if (!first) os << ", ";
    os << v;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace detail

/// Evaluate all three extendability conditions on a valid action.  Every
/// condition is reported independently with a human-readable witness, so a
/// caller can see exactly which ones fail.
inline ExtendabilityVerdict check_extendable(const OrbifoldSignature& sig,
                                             const EpimorphismSpec& spec) {
  require_valid(sig, spec);
  const Int n = spec.order;
  ExtendabilityVerdict v;

  std::set<Int> distinct(sig.singular_indices.begin(), sig.singular_indices.end());
  if (distinct.size() > 2) {
    v.condition_a.pass = false;
    v.condition_a.witness =
        std::to_string(distinct.size()) + " distinct cone indices " + detail::brace_list(distinct);
  } else if (distinct.size() == 2) {
    Int p = *distinct.begin(), q = *std::next(distinct.begin());
    Int g = std::gcd(p, q);
    v.condition_a.pass = (g == 1);
    v.condition_a.witness = "indices " + detail::brace_list(distinct) +
                            (g == 1 ? " coprime" : " share factor " + std::to_string(g));
  } else {
    v.condition_a.pass = true;
    v.condition_a.witness = distinct.empty() ? "no cone points"
                                             : "single index value " +
                                                   std::to_string(*distinct.begin());
  }

  v.condition_b.pass = true;
  for (Int d : distinct) {
    std::set<Int> images;
    for (std::size_t j = 0; j < spec.gamma.size(); ++j)
      if (sig.singular_indices[j] == d) images.insert(spec.gamma[j]);
    bool ok = images.size() <= 1 ||
              (images.size() == 2 &&
               normalize_residue(n, *images.begin() + *std::next(images.begin())) == 0);
    if (!ok) {
      v.condition_b.pass = false;
      if (!v.condition_b.witness.empty()) v.condition_b.witness += "; ";
      v.condition_b.witness += "index " + std::to_string(d) + " images " +
                               detail::brace_list(images) + " not of the form {x, -x}";
    }
  }
  if (v.condition_b.pass)
    v.condition_b.witness = distinct.empty()
                                ? "no cone points"
                                : "images at equal-index points agree up to sign";

  v.pairing = inverse_pairing(n, spec.gamma);
  v.condition_c.pass = v.pairing.has_value();
  if (v.condition_c.pass) {
    std::ostringstream os;
    if (v.pairing->empty()) {
      os << "no cone points";
    } else {
      os << "pairing";
      for (auto [i, j] : *v.pairing) os << " (" << i << "," << j << ")";
    }
    v.condition_c.witness = os.str();
  } else {
    std::map<Int, Int> count;
    for (Int c : spec.gamma) ++count[c];
    std::ostringstream os;
    os << "no perfect inverse pairing:";
    for (auto [val, cnt] : count) {
      Int neg = normalize_residue(n, -val);
      if (neg == val ? (cnt % 2 != 0) : (cnt != count[neg]))
        os << " value " << val << " occurs " << cnt << "x, value " << neg << " occurs "
           << count[neg] << "x;";
    }
    v.condition_c.witness = os.str();
  }

  v.extendable = v.condition_a.pass && v.condition_b.pass && v.condition_c.pass;
  return v;
}

/// Complete conjugacy invariant of an extendable action.  For r = 0 the
/// order forces m = 1 and n = p*q; for r >= 1, n = m*p*q.  A lone index
/// value d is recorded as (p, q) = (1, d) and no cone points at all as
/// p = q = 1 (then s1 = s2 = 0 and the action is free).
struct StandardFormClass {
  Int n = 0, p = 1, q = 1, m = 1, r = 0, s1 = 0, s2 = 0;
  Int genus = 0;

  auto key() const { return std::tie(n, p, q, m, r, s1, s2); }
  friend bool operator==(const StandardFormClass& a, const StandardFormClass& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const StandardFormClass& a, const StandardFormClass& b) {
    return a.key() < b.key();
  }
};

inline void check_class(const StandardFormClass& c) {
  auto fail = [&](const std::string& why) {
    std::ostringstream os;
    os << "invalid class (n=" << c.n << ", p=" << c.p << ", q=" << c.q << ", m=" << c.m
       << ", r=" << c.r << ", s1=" << c.s1 << ", s2=" << c.s2 << "): " << why;
    throw InvalidClass(os.str());
  };
  if (c.n < 2) fail("order must be >= 2");
  if (c.p < 1 || c.q < 1 || c.m < 1 || c.r < 0 || c.s1 < 0 || c.s2 < 0)
    fail("negative or zero component");
  if (std::gcd(c.p, c.q) != 1) fail("p and q must be coprime");
  if (!(c.p < c.q || (c.p == 1 && c.q == 1))) fail("need p < q, or p = q = 1");
  if ((c.p == 1) != (c.s1 == 0)) fail("p = 1 exactly when s1 = 0");
  if ((c.q == 1) != (c.s2 == 0)) fail("q = 1 exactly when s2 = 0");
  if (c.r == 0 && c.m != 1) fail("r = 0 forces m = 1");
  if (checked_mul(checked_mul(c.m, c.p), c.q) != c.n) fail("n must equal m*p*q");
  // Riemann-Hurwitz: g - 1 = n(r-1) + s1*(n/p)(p-1) + s2*(n/q)(q-1).
  Int rhs = checked_mul(c.n, c.r - 1);
  rhs = checked_add(rhs, checked_mul(c.s1, checked_mul(c.n / c.p, c.p - 1)));
  rhs = checked_add(rhs, checked_mul(c.s2, checked_mul(c.n / c.q, c.q - 1)));
  if (c.genus != checked_add(rhs, 1)) fail("genus inconsistent with the other data");
}

/// Classify an extendable action.  Throws NotExtendable (with the failing
/// conditions) when check_extendable says no.
inline StandardFormClass canonical_class(const OrbifoldSignature& sig,
                                         const EpimorphismSpec& spec) {
  ExtendabilityVerdict v = check_extendable(sig, spec);
  if (!v.extendable) {
    std::string which;
    for (char c : v.failed_conditions()) {
      if (!which.empty()) which += ", ";
      which += std::string("(") + c + ")";
    }
    throw NotExtendable("action is not extendable: condition " + which + " fails");
  }
  StandardFormClass cls;
  cls.n = spec.order;
  cls.r = sig.underlying_genus;
  std::set<Int> distinct(sig.singular_indices.begin(), sig.singular_indices.end());
  Int count_p = 0, count_q = 0;
  if (distinct.size() == 2) {
    cls.p = *distinct.begin();
    cls.q = *std::next(distinct.begin());
  } else if (distinct.size() == 1) {
    cls.p = 1;
    cls.q = *distinct.begin();
  }
  for (Int d : sig.singular_indices) (d == cls.p ? count_p : count_q) += 1;
  if (cls.p == 1) count_p = 0;
  // Condition (c) pairs equal-index points, so both counts are even.
  cls.s1 = count_p / 2;
  cls.s2 = count_q / 2;
  cls.m = cls.n / checked_mul(cls.p, cls.q);
  cls.genus = quotient_genus(sig, cls.n);
  check_class(cls);
  return cls;
}

/// The standard model action in a class: quotient of genus r with 2*s1
/// points of index p and 2*s2 of index q, alpha = (1, 0, ..., 0), beta = 0,
/// and gamma images m*q (s1 times), -m*q (s1 times), m*p, -m*p likewise.
inline std::pair<OrbifoldSignature, EpimorphismSpec> standard_epimorphism(
    const StandardFormClass& cls) {
  check_class(cls);
  OrbifoldSignature sig;
  sig.underlying_genus = cls.r;
  EpimorphismSpec spec;
  spec.order = cls.n;
  if (cls.r >= 1) {
    spec.alpha.assign(static_cast<std::size_t>(cls.r), 0);
    spec.beta.assign(static_cast<std::size_t>(cls.r), 0);
    spec.alpha[0] = 1;
  }
  Int mq = checked_mul(cls.m, cls.q), mp = checked_mul(cls.m, cls.p);
  for (Int k = 0; k < cls.s1; ++k) sig.singular_indices.push_back(cls.p);
  for (Int k = 0; k < cls.s1; ++k) sig.singular_indices.push_back(cls.p);
  for (Int k = 0; k < cls.s2; ++k) sig.singular_indices.push_back(cls.q);
  for (Int k = 0; k < cls.s2; ++k) sig.singular_indices.push_back(cls.q);
  for (Int k = 0; k < cls.s1; ++k) spec.gamma.push_back(normalize_residue(cls.n, mq));
  for (Int k = 0; k < cls.s1; ++k) spec.gamma.push_back(normalize_residue(cls.n, -mq));
  for (Int k = 0; k < cls.s2; ++k) spec.gamma.push_back(normalize_residue(cls.n, mp));
  for (Int k = 0; k < cls.s2; ++k) spec.gamma.push_back(normalize_residue(cls.n, -mp));
  return {std::move(sig), std::move(spec)};
}

/// All classes with the given covering genus, sorted by
/// (n, p, q, m, r, s1, s2) and free of duplicates.  For g >= 2 the order is
/// bounded (n <= 84(g-1) is a safe cap); for g = 1 the free classes form an
/// infinite family, so max_order is mandatory there.
inline std::vector<StandardFormClass> enumerate_atlas(
    Int g, std::optional<Int> max_order = std::nullopt) {
  if (g < 1) throw PreconditionViolated("atlas needs genus >= 1");
  if (max_order && *max_order < 2)
    throw PreconditionViolated("max_order must be >= 2");
  Int cap;
  if (g == 1) {
    if (!max_order)
      throw UncappedInfiniteFamily(
          "genus 1 admits free actions of every order; pass max_order to bound the atlas");
    cap = *max_order;
  } else {
    cap = checked_mul(84, g - 1);
    if (max_order && *max_order < cap) cap = *max_order;
  }

  std::set<StandardFormClass> found;
  for (Int n = 2; n <= cap; ++n) {
    std::vector<Int> divs;
    for (Int d = 1; checked_mul(d, d) <= n; ++d) {
      if (n % d != 0) continue;
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
    std::sort(divs.begin(), divs.end());
    // Factor n = m*p*q over canonical coprime (p, q); p < q bounds p by sqrt(n).
    for (Int p : divs) {
      if (p > 1 && p * p > n) break;
      for (Int q : divs) {
        if ((n / p) % q != 0) continue;
        if (p > 1 && q <= p) continue;
        if (std::gcd(p, q) != 1) continue;
        if (p > 1 && q == 1) continue;
        Int m = n / (p * q);
        Int u = (p > 1) ? (n / p) * (p - 1) : 0;  // cone-point contribution of index p
        Int w = (q > 1) ? (n / q) * (q - 1) : 0;
        for (Int r = 0;; ++r) {
          Int rhs = g - 1 - checked_mul(n, r - 1);  // = s1*u + s2*w
          if (rhs < 0) break;
          if (r == 0 && m != 1) continue;
          auto emit = [&](Int s1, Int s2) {
            StandardFormClass cls{n, p, q, m, r, s1, s2, g};
            check_class(cls);
            found.insert(cls);
          };
          if (p == 1 && q == 1) {
            if (rhs == 0 && r >= 1) emit(0, 0);
          } else if (p == 1) {
            if (rhs >= w && rhs % w == 0) emit(0, rhs / w);
          } else {
            for (Int s1 = 1; checked_mul(s1, u) <= rhs - w; ++s1) {
              Int rem = rhs - s1 * u;
              if (rem % w == 0 && rem / w >= 1) emit(s1, rem / w);
            }
          }
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

/// Data of the standard embedded picture that realizes a class inside the
/// 3-sphere, viewed as the unit sphere in C^2 rotated by
/// (z1, z2) -> (e^{2*pi*i/(m*q)} z1, e^{2*pi*i/(m*p)} z2).
struct OrbitCount {
  Int count = 0, orbit_size = 0;
  friend bool operator==(const OrbitCount&, const OrbitCount&) = default;
};

struct EmbeddingRecipe {
  StandardFormClass cls;
  std::pair<Int, Int> rotation;  // angle denominators (m*q, m*p)
  std::vector<OrbitCount> vertex_orbits, edge_orbits;
  Int added_handles_per_point = 0;     // r - 1 extra handles at each free base point
  std::optional<Int> graph_beta1;      // spine Betti number; r = 0 case only
};

/// For r = 0 the surface is the boundary of a neighborhood of an embedded
/// graph: one free vertex orbit of size p*q joined to s1 orbits of size q on
/// one rotation axis and s2 orbits of size p on the other, with a free edge
/// orbit per cone-point orbit.  Its Betti number must reproduce the genus.
/// For r >= 1 the graph is replaced by an invariant torus with s1 + s2
/// orbits of tubes to the axes and r - 1 handles added along one free orbit.
inline EmbeddingRecipe embedding_recipe(const StandardFormClass& cls) {
  check_class(cls);
  EmbeddingRecipe rec;
  rec.cls = cls;
  rec.rotation = {checked_mul(cls.m, cls.q), checked_mul(cls.m, cls.p)};
  if (cls.r == 0) {
    Int pq = cls.p * cls.q;  // = n
    rec.vertex_orbits.push_back({1, pq});
    if (cls.s1 > 0) rec.vertex_orbits.push_back({cls.s1, cls.q});
    if (cls.s2 > 0) rec.vertex_orbits.push_back({cls.s2, cls.p});
    rec.edge_orbits.push_back({cls.s1 + cls.s2, pq});
    Int vertices = pq + cls.s1 * cls.q + cls.s2 * cls.p;
    Int edges = (cls.s1 + cls.s2) * pq;
    rec.graph_beta1 = graph_beta1(vertices, edges, 1);
    if (*rec.graph_beta1 != cls.genus)
      throw Error("embedding recipe: spine Betti number " + std::to_string(*rec.graph_beta1) +
                  " disagrees with genus " + std::to_string(cls.genus));
    rec.added_handles_per_point = 0;
  } else {
    if (cls.s1 > 0) {
      rec.vertex_orbits.push_back({cls.s1, cls.n / cls.p});  // axis ends, size m*q
      rec.edge_orbits.push_back({cls.s1, cls.n});
    }
    if (cls.s2 > 0) {
      rec.vertex_orbits.push_back({cls.s2, cls.n / cls.q});  // axis ends, size m*p
      rec.edge_orbits.push_back({cls.s2, cls.n});
    }
    if (cls.s1 + cls.s2 > 0)
      rec.vertex_orbits.push_back({cls.s1 + cls.s2, cls.n});  // free tube feet on the torus
    rec.added_handles_per_point = cls.r - 1;
  }
  return rec;
}

}  // namespace surfext
