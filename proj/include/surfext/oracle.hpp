#pragma once

// Slow, obviously-correct re-implementations of the library's decisions,
// plus the agreement suites that pit them against the fast paths.
//
// The naive section deliberately shares no arithmetic with the rest of the
// library: orders are found by repeated addition, units by scanning for an
// inverse, surjectivity by flooding subgroup closure.  If a fast path and
// its oracle ever disagree, believe the oracle and fix the fast path.
//
// The suite-driver section below is ordinary test machinery and is free to
// call both sides; that is its whole purpose.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "conjugacy.hpp"
#include "cyclic.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "lens.hpp"
#include "moves.hpp"
#include "orbifold.hpp"
#include "search.hpp"

namespace surfext {
namespace oracle {

struct OracleCaps {
  Int max_n = 30;                // modulus ceiling for exhaustive enumeration
  Int max_tuples = 20'000'000;   // backtracking-leaf budget per signature
  Int max_depth = 16;            // BFS depth bound
  Int max_states = 4'000'000;    // BFS visited-state budget
};

// ---------------------------------------------------------------------------
// Naive arithmetic.  No calls into the fast paths.

inline Int naive_norm(Int n, Int x) {
  Int r = x % n;
  return r < 0 ? r + n : r;
}

inline Int naive_order(Int n, Int c) {
  c = naive_norm(n, c);
  if (c == 0) return 1;
  Int acc = c, k = 1;
  while (acc != 0) {
    acc += c;
    if (acc >= n) acc -= n;
    ++k;
  }
  return k;
}

inline bool naive_is_unit(Int n, Int u) {
  u = naive_norm(n, u);
  for (Int v = 1; v < n; ++v)
    if ((u * v) % n == 1) return true;
  return n == 1;
}

/// Membership table of the subgroup generated by gens, by flooding.
inline std::vector<bool> subgroup_closure(Int n, const std::vector<Int>& gens) {
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  in[0] = true;
  std::vector<Int> stack{0};
  while (!stack.empty()) {
    Int x = stack.back();
    stack.pop_back();
    for (Int g : gens) {
      Int y = x + naive_norm(n, g);
      if (y >= n) y -= n;
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = true;
        stack.push_back(y);
      }
    }
  }
  return in;
}

/// Validity re-implemented from the definitions.
inline bool naive_spec_valid(const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
  const Int n = spec.order;
  if (n < 2) return false;
  if (spec.alpha.size() != static_cast<std::size_t>(sig.r()) ||
      spec.beta.size() != static_cast<std::size_t>(sig.r()) ||
      spec.gamma.size() != static_cast<std::size_t>(sig.s()))
    throw PreconditionViolated("oracle got a mis-shaped spec");
  Int sum = 0;
  for (Int c : spec.gamma) {
    sum += naive_norm(n, c);
    if (sum >= n) sum -= n;
  }
  if (sum != 0) return false;
  for (std::size_t j = 0; j < spec.gamma.size(); ++j)
    if (naive_order(n, spec.gamma[j]) != sig.singular_indices[j]) return false;
  std::vector<Int> gens;
  for (const auto* vec : {&spec.alpha, &spec.beta, &spec.gamma})
    gens.insert(gens.end(), vec->begin(), vec->end());
  std::vector<bool> in = subgroup_closure(n, gens);
  for (bool b : in)
    if (!b) return false;
  return true;
}

/// Every valid image tuple on the signature, by exhaustive backtracking with
/// per-position pruning (gamma entries must have the exact cone order and
/// the last one is forced by the relation).  Output is lexicographically
/// ordered over (alpha, beta, gamma).
inline std::vector<EpimorphismSpec> brute_force_epimorphisms(const OrbifoldSignature& sig, Int n,
                                                             const OracleCaps& caps = {}) {
  check_signature(sig);
  if (n < 2) throw PreconditionViolated("need group order >= 2");
  if (n > caps.max_n)
    throw BudgetExceeded("order " + std::to_string(n) + " above oracle cap " +
                         std::to_string(caps.max_n));
  const std::size_t r = static_cast<std::size_t>(sig.r()), s = sig.singular_indices.size();
  std::vector<Int> order_of(static_cast<std::size_t>(n));
  for (Int c = 0; c < n; ++c) order_of[static_cast<std::size_t>(c)] = naive_order(n, c);
  std::vector<std::vector<Int>> cand(s);
  for (std::size_t j = 0; j < s; ++j)
    for (Int c = 0; c < n; ++c)
      if (order_of[static_cast<std::size_t>(c)] == sig.singular_indices[j]) cand[j].push_back(c);

  std::vector<EpimorphismSpec> out;
  EpimorphismSpec cur;
  cur.order = n;
  cur.alpha.assign(r, 0);
  cur.beta.assign(r, 0);
  cur.gamma.assign(s, 0);
  Int visited = 0;

  auto finish = [&]() {
    if (++visited > caps.max_tuples)
      throw BudgetExceeded("oracle enumeration exceeded " + std::to_string(caps.max_tuples) +
                           " tuples");
    std::vector<Int> gens;
    for (const auto* vec : {&cur.alpha, &cur.beta, &cur.gamma})
      gens.insert(gens.end(), vec->begin(), vec->end());
    for (bool b : subgroup_closure(n, gens))
      if (!b) return;
    out.push_back(cur);
  };

  auto gammas = [&](auto&& self, std::size_t j, Int sum) -> void {
    if (s == 0) {
      finish();
      return;
    }
    if (j == s - 1) {
      Int needed = naive_norm(n, -sum);
      if (order_of[static_cast<std::size_t>(needed)] == sig.singular_indices[j]) {
        cur.gamma[j] = needed;
        finish();
      }
      return;
    }
    for (Int c : cand[j]) {
      cur.gamma[j] = c;
      Int ns = sum + c;
      if (ns >= n) ns -= n;
      self(self, j + 1, ns);
    }
  };
  auto handles = [&](auto&& self, std::size_t i) -> void {
    if (i == 2 * r) {
      gammas(gammas, 0, 0);
      return;
    }
    Int& slot = i < r ? cur.alpha[i] : cur.beta[i - r];
    for (Int c = 0; c < n; ++c) {
      slot = c;
      self(self, i + 1);
    }
    slot = 0;
  };
  handles(handles, 0);
  return out;
}

/// Exhaustive search for a perfect pairing of values summing to 0 mod n.
inline std::optional<Pairing> brute_force_matching(Int n, const std::vector<Int>& values) {
  const std::size_t s = values.size();
  std::vector<bool> used(s, false);
  Pairing pairing;
  auto rec = [&](auto&& self) -> bool {
    std::size_t i = 0;
    while (i < s && used[i]) ++i;
    if (i == s) return true;
    used[i] = true;
    for (std::size_t j = i + 1; j < s; ++j) {
      if (used[j]) continue;
      if (naive_norm(n, naive_norm(n, values[i]) + naive_norm(n, values[j])) != 0) continue;
      used[j] = true;
      pairing.emplace_back(static_cast<Int>(i + 1), static_cast<Int>(j + 1));
      if (self(self)) return true;
      pairing.pop_back();
      used[j] = false;
    }
    used[i] = false;
    return false;
  };
  if (rec(rec)) return pairing;
  return std::nullopt;
}

/// All units mod n accepted by a predicate, units found by inverse scan.
template <typename Pred>
inline std::vector<Int> brute_force_units(Int n, Pred&& accept) {
  if (n < 2) throw PreconditionViolated("brute_force_units needs n >= 2");
  std::vector<Int> out;
  for (Int u = 1; u < n; ++u)
    if (naive_is_unit(n, u) && accept(u)) out.push_back(u);
  return out;
}

enum class OrbitSearch { reachable, not_within_depth };

struct OrbitResult {
  OrbitSearch outcome = OrbitSearch::not_within_depth;
  Int depth = -1;
};

/// Breadth-first reachability in the move graph, bounded by depth.
inline OrbitResult bfs_orbit(const OrbifoldSignature& sig, const EpimorphismSpec& from,
                             const EpimorphismSpec& to, Int depth, const OracleCaps& caps = {}) {
  SearchCaps sc;
  sc.max_depth = depth;
  sc.max_states = caps.max_states;
  SearchOutcome o = move_search(sig, from, to, sc);
  if (o.reachable) return {OrbitSearch::reachable, o.depth};
  return {OrbitSearch::not_within_depth, -1};
}

// ---------------------------------------------------------------------------
// Suite machinery.  This half freely mixes fast paths and oracles: the whole
// point is to make them face each other.

struct SuiteReport {
  std::string name;
  Int checks = 0;
  Int failure_count = 0;
  std::vector<std::string> failures;  // first few only

  SuiteReport() = default;
  explicit SuiteReport(std::string suite) : name(std::move(suite)) {}

  bool passed() const { return failure_count == 0; }
  void fail(const std::string& what) {
    ++failure_count;
    if (failures.size() < 16) failures.push_back(what);
  }
};

/// Sorted multisets (ascending) of divisors >= 2 of n, of size <= max_s.
inline std::vector<std::vector<Int>> divisor_multisets(Int n, Int max_s) {
  std::vector<Int> divs;
  for (Int d = 2; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    out.push_back(cur);
    if (static_cast<Int>(cur.size()) == max_s) return;
    for (std::size_t i = from; i < divs.size(); ++i) {
      cur.push_back(divs[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Signatures (any r, indices dividing n) whose covering genus is exactly g.
inline std::vector<OrbifoldSignature> signatures_with_genus(Int n, Int g) {
  std::vector<Int> divs;
  for (Int d = 2; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::vector<OrbifoldSignature> out;
  for (Int r = 0;; ++r) {
    // 2g - 2 = n(2r - 2) + sum_k (n - n/n_k); solve for the cone multiset.
    Int target = 2 * g - 2 - n * (2 * r - 2);
    if (target < 0) break;
    std::vector<Int> cur;
    auto rec = [&](auto&& self, std::size_t from, Int remaining) -> void {
      if (remaining == 0) {
        out.push_back({r, cur});
        return;
      }
      for (std::size_t i = from; i < divs.size(); ++i) {
        Int w = n - n / divs[i];
        if (w > remaining) continue;
        cur.push_back(divs[i]);
        self(self, i, remaining - w);
        cur.pop_back();
      }
    };
    rec(rec, 0, target);
  }
  return out;
}

/// Fast-path twin of brute_force_epimorphisms for suites that only need the
/// spec list, not an independent check of it.
inline std::vector<EpimorphismSpec> enumerate_valid_specs(const OrbifoldSignature& sig, Int n,
                                                          const OracleCaps& caps = {}) {
  check_signature(sig);
  const std::size_t r = static_cast<std::size_t>(sig.r()), s = sig.singular_indices.size();
  std::vector<std::vector<Int>> cand(s);
  for (std::size_t j = 0; j < s; ++j)
    for (Int c = 0; c < n; ++c)
      if (elem_order(n, c) == sig.singular_indices[j]) cand[j].push_back(c);
  std::vector<EpimorphismSpec> out;
  EpimorphismSpec cur;
  cur.order = n;
  cur.alpha.assign(r, 0);
  cur.beta.assign(r, 0);
  cur.gamma.assign(s, 0);
  Int visited = 0;

  auto finish = [&]() {
    if (++visited > caps.max_tuples)
      throw BudgetExceeded("spec enumeration exceeded the tuple budget");
    Int g = n;
    for (const auto* vec : {&cur.alpha, &cur.beta, &cur.gamma})
      for (Int c : *vec) g = std::gcd(g, c);
    if (g == 1) out.push_back(cur);
  };
  auto gammas = [&](auto&& self, std::size_t j, Int sum) -> void {
    if (s == 0) {
      finish();
      return;
    }
    if (j == s - 1) {
      Int needed = normalize_residue(n, -sum);
      if (elem_order(n, needed) == sig.singular_indices[j]) {
        cur.gamma[j] = needed;
        finish();
      }
      return;
    }
    for (Int c : cand[j]) {
      cur.gamma[j] = c;
      self(self, j + 1, (sum + c) % n);
    }
  };
  auto handles = [&](auto&& self, std::size_t i) -> void {
    if (i == 2 * r) {
      gammas(gammas, 0, 0);
      return;
    }
    Int& slot = i < r ? cur.alpha[i] : cur.beta[i - r];
    for (Int c = 0; c < n; ++c) {
      slot = c;
      self(self, i + 1);
    }
    slot = 0;
  };
  handles(handles, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Agreement suites.

/// inverse_pairing vs exhaustive matching over every realizable gamma tuple
/// with small order and point count.
inline SuiteReport run_matching_suite(Int max_n = 12, Int max_s = 6) {
  SuiteReport rep{"matching"};
  for (Int n = 2; n <= max_n; ++n) {
    for (const auto& indices : divisor_multisets(n, max_s)) {
      const std::size_t s = indices.size();
      std::vector<std::vector<Int>> cand(s);
      for (std::size_t j = 0; j < s; ++j)
        for (Int c = 0; c < n; ++c)
          if (elem_order(n, c) == indices[j]) cand[j].push_back(c);
      std::vector<Int> gamma(s, 0);
      auto consider = [&]() {
        ++rep.checks;
        auto fast = inverse_pairing(n, gamma);
        auto slow = brute_force_matching(n, gamma);
        auto describe = [&]() {
          std::ostringstream os;
          os << "n=" << n << " gamma=(";
          for (std::size_t j = 0; j < s; ++j) os << (j ? "," : "") << gamma[j];
          os << ")";
          return os.str();
        };
        if (fast.has_value() != slow.has_value()) {
          rep.fail("pairing existence disagrees at " + describe());
          return;
        }
        if (!fast) return;
        auto canon = [&](const Pairing& pr) {
          std::multiset<std::pair<Int, Int>> val;
          for (auto [i, j] : pr) {
            Int x = gamma[static_cast<std::size_t>(i - 1)], y = gamma[static_cast<std::size_t>(j - 1)];
            val.insert({std::min(x, y), std::max(x, y)});
          }
          return val;
        };
        for (const Pairing* pr : {&*fast, &*slow}) {
          std::vector<bool> used(s, false);
          for (auto [i, j] : *pr) {
            if (i < 1 || j < 1 || i > static_cast<Int>(s) || j > static_cast<Int>(s) || i == j ||
                used[static_cast<std::size_t>(i - 1)] || used[static_cast<std::size_t>(j - 1)] ||
                normalize_residue(n, gamma[static_cast<std::size_t>(i - 1)] +
                                         gamma[static_cast<std::size_t>(j - 1)]) != 0) {
              rep.fail("malformed pairing at " + describe());
              return;
            }
            used[static_cast<std::size_t>(i - 1)] = used[static_cast<std::size_t>(j - 1)] = true;
          }
        }
        if (canon(*fast) != canon(*slow))
          rep.fail("pairings use different value pairs at " + describe());
      };
      auto rec = [&](auto&& self, std::size_t j, Int sum) -> void {
        if (j == s) {
          if (sum == 0) consider();
          return;
        }
        for (Int c : cand[j]) {
          gamma[j] = c;
          self(self, j + 1, (sum + c) % n);
        }
      };
      rec(rec, 0, 0);
    }
  }
  return rep;
}

/// Constructive alignment unit vs brute-force unit scan.
inline SuiteReport run_align_suite(Int max_modulus = 200) {
  SuiteReport rep{"align"};
  for (Int n = 2; n <= max_modulus; ++n) {
    std::vector<Int> order_of(static_cast<std::size_t>(n));
    for (Int c = 0; c < n; ++c) order_of[static_cast<std::size_t>(c)] = naive_order(n, c);
    std::vector<Int> units = brute_force_units(n, [](Int) { return true; });
    for (Int p = 1; p <= n; ++p) {
      if (n % p != 0) continue;
      for (Int q = 1; p * q <= n; ++q) {
        if ((n / p) % q != 0 || std::gcd(p, q) != 1) continue;
        Int m = n / (p * q);
        Int t1 = (m * q) % n, t2 = (m * p) % n;
        for (Int a = 0; a < n; ++a) {
          if (order_of[static_cast<std::size_t>(a)] != p) continue;
          for (Int b = 0; b < n; ++b) {
            if (order_of[static_cast<std::size_t>(b)] != q) continue;
            ++rep.checks;
            std::vector<Int> good;
            for (Int u : units)
              if ((u * a) % n == t1 && (u * b) % n == t2) good.push_back(u);
            Int u = 0;
            try {
              u = align_automorphism(m, p, q, a, b);
            } catch (const Error& e) {
              rep.fail("align_automorphism threw for m=" + std::to_string(m) + " p=" +
                       std::to_string(p) + " q=" + std::to_string(q) + " a=" + std::to_string(a) +
                       " b=" + std::to_string(b) + ": " + e.what());
              continue;
            }
            if (good.empty()) {
              rep.fail("scan found no unit but construction returned " + std::to_string(u) +
                       " (m=" + std::to_string(m) + " p=" + std::to_string(p) + " q=" +
                       std::to_string(q) + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                       ")");
              continue;
            }
            if (std::find(good.begin(), good.end(), u) == good.end())
              rep.fail("constructed u=" + std::to_string(u) + " not among scanned units (m=" +
                       std::to_string(m) + " p=" + std::to_string(p) + " q=" + std::to_string(q) +
                       " a=" + std::to_string(a) + " b=" + std::to_string(b) + ")");
          }
        }
      }
    }
  }
  return rep;
}

namespace detail {

inline std::string spec_string(const EpimorphismSpec& spec) {
  std::ostringstream os;
  os << "n=" << spec.order << " a=(";
  for (std::size_t i = 0; i < spec.alpha.size(); ++i) os << (i ? "," : "") << spec.alpha[i];
  os << ") b=(";
  for (std::size_t i = 0; i < spec.beta.size(); ++i) os << (i ? "," : "") << spec.beta[i];
  os << ") g=(";
  for (std::size_t i = 0; i < spec.gamma.size(); ++i) os << (i ? "," : "") << spec.gamma[i];
  os << ")";
  return os.str();
}

// Flood the entire move orbit of start, tagging states with an id.
inline void flood_component(const OrbifoldSignature& sig, const EpimorphismSpec& start,
                            std::unordered_map<std::uint64_t, int>& comp_of, int id,
                            const OracleCaps& caps) {
  if (!surfext::detail::packable(sig, start.order))
    throw BudgetExceeded("orbit flood needs a packable state space");
  std::deque<EpimorphismSpec> queue;
  comp_of[surfext::detail::pack_state(start)] = id;
  queue.push_back(start);
  while (!queue.empty()) {
    EpimorphismSpec spec = std::move(queue.front());
    queue.pop_front();
    for (const Move& mv : candidate_moves(sig, spec)) {
      // Mutate in place, copy only if the state is new, then undo.  Cuts the
      // flood from one heap copy per edge to one per state.
      surfext::detail::apply_move_inplace(sig, spec, mv);
      auto key = surfext::detail::pack_state(spec);
      if (comp_of.emplace(key, id).second) {
        if (static_cast<Int>(comp_of.size()) > caps.max_states)
          throw BudgetExceeded("orbit flood exceeded the state budget");
        queue.push_back(spec);
      }
      surfext::detail::apply_move_inplace(sig, spec, inverse_move(mv));
    }
  }
}

}  // namespace detail

/// normalize vs the move graph: the output must be in normal form, the
/// script must replay to it, and the result must sit in the same orbit
/// component as the input (checked by exhaustive flooding, not by trusting
/// the script).
inline SuiteReport run_normalize_suite(Int max_n = 8, Int max_r = 2, Int max_s = 4,
                                       const OracleCaps& caps = {}) {
  SuiteReport rep{"normalize"};
  for (Int n = 2; n <= max_n; ++n) {
    for (Int r = 0; r <= max_r; ++r) {
      for (const auto& indices : divisor_multisets(n, max_s)) {
        OrbifoldSignature sig{r, indices};
        std::vector<EpimorphismSpec> specs = enumerate_valid_specs(sig, n, caps);
        if (specs.empty()) continue;
        std::unordered_map<std::uint64_t, int> comp_of;
        int next_id = 0;
        for (const EpimorphismSpec& spec : specs) {
          auto key = surfext::detail::pack_state(spec);
          if (!comp_of.count(key)) detail::flood_component(sig, spec, comp_of, next_id++, caps);
        }
        for (const EpimorphismSpec& spec : specs) {
          ++rep.checks;
          NormalizeResult norm;
          try {
            norm = normalize(sig, spec);
          } catch (const Error& e) {
            rep.fail("normalize threw at " + detail::spec_string(spec) + ": " + e.what());
            continue;
          }
          bool shape_ok = norm.spec.gamma == spec.gamma && norm.spec.order == n;
          for (Int i = 1; i <= r && shape_ok; ++i) {
            shape_ok = norm.spec.alpha[static_cast<std::size_t>(i - 1)] == (i == 1 ? 1 : 0) &&
                       norm.spec.beta[static_cast<std::size_t>(i - 1)] == 0;
          }
          if (!shape_ok) {
            rep.fail("normal form malformed at " + detail::spec_string(spec));
            continue;
          }
          if (apply_script(sig, spec, norm.script) != norm.spec) {
            rep.fail("script replay mismatch at " + detail::spec_string(spec));
            continue;
          }
          auto it = comp_of.find(surfext::detail::pack_state(norm.spec));
          if (it == comp_of.end() || it->second != comp_of.at(surfext::detail::pack_state(spec)))
            rep.fail("normal form not reachable in the move graph from " +
                     detail::spec_string(spec));
        }
      }
    }
  }
  return rep;
}

/// Atlas completeness: sweep every signature and every valid tuple of small
/// order; each extendable action found must classify into the atlas.
inline SuiteReport run_atlas_suite(Int max_genus = 6, const OracleCaps& caps = {}) {
  SuiteReport rep{"atlas"};
  for (Int g = 1; g <= max_genus; ++g) {
    Int sweep_cap = 4 * g + 2;
    std::vector<StandardFormClass> atlas =
        g == 1 ? enumerate_atlas(g, sweep_cap) : enumerate_atlas(g);
    std::set<StandardFormClass> atlas_set(atlas.begin(), atlas.end());
    for (Int n = 2; n <= sweep_cap; ++n) {
      for (const OrbifoldSignature& sig : signatures_with_genus(n, g)) {
        for (const EpimorphismSpec& spec : brute_force_epimorphisms(sig, n, caps)) {
          ++rep.checks;
          ExtendabilityVerdict v = check_extendable(sig, spec);
          if (!v.extendable) continue;
          StandardFormClass cls = canonical_class(sig, spec);
          if (!atlas_set.count(cls))
            rep.fail("extendable action missing from atlas(" + std::to_string(g) + "): " +
                     detail::spec_string(spec));
        }
      }
    }
  }
  return rep;
}

/// validate vs the subgroup-flooding re-implementation: exhaustive on tiny
/// parameters, seeded-random beyond.
inline SuiteReport run_validate_suite(Int max_n = 30, Int max_s = 6, Int samples = 60) {
  SuiteReport rep{"validate"};
  auto compare = [&](const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
    ++rep.checks;
    bool fast = validate(sig, spec).valid;
    bool lean = spec_valid(sig, spec);
    bool slow = naive_spec_valid(sig, spec);
    if (fast != slow || lean != slow)
      rep.fail("validity disagreement at " + detail::spec_string(spec));
  };
  // Exhaustive corner: all tuples, valid or not.
  for (Int n = 2; n <= std::min<Int>(max_n, 5); ++n) {
    for (Int r = 0; r <= 1; ++r) {
      for (const auto& indices : divisor_multisets(n, std::min<Int>(max_s, 3))) {
        OrbifoldSignature sig{r, indices};
        EpimorphismSpec cur;
        cur.order = n;
        cur.alpha.assign(static_cast<std::size_t>(r), 0);
        cur.beta.assign(static_cast<std::size_t>(r), 0);
        cur.gamma.assign(indices.size(), 0);
        std::vector<Int*> slots;
        for (auto* vec : {&cur.alpha, &cur.beta, &cur.gamma})
          for (Int& c : *vec) slots.push_back(&c);
        auto rec = [&](auto&& self, std::size_t i) -> void {
          if (i == slots.size()) {
            compare(sig, cur);
            return;
          }
          for (Int c = 0; c < n; ++c) {
            *slots[i] = c;
            self(self, i + 1);
          }
        };
        rec(rec, 0);
      }
    }
  }
  // Seeded random sweep across the full cap.
  std::mt19937 rng(987654321u);
  for (Int n = 2; n <= max_n; ++n) {
    std::vector<std::vector<Int>> multisets = divisor_multisets(n, max_s);
    for (Int r = 0; r <= 2; ++r) {
      for (Int t = 0; t < samples; ++t) {
        const auto& indices = multisets[rng() % multisets.size()];
        OrbifoldSignature sig{r, indices};
        EpimorphismSpec cur;
        cur.order = n;
        auto rand_res = [&]() { return static_cast<Int>(rng() % static_cast<unsigned>(n)); };
        for (Int i = 0; i < r; ++i) cur.alpha.push_back(rand_res());
        for (Int i = 0; i < r; ++i) cur.beta.push_back(rand_res());
        for (std::size_t j = 0; j < indices.size(); ++j) cur.gamma.push_back(rand_res());
        compare(sig, cur);
      }
    }
  }
  return rep;
}

/// Moves preserve validity and the gamma multiset -- on every valid spec and
/// every legal move in the budget.
inline SuiteReport run_move_invariance_suite(Int max_n = 8, Int max_r = 2, Int max_s = 4,
                                             const OracleCaps& caps = {}) {
  SuiteReport rep{"moves"};
  for (Int n = 2; n <= max_n; ++n) {
    for (Int r = 0; r <= max_r; ++r) {
      for (const auto& indices : divisor_multisets(n, max_s)) {
        OrbifoldSignature sig{r, indices};
        for (const EpimorphismSpec& spec : enumerate_valid_specs(sig, n, caps)) {
          std::vector<Int> before = spec.gamma;
          std::sort(before.begin(), before.end());
          EpimorphismSpec work = spec;
          for (const Move& mv : candidate_moves(sig, spec)) {
            ++rep.checks;
            surfext::detail::apply_move_inplace(sig, work, mv);
            if (!spec_valid(sig, work)) {
              rep.fail(std::string("validity lost after ") + move_kind(mv) + " at " +
                       detail::spec_string(spec));
            } else {
              std::vector<Int> after = work.gamma;
              std::sort(after.begin(), after.end());
              if (before != after || work.order != spec.order)
                rep.fail(std::string("gamma multiset changed by ") + move_kind(mv) + " at " +
                         detail::spec_string(spec));
            }
            surfext::detail::apply_move_inplace(sig, work, inverse_move(mv));
          }
        }
      }
    }
  }
  return rep;
}

inline std::vector<SuiteReport> run_all_suites() {
  return {run_matching_suite(), run_align_suite(),  run_normalize_suite(),
          run_atlas_suite(),    run_validate_suite(), run_move_invariance_suite()};
}

}  // namespace oracle
}  // namespace surfext
