#pragma once

// Breadth-first search over the move graph: vertices are image tuples, edges
// are single moves.  Shared by the conjugacy semi-decision and the oracle's
// reachability checks.  States pack into one word when n and the tuple
// length are small (the only regime where searching is sensible anyway);
// otherwise a generic vector key keeps the search correct, just slower.

#include <cstdint>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cyclic.hpp"
#include "errors.hpp"
#include "moves.hpp"
#include "orbifold.hpp"

namespace surfext {

struct SearchCaps {
  Int max_depth = 16;
  Int max_states = 4'000'000;
};

/// Every legal single move from this state.  Swap moves are emitted once per
/// unordered pair of equal-index points.
inline std::vector<Move> candidate_moves(const OrbifoldSignature& sig,
                                         const EpimorphismSpec& spec) {
  std::vector<Move> out;
  const Int r = sig.r(), s = sig.s();
  bool alphas_zero = true;
  for (Int a : spec.alpha) alphas_zero = alphas_zero && (a == 0);
  for (int sign : {+1, -1}) {
    for (Int i = 1; i <= r; ++i) {
      for (Int j = 1; j <= s; ++j) {
        out.push_back(SlidePointAlongAlpha{j, i, sign});
        out.push_back(SlidePointAlongBeta{j, i, sign});
      }
      out.push_back(TwistAlpha{i, sign});
      out.push_back(TwistBeta{i, sign});
      if (alphas_zero)
        for (Int k = 1; k <= r; ++k)
          if (k != i) out.push_back(HandleSlide{k, i, sign});
    }
  }
  for (Int j1 = 1; j1 <= s; ++j1)
    for (Int j2 = j1 + 1; j2 <= s; ++j2)
      if (sig.singular_indices[static_cast<std::size_t>(j1 - 1)] ==
          sig.singular_indices[static_cast<std::size_t>(j2 - 1)])
        out.push_back(SwapPoints{j1, j2});
  return out;
}

namespace detail {

// 4 bits per entry; usable whenever n <= 16 and at most 15 entries.
inline bool packable(const OrbifoldSignature& sig, Int n) {
  return n <= 16 && 2 * sig.r() + sig.s() <= 15;
}

inline std::uint64_t pack_state(const EpimorphismSpec& spec) {
  std::uint64_t key = 1;  // leading sentinel keeps lengths distinct
  for (const auto* vec : {&spec.alpha, &spec.beta, &spec.gamma})
    for (Int c : *vec) key = (key << 4) | static_cast<std::uint64_t>(c);
  return key;
}

struct VecKeyHash {
  std::size_t operator()(const std::vector<Int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (Int c : v) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline std::vector<Int> vec_key(const EpimorphismSpec& spec) {
  std::vector<Int> key;
  key.reserve(spec.alpha.size() + spec.beta.size() + spec.gamma.size());
  for (const auto* vec : {&spec.alpha, &spec.beta, &spec.gamma})
    key.insert(key.end(), vec->begin(), vec->end());
  return key;
}

}  // namespace detail

struct SearchOutcome {
  bool reachable = false;
  Int depth = -1;           // depth at which the target appeared
  Int states_visited = 0;
};

/// BFS from one image tuple to another over apply_move edges.  Both specs
/// must live on the same signature and group order.  Throws BudgetExceeded
/// when the visited-state budget runs out before the depth bound does.
inline SearchOutcome move_search(const OrbifoldSignature& sig, const EpimorphismSpec& from,
                                 const EpimorphismSpec& to, const SearchCaps& caps = {}) {
  if (from.order != to.order)
    throw PreconditionViolated("move search needs equal group orders");
  SearchOutcome outcome;

  auto run = [&](auto key_of, auto& seen) {
    std::deque<std::pair<EpimorphismSpec, Int>> queue;
    seen.insert(key_of(from));
    queue.emplace_back(from, 0);
    auto target = key_of(to);
    if (key_of(from) == target) {
      outcome = {true, 0, 1};
      return;
    }
    while (!queue.empty()) {
      auto [spec, depth] = std::move(queue.front());
      queue.pop_front();
      if (depth >= caps.max_depth) continue;
      for (const Move& mv : candidate_moves(sig, spec)) {
        EpimorphismSpec next = apply_move(sig, spec, mv);
        auto key = key_of(next);
        if (!seen.insert(key).second) continue;
        if (static_cast<Int>(seen.size()) > caps.max_states)
          throw BudgetExceeded("move search exceeded " + std::to_string(caps.max_states) +
                               " states");
        if (key == target) {
          outcome = {true, depth + 1, static_cast<Int>(seen.size())};
          return;
        }
        queue.emplace_back(std::move(next), depth + 1);
      }
    }
    outcome = {false, -1, static_cast<Int>(seen.size())};
  };

  if (detail::packable(sig, from.order)) {
    std::unordered_set<std::uint64_t> seen;
    run([](const EpimorphismSpec& s) { return detail::pack_state(s); }, seen);
  } else {
    std::unordered_set<std::vector<Int>, detail::VecKeyHash> seen;
    run([](const EpimorphismSpec& s) { return detail::vec_key(s); }, seen);
  }
  return outcome;
}

inline bool bounded_move_search(const OrbifoldSignature& sig, const EpimorphismSpec& from,
                                const EpimorphismSpec& to, Int depth) {
  SearchCaps caps;
  caps.max_depth = depth;
  return move_search(sig, from, to, caps).reachable;
}

}  // namespace surfext
