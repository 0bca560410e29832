#pragma once

// The move calculus on generator images.  Each move is induced by a
// homeomorphism of the quotient that fixes the cone points setwise, so
// applying one never changes the topological action it presents:
//
//   slide point j along alpha_i : beta_i  += sign * gamma_j
//   slide point j along beta_i  : alpha_i += sign * gamma_j
//   twist along alpha_i         : beta_i  += sign * alpha_i
//   twist along beta_i          : alpha_i += sign * beta_i
//   slide handle k along alpha_i: beta_i  += sign * beta_k      (see below)
//   swap points j1, j2 (equal cone index): exchanges gamma_j1, gamma_j2
//
// The handle slide leaves the other alpha images alone only when every alpha
// image is already 0, so it is rejected outside that regime.  Point and
// handle indices are 1-based throughout, matching the presentation order
// gamma_1..gamma_s, alpha_1..alpha_r.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cyclic.hpp"
#include "errors.hpp"
#include "orbifold.hpp"

namespace surfext {

struct SlidePointAlongAlpha {
  Int point = 0, handle = 0;
  int sign = +1;
  bool operator==(const SlidePointAlongAlpha&) const = default;
};
struct SlidePointAlongBeta {
  Int point = 0, handle = 0;
  int sign = +1;
  bool operator==(const SlidePointAlongBeta&) const = default;
};
struct TwistAlpha {
  Int handle = 0;
  int sign = +1;
  bool operator==(const TwistAlpha&) const = default;
};
struct TwistBeta {
  Int handle = 0;
  int sign = +1;
  bool operator==(const TwistBeta&) const = default;
};
struct HandleSlide {
  Int moving = 0, along = 0;
  int sign = +1;
  bool operator==(const HandleSlide&) const = default;
};
struct SwapPoints {
  Int first = 0, second = 0;
  bool operator==(const SwapPoints&) const = default;
};

using Move = std::variant<SlidePointAlongAlpha, SlidePointAlongBeta,
                          TwistAlpha, TwistBeta, HandleSlide, SwapPoints>;
using MoveScript = std::vector<Move>;

inline const char* move_kind(const Move& mv) {
  struct {
    const char* operator()(const SlidePointAlongAlpha&) { return "slide_point_alpha"; }
    const char* operator()(const SlidePointAlongBeta&) { return "slide_point_beta"; }
    const char* operator()(const TwistAlpha&) { return "twist_alpha"; }
    const char* operator()(const TwistBeta&) { return "twist_beta"; }
    const char* operator()(const HandleSlide&) { return "handle_slide"; }
    const char* operator()(const SwapPoints&) { return "swap_points"; }
  } v;
  return std::visit(v, mv);
}

namespace detail {

inline void check_handle_index(const OrbifoldSignature& sig, Int i, const char* what) {
  if (i < 1 || i > sig.r())
    throw InvalidMove(std::string(what) + " index " + std::to_string(i) +
                      " out of range [1, " + std::to_string(sig.r()) + "]");
}

inline void check_point_index(const OrbifoldSignature& sig, Int j) {
  if (j < 1 || j > sig.s())
    throw InvalidMove("point index " + std::to_string(j) + " out of range [1, " +
                      std::to_string(sig.s()) + "]");
}

inline void check_sign(int sign) {
  if (sign != 1 && sign != -1)
    throw InvalidMove("sign must be +1 or -1, got " + std::to_string(sign));
}

}  // namespace detail

namespace detail {

// In-place core of apply_move, shared with script replay and the bulk
// searches (which cannot afford one copy per edge).
inline void apply_move_inplace(const OrbifoldSignature& sig, EpimorphismSpec& out,
                               const Move& mv) {
  const Int n = out.order;
  struct Apply {
    const OrbifoldSignature& sig;
    EpimorphismSpec& out;
    Int n;

    void operator()(const SlidePointAlongAlpha& m) {
      detail::check_point_index(sig, m.point);
      detail::check_handle_index(sig, m.handle, "handle");
      detail::check_sign(m.sign);
      Int& b = out.beta[static_cast<std::size_t>(m.handle - 1)];
      b = normalize_residue(n, b + m.sign * out.gamma[static_cast<std::size_t>(m.point - 1)]);
    }
    void operator()(const SlidePointAlongBeta& m) {
      detail::check_point_index(sig, m.point);
      detail::check_handle_index(sig, m.handle, "handle");
      detail::check_sign(m.sign);
      Int& a = out.alpha[static_cast<std::size_t>(m.handle - 1)];
      a = normalize_residue(n, a + m.sign * out.gamma[static_cast<std::size_t>(m.point - 1)]);
    }
    void operator()(const TwistAlpha& m) {
      detail::check_handle_index(sig, m.handle, "handle");
      detail::check_sign(m.sign);
      Int& b = out.beta[static_cast<std::size_t>(m.handle - 1)];
      b = normalize_residue(n, b + m.sign * out.alpha[static_cast<std::size_t>(m.handle - 1)]);
    }
    void operator()(const TwistBeta& m) {
      detail::check_handle_index(sig, m.handle, "handle");
      detail::check_sign(m.sign);
      Int& a = out.alpha[static_cast<std::size_t>(m.handle - 1)];
      a = normalize_residue(n, a + m.sign * out.beta[static_cast<std::size_t>(m.handle - 1)]);
    }
    void operator()(const HandleSlide& m) {
      detail::check_handle_index(sig, m.moving, "moving handle");
      detail::check_handle_index(sig, m.along, "handle");
      detail::check_sign(m.sign);
      if (m.moving == m.along)
        throw InvalidMove("handle cannot slide along itself");
      for (Int a : out.alpha)
        if (a != 0)
          throw RestrictedMove("handle slide requires every alpha image to be 0");
      Int& b = out.beta[static_cast<std::size_t>(m.along - 1)];
      b = normalize_residue(n, b + m.sign * out.beta[static_cast<std::size_t>(m.moving - 1)]);
    }
    void operator()(const SwapPoints& m) {
      detail::check_point_index(sig, m.first);
      detail::check_point_index(sig, m.second);
      if (m.first == m.second)
        throw InvalidMove("swap needs two distinct points");
      if (sig.singular_indices[static_cast<std::size_t>(m.first - 1)] !=
          sig.singular_indices[static_cast<std::size_t>(m.second - 1)])
        throw InvalidMove("swapped points must have equal cone index");
      std::swap(out.gamma[static_cast<std::size_t>(m.first - 1)],
                out.gamma[static_cast<std::size_t>(m.second - 1)]);
    }
  } apply{sig, out, n};
  std::visit(apply, mv);
}

}  // namespace detail

/// Apply one move.  The input spec must be valid for sig (not re-checked on
/// every call; moves preserve validity).  Throws InvalidMove on out-of-range
/// indices or a swap of unequal cone indices, RestrictedMove for a handle
/// slide while some alpha image is nonzero.
inline EpimorphismSpec apply_move(const OrbifoldSignature& sig, const EpimorphismSpec& spec,
                                  const Move& mv) {
  EpimorphismSpec out = spec;
  detail::apply_move_inplace(sig, out, mv);
  return out;
}

/// The move undoing mv (swap is its own inverse, everything else flips sign).
inline Move inverse_move(const Move& mv) {
  struct {
    Move operator()(SlidePointAlongAlpha m) { m.sign = -m.sign; return m; }
    Move operator()(SlidePointAlongBeta m) { m.sign = -m.sign; return m; }
    Move operator()(TwistAlpha m) { m.sign = -m.sign; return m; }
    Move operator()(TwistBeta m) { m.sign = -m.sign; return m; }
    Move operator()(HandleSlide m) { m.sign = -m.sign; return m; }
    Move operator()(SwapPoints m) { return m; }
  } v;
  return std::visit(v, mv);
}

inline MoveScript inverse_script(const MoveScript& script) {
  MoveScript inv;
  inv.reserve(script.size());
  for (auto it = script.rbegin(); it != script.rend(); ++it) inv.push_back(inverse_move(*it));
  return inv;
}

inline EpimorphismSpec apply_script(const OrbifoldSignature& sig, EpimorphismSpec spec,
                                    const MoveScript& script) {
  for (const Move& mv : script) detail::apply_move_inplace(sig, spec, mv);
  return spec;
}

namespace detail {

// Integer coefficients k_j in [0, order of gamma_j) with
// sum k_j * gamma_j ≡ target (mod n); iterated extended gcd, lowest index
// first.  Defined whenever target lies in the subgroup the gammas generate.
inline std::vector<Int> gamma_combination(Int n, const std::vector<Int>& gamma, Int target) {
  std::vector<Int> coeff(gamma.size(), 0);
  target = normalize_residue(n, target);
  Int g = n;  // gcd so far; sum coeff*gamma ≡ g (mod n) is a loop invariant
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    Egcd e = extended_gcd(g, gamma[j]);
    // Coefficients only matter mod n, so keep them reduced.
    Int x = normalize_residue(n, e.x);
    for (std::size_t i = 0; i < j; ++i)
      coeff[i] = normalize_residue(n, checked_mul(coeff[i], x));
    coeff[j] = normalize_residue(n, e.y);
    g = e.g;
  }
  if (target % g != 0)
    throw NormalizationImpossible("target residue " + std::to_string(target) +
                                  " is outside the subgroup generated by the gamma images");
  Int scale = target / g;
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    Int ord = elem_order(n, gamma[j]);
    coeff[j] = normalize_residue(ord, checked_mul(coeff[j] % ord, scale % ord));
  }
  return coeff;
}

}  // namespace detail

struct NormalizeResult {
  MoveScript script;
  EpimorphismSpec spec;
};

namespace detail {

class Normalizer {
 public:
  Normalizer(const OrbifoldSignature& sig, const EpimorphismSpec& spec)
      : sig_(sig), res_{{}, spec}, n_(spec.order) {}

  NormalizeResult run() {
    const Int r = sig_.r();
    if (r == 0 || already_normal()) return std::move(res_);

    Int d = n_;
    for (Int c : res_.spec.gamma) d = std::gcd(d, c);

    if (d == 1) {
      // The gamma images generate everything: point slides alone reach any
      // alpha/beta vector.
      for (Int i = 1; i <= r; ++i) {
        set_alpha_by_slides(i, i == 1 ? 1 : 0);
        set_beta_by_slides(i, 0);
      }
    } else {
      // 1. Twists run a Euclidean algorithm on each pair (alpha_i, beta_i)
      //    until alpha_i = 0.
      for (Int i = 1; i <= r; ++i) zero_alpha_by_twists(i);
      // 2. With every alpha image 0, handle slides gather the beta images
      //    into beta_1.
      for (Int i = 2; i <= r; ++i) drain_beta_into_first(i);
      // 3. Point slides adjust beta_1 to a unit (possible by surjectivity),
      //    then twists produce alpha_1 = 1 and clear beta_1.
      make_beta1_unit(d);
      Int t = inverse_mod(n_, beta(1));
      repeat(TwistBeta{1, +1}, t);                // alpha_1 = t * beta_1 = 1
      repeat(TwistAlpha{1, -1}, beta(1));        // beta_1 -= beta_1 * alpha_1
    }

    if (!already_normal())
      throw NormalizationImpossible("normal form not reached; input was not a valid action?");
    return std::move(res_);
  }

 private:
  Int alpha(Int i) const { return res_.spec.alpha[static_cast<std::size_t>(i - 1)]; }
  Int beta(Int i) const { return res_.spec.beta[static_cast<std::size_t>(i - 1)]; }

  bool already_normal() const {
    for (Int i = 1; i <= sig_.r(); ++i) {
      if (alpha(i) != (i == 1 ? 1 : 0)) return false;
      if (beta(i) != 0) return false;
    }
    return true;
  }

  void push(const Move& mv) {
    apply_move_inplace(sig_, res_.spec, mv);
    res_.script.push_back(mv);
  }

  void repeat(const Move& mv, Int times) {
    for (Int t = 0; t < times; ++t) push(mv);
  }

  // beta_i += sum coeff_j * gamma_j via slides along alpha_i.
  void add_to_beta_by_slides(Int i, Int delta) {
    auto coeff = gamma_combination(n_, res_.spec.gamma, delta);
    for (std::size_t j = 0; j < coeff.size(); ++j)
      repeat(SlidePointAlongAlpha{static_cast<Int>(j + 1), i, +1}, coeff[j]);
  }

  void set_beta_by_slides(Int i, Int target) {
    add_to_beta_by_slides(i, normalize_residue(n_, target - beta(i)));
  }

  void set_alpha_by_slides(Int i, Int target) {
    auto coeff = gamma_combination(n_, res_.spec.gamma,
                                   normalize_residue(n_, target - alpha(i)));
    for (std::size_t j = 0; j < coeff.size(); ++j)
      repeat(SlidePointAlongBeta{static_cast<Int>(j + 1), i, +1}, coeff[j]);
  }

  // Subtractive Euclid on the integer representatives: no step wraps mod n.
  void zero_alpha_by_twists(Int i) {
    while (alpha(i) != 0) {
      Int a = alpha(i), b = beta(i);
      if (b == 0) {
        push(TwistAlpha{i, +1});  // (a, 0) -> (a, a), then the a >= b branch clears a
      } else if (a >= b) {
        repeat(TwistBeta{i, -1}, a / b);
      } else {
        repeat(TwistAlpha{i, -1}, b / a);
      }
    }
  }

  // Euclid on (beta_1, beta_i) by handle slides until beta_i = 0.
  void drain_beta_into_first(Int i) {
    while (beta(i) != 0) {
      Int b1 = beta(1), bi = beta(i);
      if (b1 == 0) {
        push(HandleSlide{i, 1, +1});  // beta_1 = beta_i
        push(HandleSlide{1, i, -1});  // beta_i = 0
      } else if (b1 >= bi) {
        repeat(HandleSlide{i, 1, -1}, b1 / bi);
      } else {
        repeat(HandleSlide{1, i, -1}, bi / b1);
      }
    }
  }

  // Add an element of the gamma subgroup to beta_1 so it becomes a unit.
  // One exists: validity is preserved by moves, and at this stage all other
  // images are 0, so gcd(beta_1, d, n) = 1 and a CRT argument produces a
  // multiple of d making beta_1 coprime to n.
  void make_beta1_unit(Int d) {
    if (std::gcd(beta(1), n_) == 1) return;
    for (Int k = 1; k * d < n_; ++k) {
      if (std::gcd(normalize_residue(n_, beta(1) + k * d), n_) == 1) {
        add_to_beta_by_slides(1, normalize_residue(n_, k * d));
        return;
      }
    }
    throw NormalizationImpossible("no unit in the coset of beta_1; input was not surjective?");
  }

  const OrbifoldSignature& sig_;
  NormalizeResult res_;
  Int n_;
};

}  // namespace detail

/// Rewrite a valid action with r >= 1 into the normal form
///   alpha = (1, 0, ..., 0), beta = (0, ..., 0), gamma unchanged,
/// returning the move script that realizes it (replaying the script on the
/// input reproduces the output exactly).  For r = 0 there is nothing to do.
/// Deterministic: identical inputs yield identical scripts.
inline NormalizeResult normalize(const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
  require_valid(sig, spec);
  return detail::Normalizer(sig, spec).run();
}

}  // namespace surfext
