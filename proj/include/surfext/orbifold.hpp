#pragma once

// Quotient orbifold data for a finite cyclic action on a closed orientable
// surface: the quotient is a genus-r surface with s cone points, and the
// action is recorded by the images in Z/n of the standard generators of the
// complement of the cone points -- handle loops alpha_i, beta_i and one small
// loop gamma_j around each cone point.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cyclic.hpp"
#include "errors.hpp"

namespace surfext {

/// Signature of the quotient orbifold: underlying genus r plus the cone
/// indices n_1..n_s in presentation order (order matters to the move engine;
/// use canonical_indices() for multiset comparisons).
struct OrbifoldSignature {
  Int underlying_genus = 0;           // r
  std::vector<Int> singular_indices;  // each >= 2

  Int r() const { return underlying_genus; }
  Int s() const { return static_cast<Int>(singular_indices.size()); }

  std::vector<Int> canonical_indices() const {
    std::vector<Int> v = singular_indices;
    std::sort(v.begin(), v.end());
    return v;
  }

  friend bool operator==(const OrbifoldSignature&, const OrbifoldSignature&) = default;
};

inline void check_signature(const OrbifoldSignature& sig) {
  if (sig.underlying_genus < 0)
    throw PreconditionViolated("quotient genus must be >= 0");
  for (Int d : sig.singular_indices)
    if (d < 2)
      throw PreconditionViolated("cone index must be >= 2, got " + std::to_string(d));
}

/// Generator images in Z/n.  alpha/beta have length r, gamma length s; all
/// residues lie in [0, n).  The identity is 0 and the defining relation of
/// the punctured quotient forces sum(gamma) ≡ 0.
struct EpimorphismSpec {
  Int order = 0;  // n >= 2
  std::vector<Int> alpha, beta, gamma;

  friend bool operator==(const EpimorphismSpec&, const EpimorphismSpec&) = default;
};

namespace detail {

// Minimal exact rational, used only to evaluate Euler characteristics.
struct Rat {
  Int num = 0, den = 1;

  static Rat make(Int n, Int d) {
    if (d == 0) throw PreconditionViolated("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    Int g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    return {n, d};
  }
  friend Rat operator+(Rat a, Rat b) {
    return make(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                checked_mul(a.den, b.den));
  }
  friend Rat operator-(Rat a, Rat b) { return a + Rat{-b.num, b.den}; }
  friend Rat operator*(Rat a, Rat b) {
    return make(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
};

}  // namespace detail

/// Genus of the covering surface determined by the signature and the order n
/// of the acting group, from the Riemann-Hurwitz relation
///   2 - 2g = n * (2 - 2r - sum_k (1 - 1/n_k)).
/// Exact arithmetic throughout; never returns a rounded value.
inline Int quotient_genus(const OrbifoldSignature& sig, Int n) {
  check_signature(sig);
  if (n < 1) throw PreconditionViolated("group order must be >= 1");
  for (Int d : sig.singular_indices)
    if (n % d != 0)
      throw IndexNotDividing("cone index " + std::to_string(d) +
                             " does not divide the group order " + std::to_string(n));
  detail::Rat chi_orb = detail::Rat::make(2 - 2 * sig.underlying_genus, 1);
  for (Int d : sig.singular_indices)
    chi_orb = chi_orb - detail::Rat::make(d - 1, d);
  detail::Rat chi = detail::Rat::make(n, 1) * chi_orb;  // Euler characteristic 2 - 2g
  if (chi.den != 1)
    throw NonIntegerGenus("orbifold Euler characteristic times n is not an integer");
  Int twice_g = checked_add(2, -chi.num);
  if (twice_g % 2 != 0)
    throw NonIntegerGenus("2 - 2g = " + std::to_string(chi.num) + " has odd parity");
  Int g = twice_g / 2;
  if (g < 0)
    throw NegativeGenus("computed genus " + std::to_string(g) + " is negative");
  return g;
}

enum class SpecViolation { relation, exact_order, surjectivity };

inline const char* violation_name(SpecViolation v) {
  switch (v) {
    case SpecViolation::relation: return "relation";
    case SpecViolation::exact_order: return "exact_order";
    case SpecViolation::surjectivity: return "surjectivity";
  }
  return "?";
}

struct ValidationReport {
  bool valid = true;
  std::vector<SpecViolation> violations;
  std::string detail;  // one human-readable line per violation

  explicit operator bool() const { return valid; }
};

/// Check that the images define a genuine action: the cone-point relation
/// sum(gamma) ≡ 0 holds, each gamma_j has exact order n_j (points of index
/// n_j really are branched of that index), and the images generate all of
/// Z/n.  Accepts either orientation convention for the gamma images: a loop
/// and its reverse differ by sign, which changes no verdict below.
inline ValidationReport validate(const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
  check_signature(sig);
  const Int n = spec.order;
  if (n < 2) throw InvalidSpec("group order must be at least 2, got " + std::to_string(n));
  const std::size_t r = static_cast<std::size_t>(sig.underlying_genus);
  const std::size_t s = sig.singular_indices.size();
  if (spec.alpha.size() != r || spec.beta.size() != r || spec.gamma.size() != s) {
    std::ostringstream os;
    os << "image vectors have shape (" << spec.alpha.size() << ", " << spec.beta.size()
       << ", " << spec.gamma.size() << "), signature needs (" << r << ", " << r << ", " << s << ")";
    throw ShapeMismatch(os.str());
  }
  for (const auto* vec : {&spec.alpha, &spec.beta, &spec.gamma})
    for (Int c : *vec)
      if (c < 0 || c >= n)
        throw InvalidSpec("residue " + std::to_string(c) + " out of range [0, " +
                          std::to_string(n) + ")");

  ValidationReport rep;
  std::ostringstream detail;

  Int sum = 0;
  for (Int c : spec.gamma) sum = (sum + c) % n;
  if (sum != 0) {
    rep.violations.push_back(SpecViolation::relation);
    detail << "relation: gamma images sum to " << sum << " (mod " << n << "), expected 0\n";
  }

  for (std::size_t j = 0; j < s; ++j) {
    Int ord = elem_order(n, spec.gamma[j]);
    if (ord != sig.singular_indices[j]) {
      rep.violations.push_back(SpecViolation::exact_order);
      detail << "exact order: gamma " << (j + 1) << " = " << spec.gamma[j] << " has order "
             << ord << ", cone index is " << sig.singular_indices[j] << "\n";
    }
  }

  Int g = n;
  for (const auto* vec : {&spec.alpha, &spec.beta, &spec.gamma})
    for (Int c : *vec) g = std::gcd(g, c);
  if (g != 1) {
    rep.violations.push_back(SpecViolation::surjectivity);
    detail << "surjectivity: images generate the index-" << g << " subgroup only\n";
  }

  rep.valid = rep.violations.empty();
  rep.detail = detail.str();
  return rep;
}

inline void require_valid(const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
  ValidationReport rep = validate(sig, spec);
  if (!rep.valid) throw InvalidSpec("invalid action data:\n" + rep.detail);
}

/// Boolean twin of validate without report plumbing, for hot loops.  Assumes
/// the shapes already match and all residues are in range.
inline bool spec_valid(const OrbifoldSignature& sig, const EpimorphismSpec& spec) {
  const Int n = spec.order;
  Int sum = 0;
  for (Int c : spec.gamma) sum = (sum + c) % n;
  if (sum != 0) return false;
  for (std::size_t j = 0; j < spec.gamma.size(); ++j)
    if (elem_order(n, spec.gamma[j]) != sig.singular_indices[j]) return false;
  Int g = n;
  for (const auto* vec : {&spec.alpha, &spec.beta, &spec.gamma})
    for (Int c : *vec) g = std::gcd(g, c);
  return g == 1;
}

/// First Betti number of a graph from its counts.  beta_1 = E - V + C.
inline Int graph_beta1(Int vertices, Int edges, Int components) {
  if (vertices < 0 || edges < 0 || components < 0 || (vertices >= 1 && components < 1))
    throw NegativeBetti("inconsistent graph counts");
  Int b = checked_add(checked_add(edges, -vertices), components);
  if (b < 0)
    throw NegativeBetti("E - V + C = " + std::to_string(b) + " is negative; counts inconsistent");
  return b;
}

}  // namespace surfext
