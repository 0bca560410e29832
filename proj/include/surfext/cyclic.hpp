#pragma once

// Exact arithmetic in Z/n, written additively: the identity is the residue 0
// and a fixed generator is the residue 1.  All values are 64-bit and every
// product or sum that could leave 64 bits goes through the checked helpers;
// silent wraparound is a bug, not a feature.

#include <cassert>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "errors.hpp"

namespace surfext {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer addition overflow");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer multiplication overflow");
  return r;
}

/// Reduce x into [0, n).  Accepts any integer, including negatives.
inline Int normalize_residue(Int n, Int x) {
  if (n < 1) throw PreconditionViolated("modulus must be positive, got " + std::to_string(n));
  Int r = x % n;
  return r < 0 ? r + n : r;
}

/// Order of the residue c in Z/n.  Total on any input (c is reduced first).
inline Int elem_order(Int n, Int c) {
  c = normalize_residue(n, c);
  return n / std::gcd(c, n);
}

inline bool is_unit(Int n, Int c) { return std::gcd(normalize_residue(n, c), n) == 1; }

struct Egcd {
  Int g, x, y;  // g = a*x + b*y, g >= 0
};

/// Extended Euclid. Works for arbitrary signs of a and b.
inline Egcd extended_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_x = 1, x = 0;
  Int old_y = 0, y = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int t;
    t = old_r - q * r; old_r = r; r = t;
    t = old_x - q * x; old_x = x; x = t;
    t = old_y - q * y; old_y = y; y = t;
  }
  if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
  return {old_r, old_x, old_y};
}

/// Multiplicative inverse of c mod n, as a residue in [0, n).
inline Int inverse_mod(Int n, Int c) {
  c = normalize_residue(n, c);
  if (n == 1) return 0;  // the only residue; 0*0 == 0 == 1 (mod 1)
  Egcd e = extended_gcd(c, n);
  if (e.g != 1)
    throw NotAUnit(std::to_string(c) + " is not a unit mod " + std::to_string(n) +
                   " (gcd " + std::to_string(e.g) + ")");
  return normalize_residue(n, e.x);
}

inline Int euler_phi(Int n) {
  if (n < 1) throw PreconditionViolated("euler_phi needs n >= 1");
  Int result = n;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace detail {

// x ≡ r1 (mod m1) and x ≡ r2 (mod m2) for coprime m1, m2.
inline std::pair<Int, Int> crt_combine(Int m1, Int r1, Int m2, Int r2) {
  Int inv = inverse_mod(m2, normalize_residue(m2, m1));
  Int t = normalize_residue(m2, checked_mul(normalize_residue(m2, r2 - r1), inv));
  return {checked_mul(m1, m2), checked_add(r1, checked_mul(m1, t))};
}

}  // namespace detail

/// Unit u mod m*p*q with u*a ≡ m*q and u*b ≡ m*p (mod m*p*q), given coprime
/// p, q and residues a of order p, b of order q.  Such a u rescales a and b
/// onto the canonical order-p and order-q elements simultaneously; it exists
/// for every admissible (a, b) and any valid u is acceptable.
///
/// Construction: elements of order p are exactly the multiples (n/p)*a' with
/// a' a unit mod p, so the first congruence is u*a' ≡ 1 (mod p) and likewise
/// mod q.  Chinese-remainder those two together with u ≡ 1 on the part of m
/// coprime to p*q; the result is coprime to every prime of n.
inline Int align_automorphism(Int m, Int p, Int q, Int a, Int b) {
  if (m < 1 || p < 1 || q < 1)
    throw PreconditionViolated("align_automorphism: m, p, q must be positive");
  if (std::gcd(p, q) != 1)
    throw PreconditionViolated("align_automorphism: p and q must be coprime");
  const Int n = checked_mul(checked_mul(m, p), q);
  a = normalize_residue(n, a);
  b = normalize_residue(n, b);
  if (elem_order(n, a) != p)
    throw PreconditionViolated("align_automorphism: a must have order p");
  if (elem_order(n, b) != q)
    throw PreconditionViolated("align_automorphism: b must have order q");
  if (n == 1) return 1;  // the trivial group; 1 is the canonical answer

  Int mod = 1, res = 0;
  if (p > 1)
    std::tie(mod, res) = detail::crt_combine(mod, res, p, inverse_mod(p, a / (n / p)));
  if (q > 1)
    std::tie(mod, res) = detail::crt_combine(mod, res, q, inverse_mod(q, b / (n / q)));
  Int m2 = m;  // part of m coprime to p*q
  for (Int t = std::gcd(m2, checked_mul(p, q)); t > 1; t = std::gcd(m2, p * q)) m2 /= t;
  if (m2 > 1)
    std::tie(mod, res) = detail::crt_combine(mod, res, m2, 1);
  Int u = (mod == 1) ? 1 : res;

  // The construction guarantees all three properties; check them anyway.
  Int t1 = normalize_residue(n, n / p);  // m*q reduced mod n
  Int t2 = normalize_residue(n, n / q);  // m*p reduced mod n
  if (std::gcd(u, n) != 1 ||
      normalize_residue(n, checked_mul(u, a)) != t1 ||
      normalize_residue(n, checked_mul(u, b)) != t2)
    throw Error("align_automorphism: internal error, constructed u fails its contract");
  return u;
}

/// A residue tagged with its modulus.  Mostly a convenience for callers; the
/// free functions above are the workhorses.
struct CyclicElem {
  Int modulus;
  Int residue;

  CyclicElem(Int n, Int x) : modulus(n), residue(normalize_residue(n, x)) {}

  Int order() const { return elem_order(modulus, residue); }
  bool unit() const { return is_unit(modulus, residue); }

  friend CyclicElem operator+(CyclicElem a, CyclicElem b) {
    if (a.modulus != b.modulus) throw PreconditionViolated("modulus mismatch");
    return {a.modulus, a.residue + b.residue};
  }
  friend CyclicElem operator-(CyclicElem a, CyclicElem b) {
    if (a.modulus != b.modulus) throw PreconditionViolated("modulus mismatch");
    return {a.modulus, a.residue - b.residue};
  }
  friend CyclicElem operator-(CyclicElem a) { return {a.modulus, -a.residue}; }
  friend bool operator==(const CyclicElem&, const CyclicElem&) = default;
};

}  // namespace surfext
