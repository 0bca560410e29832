#pragma once

// Degree-one domination between lens spaces L(p, q1) -> L(p, q2), decided by
// a quadratic-residue criterion and certified by an explicit integer matrix.
// The certificate data (a1, b1, a2, b2, m, n, r) pins down a genus-two
// Heegaard picture of the map; verify_certificate re-checks every identity
// from scratch so a certificate can be trusted without trusting the search.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyclic.hpp"
#include "errors.hpp"

namespace surfext {

struct LensSpace {
  Int p = 0, q = 0;
};

inline void check_lens(Int p, Int q) {
  if (p < 2) throw PreconditionViolated("lens space needs p >= 2, got " + std::to_string(p));
  if (std::gcd(normalize_residue(p, q), p) != 1)
    throw NotCoprime("q = " + std::to_string(q) + " is not coprime to p = " + std::to_string(p));
}

/// L(p, q) and L(p, q') are homeomorphic (orientation allowed to reverse in
/// neither direction here beyond the classical criterion): q' ≡ q or
/// q*q' ≡ 1 (mod p).
inline bool lens_equivalent(Int p, Int q, Int q2) {
  check_lens(p, q);
  check_lens(p, q2);
  q = normalize_residue(p, q);
  q2 = normalize_residue(p, q2);
  return q2 == q || normalize_residue(p, checked_mul(q, q2)) == 1;
}

/// Canonical representative min(q, q^{-1} mod p) of the homeomorphism class.
inline Int lens_canonical(Int p, Int q) {
  check_lens(p, q);
  q = normalize_residue(p, q);
  Int qi = inverse_mod(p, q);
  return qi < q ? qi : q;
}

struct DominationCertificate {
  Int a1 = 0, b1 = 0, a2 = 0, b2 = 0;  // a1*b2 + a2*b1 = p
  Int m = 0, n = 0;                    // m*a1 - n*b1 = 1
  Int r = 0;                           // r*r ≡ q1*q2 (mod p)
  // Construction intermediates, kept for debugging and replay.
  Int q1_star = 0;   // q1^{-1} mod p
  Int b1_prime = 0;  // b1 / p
  Int b2_prime = 0;  // b2 / p
};

/// Search for a degree-one map L(p, q1) -> L(p, q2).  One exists exactly
/// when q1*q2 is a quadratic residue mod p; the witness r is found by an
/// exhaustive scan of r in [1, p], smallest first, and expanded into the
/// full certificate by two extended-gcd computations.
inline std::optional<DominationCertificate> dominates_qr(Int p, Int q1, Int q2) {
  check_lens(p, q1);
  check_lens(p, q2);
  q1 = normalize_residue(p, q1);
  q2 = normalize_residue(p, q2);
  Int target = normalize_residue(p, checked_mul(q1, q2));
  Int r = 0;
  for (Int cand = 1; cand <= p; ++cand) {
    if (normalize_residue(p, checked_mul(cand, cand)) == target) {
      r = cand;
      break;
    }
  }
  if (r == 0) return std::nullopt;

  DominationCertificate cert;
  cert.r = r;
  cert.q1_star = inverse_mod(p, q1);
  cert.a1 = checked_add(checked_mul(r, cert.q1_star), p);
  cert.a2 = r;
  Egcd e = extended_gcd(cert.a1, cert.a2);  // a1*x + a2*y = 1
  if (e.g != 1)
    throw Error("domination certificate: a1 and a2 are not coprime (internal)");
  cert.b2_prime = e.x;
  cert.b1_prime = e.y;
  cert.b1 = checked_mul(cert.b1_prime, p);
  cert.b2 = checked_mul(cert.b2_prime, p);
  Egcd f = extended_gcd(cert.a1, -cert.b1);  // m*a1 + n*(-b1) = 1
  if (f.g != 1)
    throw Error("domination certificate: a1 and b1 are not coprime (internal)");
  cert.m = f.x;
  cert.n = f.y;
  return cert;
}

/// Re-check every identity a certificate claims, independently of how it
/// was produced.
inline bool verify_certificate(Int p, Int q1, Int q2, const DominationCertificate& c) {
  check_lens(p, q1);
  check_lens(p, q2);
  q1 = normalize_residue(p, q1);
  q2 = normalize_residue(p, q2);
  auto mod = [&](Int x) { return normalize_residue(p, x); };
  if (std::gcd(c.a1 < 0 ? -c.a1 : c.a1, c.b1 < 0 ? -c.b1 : c.b1) != 1) return false;
  if (std::gcd(c.a2 < 0 ? -c.a2 : c.a2, c.b2 < 0 ? -c.b2 : c.b2) != 1) return false;
  if (std::gcd(c.a1 < 0 ? -c.a1 : c.a1, c.a2 < 0 ? -c.a2 : c.a2) != 1) return false;
  if (checked_add(checked_mul(c.a1, c.b2), checked_mul(c.a2, c.b1)) != p) return false;
  if (checked_add(checked_mul(c.m, c.a1), -checked_mul(c.n, c.b1)) != 1) return false;
  if (mod(checked_mul(c.r, c.r)) != mod(checked_mul(q1, q2))) return false;
  if (mod(checked_mul(c.a1, c.a2)) != q2) return false;
  if (mod(checked_add(checked_mul(c.m, c.a2), checked_mul(c.n, c.b2))) != q1) return false;
  return true;
}

/// The domination relation on all homeomorphism classes of L(p, -).
struct DominationDigraph {
  Int p = 0;
  std::vector<Int> classes;  // canonical representatives, increasing
  struct Edge {
    Int q1 = 0, q2 = 0;
    DominationCertificate cert;
  };
  std::vector<Edge> edges;
  // Distinct classes that dominate each other; candidates for "same degree
  // sequence yet not homeomorphic" examples.
  std::vector<std::pair<Int, Int>> mutual_pairs;
};

inline DominationDigraph domination_digraph(Int p) {
  if (p < 2) throw PreconditionViolated("domination digraph needs p >= 2");
  DominationDigraph dg;
  dg.p = p;
  for (Int q = 1; q < p; ++q)
    if (std::gcd(q, p) == 1 && lens_canonical(p, q) == q) dg.classes.push_back(q);
  for (Int q1 : dg.classes)
    for (Int q2 : dg.classes)
      if (auto cert = dominates_qr(p, q1, q2)) dg.edges.push_back({q1, q2, *cert});
  for (std::size_t i = 0; i < dg.classes.size(); ++i)
    for (std::size_t j = i + 1; j < dg.classes.size(); ++j) {
      Int a = dg.classes[i], b = dg.classes[j];
      bool ab = false, ba = false;
      for (const auto& e : dg.edges) {
        ab = ab || (e.q1 == a && e.q2 == b);
        ba = ba || (e.q1 == b && e.q2 == a);
      }
      if (ab && ba && !lens_equivalent(p, a, b)) dg.mutual_pairs.emplace_back(a, b);
    }
  return dg;
}

}  // namespace surfext
