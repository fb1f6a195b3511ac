#pragma once

#include <optional>
#include <vector>

#include "cmon/residue.hpp"
#include "cmon/search.hpp"

namespace cmon {

// x = numerator / denominator.
struct QuotientPair {
  Element numerator;
  Element denominator;
};

// Writes x ∈ K_{m,Γ} as a quotient of two elements of R_{m,Γ}: x = a/b with
// a, b coprime to m_0, then both scaled by the least c with [c] = [a]^{-1}.
QuotientPair monoid_quotient_rep(const Element& x, const ResidueSubgroup& gamma);

// x = a/b with a ∈ R and b ∈ R coprime to m_0, or nullopt when some
// v_P(x) < 0 on the support.
std::optional<QuotientPair> in_localization(const Element& x, const Modulus& m);

struct Prescription {
  PrimeIdeal prime;
  long exponent;
};

// Least uniformizer: the first element of P \ P^2 in search order.
Element uniformizer(const PrimeIdeal& P);

// Totally positive x with x = 1 mod m_0 and v_P(x) = n exactly for every
// prescribed (P, n). The proof construction (CRT on uniformizer powers, then
// a totally positive lift) supplies a bound; the least valid element within
// it is returned. Throws PrimeInSupport for primes dividing m_0.
Element approx_element(const std::vector<Prescription>& prescribed, const Modulus& m);

// b ∈ A ∩ R_{m,1} with aR + bR = A. Requires A integral and coprime to m_0 and
// a ∈ A ∩ R_{m,1}.
Element second_generator(const Element& a, const Ideal& A, const Modulus& m);

// b ∈ R_{m,1} with (a/b)R ∩ R = A, under the same preconditions.
Element cutdown_pair(const Ideal& A, const Element& a, const Modulus& m);

struct RayGeneration {
  bool generates;
  // Shortest prefix of the candidates generating A, or every candidate found
  // when the bound was too small.
  std::vector<Element> generators;
};

// Default bound for ray_generates_check: 20 N(A) N(m_0).
Integer default_raygen_bound(const Ideal& A, const Modulus& m);

// Scans totally positive elements of A ∩ (1 + m_0) with |N| <= bound in
// search order. Real fields scan coordinate boxes of doubling height up to the
// bound, each box in search order.
RayGeneration ray_generates_check(const Ideal& A, const Modulus& m, const Integer& bound);

}  // namespace cmon
