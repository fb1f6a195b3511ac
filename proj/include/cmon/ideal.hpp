#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmon/field.hpp"

namespace cmon {

inline constexpr long kDefaultFactorBound = 1'000'000;

// Nonzero fractional ideal stored as (1/den) * L, where L is the integral
// lattice with Hermite basis {a, b + c w}: c | a, c | b, 0 <= b < a, and den is
// the least positive integer making den * I integral. Over Q, L = aZ and the
// entries are stored as (a, 0, 1). Equal ideals have identical encodings.
class Ideal {
 public:
  static Ideal unit(const NumberField& K);
  static Ideal principal(const Element& x);
  static Ideal generated_by(const NumberField& K, const std::vector<Element>& gens);
  static Ideal parse(const NumberField& K, const std::string& spec);

  const NumberField& field() const { return K_; }
  const Integer& den() const { return den_; }
  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  Rational scale() const { return make_rational(1, den_); }

  bool is_integral() const { return den_ == 1; }
  bool is_unit() const;
  Rational norm() const;
  // Norm of an integral ideal.
  Integer integral_norm() const;
  // Positive generator of I ∩ Z for an integral ideal.
  const Integer& min_integer() const;

  std::vector<Element> basis() const;
  bool contains(const Element& x) const;
  bool is_subset_of(const Ideal& J) const;
  // this | J, i.e. J ⊆ this.
  bool divides(const Ideal& J) const { return J.is_subset_of(*this); }
  bool is_rational_multiple() const;

  Ideal conj() const;
  Ideal inverse() const;
  Ideal intersect(const Ideal& J) const;
  Ideal pow(int n) const;

  Ideal operator*(const Ideal& J) const;
  Ideal operator*(const Element& x) const;
  Ideal operator+(const Ideal& J) const;
  Ideal operator/(const Ideal& J) const { return *this * J.inverse(); }

  std::string to_string() const;

  friend bool operator==(const Ideal& x, const Ideal& y) {
    return x.K_ == y.K_ && x.den_ == y.den_ && x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
  }
  friend bool operator!=(const Ideal& x, const Ideal& y) { return !(x == y); }

 private:
  explicit Ideal(NumberField K) : K_(std::move(K)) {}
  static Ideal from_lattice(const NumberField& K, const std::vector<Element>& zgens);

  NumberField K_;
  Integer den_ = 1;
  Integer a_ = 1, b_ = 0, c_ = 1;
};

// Norm first, then encoding; a total order on ideals of one field.
bool ideal_less(const Ideal& x, const Ideal& y);

struct IdealHash {
  std::size_t operator()(const Ideal& I) const;
};

struct PrimeIdeal {
  Ideal ideal;
  Integer under;      // rational prime below
  int residue_degree; // 1 or 2
  bool ramified;

  Integer norm() const;
  int ramification() const { return ramified ? 2 : 1; }
  std::string to_string() const { return ideal.to_string(); }

  friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y) { return x.ideal == y.ideal; }
  friend bool operator!=(const PrimeIdeal& x, const PrimeIdeal& y) { return !(x == y); }
};

bool prime_less(const PrimeIdeal& x, const PrimeIdeal& y);

// Primes above a rational prime p, ordered by prime_less.
std::vector<PrimeIdeal> primes_above(const NumberField& K, const Integer& p);
// Prime ideals of norm at most bound, ordered by prime_less.
std::vector<PrimeIdeal> primes_up_to(const NumberField& K, const Integer& bound);
std::optional<PrimeIdeal> as_prime(const Ideal& I);
PrimeIdeal require_prime(const Ideal& I);

struct PrimePower {
  PrimeIdeal prime;
  long exponent;
};

std::vector<PrimePower> factor(const Ideal& I, long trial_bound = kDefaultFactorBound);
Ideal from_factorization(const NumberField& K, const std::vector<PrimePower>& f);
std::vector<PrimeIdeal> support(const Ideal& I);

long valuation(const Ideal& I, const PrimeIdeal& P);
long valuation(const Element& x, const PrimeIdeal& P);

// Canonical representative of x + I for integral x and integral I: the
// coordinates in the Hermite basis lie in [0, a) x [0, c).
Element reduce_mod(const Element& x, const Ideal& I);
bool congruent(const Element& x, const Element& y, const Ideal& I);
// Fundamental domain of R / I, in canonical order.
std::vector<Element> residue_representatives(const Ideal& I);

// Writes target = u + v with u ∈ I and v ∈ J, when target ∈ I + J.
std::optional<std::pair<Element, Element>> split_in_sum(const Element& target, const Ideal& I,
                                                        const Ideal& J);
bool coprime(const Ideal& I, const Ideal& J);
bool coprime(const Element& x, const Ideal& I);

struct Congruence {
  Element target;
  Ideal modulus;
};

// Canonical solution modulo the product of the moduli.
Element crt_solve(const std::vector<Congruence>& system);

// y + T with T >= 0 the least element of I ∩ Z making the result totally positive.
Element totally_positive_lift(const Element& y, const Ideal& I);

}  // namespace cmon
