#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cmon/class_group.hpp"
#include "cmon/residue.hpp"

namespace cmon {

// h_m = h * 2^{r0} * N(m_0) * prod_{P | m_0} (1 - 1/N(P)) / [R* : R*_{m,1}].
Integer hm_formula(const Modulus& m);

// Default enumeration bound: max(1, Minkowski bound) * N(m_0).
Integer hm_enumeration_bound(const Modulus& m);

// Brute-force count of ray classes among integral ideals coprime to m_0 with
// norm <= bound: a ~ b iff a b^{-1} has a generator with trivial residue.
Integer hm_enumerated(const Modulus& m, const Integer& bound);

// Least generator of the integral ideal I lying in R_{m,Γ}, if any.
std::optional<Element> monoid_generator(const Ideal& I, const ResidueSubgroup& gamma);

// I_m / i(K_{m,Γ}). An ideal a is keyed by (j, c): j its class in Cl(K), c the
// coset of [x] modulo H = <Γ, [R*]> where a = x c_j and c_j is a fixed
// integral representative of class j coprime to m_0. Index 0 is the class of R.
class QuotientGroup {
 public:
  using Index = std::size_t;

  explicit QuotientGroup(ResidueSubgroup gamma);

  const ResidueSubgroup& gamma() const { return gamma_; }
  const Modulus& modulus() const { return gamma_.modulus(); }
  const NumberField& field() const { return gamma_.field(); }
  const ClassGroup& class_group() const { return classes_; }
  // <Γ, [R*]>.
  const ResidueSubgroup& saturation() const { return saturated_; }

  std::size_t order() const { return reps_.size(); }
  // Least integral ideal coprime to m_0 in each class, ordered by ideal_less.
  const std::vector<Ideal>& representatives() const { return reps_; }
  Index identity() const { return 0; }

  // Throws NotCoprime unless v_P(a) = 0 at every P | m_0.
  Index class_of(const Ideal& a) const;
  Index multiply(Index i, Index j) const;
  Index inverse(Index i) const;
  std::size_t element_order(Index i) const;

 private:
  std::pair<int, std::size_t> key(const Ideal& a) const;

  ResidueSubgroup gamma_;
  ResidueSubgroup saturated_;
  std::vector<std::size_t> coset_label_;
  ClassGroup classes_;
  std::vector<Ideal> class_reps_;
  std::map<std::pair<int, std::size_t>, Index> index_;
  std::vector<Ideal> reps_;
};

struct PrimeClassData {
  long order;         // f_P: order of [P] in I_m / i(K_{m,Γ})
  Element generator;  // t_P: least element of R_{m,Γ} with t_P R = P^{f_P}
};

// Throws PrimeInSupport when P | m_0.
PrimeClassData prime_class_order(const PrimeIdeal& P, const QuotientGroup& Q);

// The semigroup R ⋊ R_{m,Γ} is right LCM iff the quotient is trivial.
bool is_right_lcm(const QuotientGroup& Q);

}  // namespace cmon
