#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmon/ideal.hpp"
#include "cmon/units.hpp"

namespace cmon {

// m = m_inf * m_0: a set of real embedding labels and an integral ideal.
class Modulus {
 public:
  Modulus(const NumberField& K, std::vector<int> infinite, const Ideal& finite);
  static Modulus trivial(const NumberField& K);
  // "inf:<labels>;fin:<generators>"; either part may be omitted.
  static Modulus parse(const NumberField& K, const std::string& spec);

  const NumberField& field() const { return K_; }
  const std::vector<int>& infinite() const { return inf_; }
  const Ideal& finite() const { return fin_; }
  const std::vector<PrimeIdeal>& support() const { return support_; }
  int r0() const { return static_cast<int>(inf_.size()); }

  bool has_infinite(int embedding) const;
  bool in_support(const PrimeIdeal& P) const;
  bool coprime_to(const Element& a) const;
  bool coprime_to(const Ideal& I) const;
  // v_P(x) = 0 at every prime of the support.
  bool unit_at_support(const Element& x) const;
  // this | n.
  bool divides(const Modulus& n) const;

  std::string to_string() const;

  friend bool operator==(const Modulus& x, const Modulus& y) {
    return x.K_ == y.K_ && x.inf_ == y.inf_ && x.fin_ == y.fin_;
  }

 private:
  NumberField K_;
  std::vector<int> inf_;
  Ideal fin_;
  std::vector<PrimeIdeal> support_;
};

// Element of (R/m)* = {+-1}^{r0} x (R/m_0)*.
struct ResidueClass {
  std::vector<int> signs;
  Element residue;

  std::string to_string() const;
  friend bool operator==(const ResidueClass& x, const ResidueClass& y) {
    return x.signs == y.signs && x.residue == y.residue;
  }
};

// Writes x = a / b with a ∈ R and b ∈ R coprime to m_0, when v_P(x) >= 0 on
// the support; uses the coordinate denominator whenever it is coprime.
std::optional<std::pair<Element, Element>> localization_parts(const Element& x, const Modulus& m);

// The enumerated group, elements addressed by index. Index layout:
// sign_mask * |(R/m_0)*| + position of the residue in finite_units().
class ResidueGroup {
 public:
  using Index = std::size_t;

  explicit ResidueGroup(const Modulus& m);

  const Modulus& modulus() const { return m_; }
  std::size_t order() const { return finite_.size() << m_.r0(); }
  std::size_t finite_order() const { return finite_.size(); }
  const std::vector<Element>& finite_units() const { return finite_; }

  ResidueClass element(Index i) const;
  Index index_of(const ResidueClass& c) const;
  Index identity() const { return one_; }
  Index multiply(Index i, Index j) const;
  Index inverse(Index i) const;
  Index power(Index i, const Integer& e) const;
  std::size_t element_order(Index i) const;

  Index residue_of(const Element& a) const;
  Index residue_of_fraction(const Element& x) const;
  // Least element under search_less whose residue is the given class.
  Element realize(Index i) const;

  std::string class_string(Index i) const { return element(i).to_string(); }

 private:
  Index residue_slot(const Element& reduced) const;

  Modulus m_;
  std::vector<Element> finite_;
  std::vector<long> slot_;  // by x * c + y of the canonical representative
  Index one_ = 0;
};

class ResidueSubgroup {
 public:
  using Index = ResidueGroup::Index;

  static ResidueSubgroup trivial(std::shared_ptr<const ResidueGroup> G);
  static ResidueSubgroup full(std::shared_ptr<const ResidueGroup> G);
  static ResidueSubgroup generated(std::shared_ptr<const ResidueGroup> G, const std::vector<Index>& gens);
  static ResidueSubgroup from_elements(std::shared_ptr<const ResidueGroup> G, const std::vector<Element>& gens);
  // "trivial" | "full" | "gens:<element list>".
  static ResidueSubgroup parse(std::shared_ptr<const ResidueGroup> G, const std::string& spec);

  const ResidueGroup& group() const { return *G_; }
  const std::shared_ptr<const ResidueGroup>& group_ptr() const { return G_; }
  const Modulus& modulus() const { return G_->modulus(); }
  const NumberField& field() const { return G_->modulus().field(); }

  bool contains(Index i) const { return member_[i]; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return G_->order() / members_.size(); }
  const std::vector<Index>& members() const { return members_; }
  const std::vector<Index>& generators() const { return gens_; }
  // One sorted coset per entry, ordered by least member.
  std::vector<std::vector<Index>> cosets() const;
  // Position of the coset containing g, consistent with cosets().
  std::vector<std::size_t> coset_labels() const;

  ResidueSubgroup join(const ResidueSubgroup& other) const;
  std::string spec() const;

  friend bool operator==(const ResidueSubgroup& x, const ResidueSubgroup& y) {
    return x.modulus() == y.modulus() && x.members_ == y.members_;
  }

 private:
  ResidueSubgroup(std::shared_ptr<const ResidueGroup> G, std::vector<Index> gens,
                  std::vector<Element> gen_elements, std::string keyword);

  std::shared_ptr<const ResidueGroup> G_;
  std::vector<Index> gens_;
  std::vector<Element> gen_elements_;
  std::string keyword_;
  std::vector<Index> members_;
  std::vector<bool> member_;
};

std::shared_ptr<const ResidueGroup> make_residue_group(const Modulus& m);

// {[u]_m : u ∈ R*}, generated by the torsion generator and fundamental unit.
ResidueSubgroup unit_image(std::shared_ptr<const ResidueGroup> G, const UnitGroup& U);

enum class MembershipReason { Member, NotCoprime, NotInGamma };
const char* reason_name(MembershipReason r);

struct Membership {
  bool member;
  MembershipReason reason;
};

Membership in_congruence_monoid(const Element& a, const ResidueSubgroup& gamma);
// a ∈ R_{m,1}: integral, a = 1 mod m_0, positive at every w | m_inf.
bool in_ray_monoid(const Element& a, const Modulus& m);

// Elements of R_{m,Gamma} with |N| <= norm_bound, sorted by search_less. For
// real quadratic fields the coordinate box |p|, |q| <= height_bound applies;
// a negative height_bound means height_bound = norm_bound.
std::vector<Element> enumerate_monoid(const ResidueSubgroup& gamma, const Integer& norm_bound,
                                      Integer height_bound = -1);

}  // namespace cmon
