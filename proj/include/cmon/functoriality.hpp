#pragma once

#include <cstddef>
#include <optional>

#include "cmon/residue.hpp"

namespace cmon {

// A pair (m, Γ) is carried by its subgroup: Γ knows its residue group and
// modulus.
using MonoidDescriptor = ResidueSubgroup;

// π_{n,m}: (R/n)* -> (R/m)* for m | n; restricts signs, reduces residues.
ResidueGroup::Index project_residue(const ResidueGroup& from, const ResidueGroup& to, ResidueGroup::Index i);

// (m, Γ) <= (n, Λ) iff m | n and π_{n,m}(Λ) ⊆ Γ. Throws FieldMismatch.
bool leq_pairs(const MonoidDescriptor& lower, const MonoidDescriptor& upper);

// The pair with the least modulus defining the same monoid R_{m,Γ}: Γ descends
// to d | m with the same support exactly when ker π_{m,d} ⊆ Γ, and such d are
// closed under gcd.
MonoidDescriptor primitive_form(const MonoidDescriptor& P);

struct InclusionReport {
  bool criterion;                   // order criterion after primitive reduction of the container
  bool literal_order;               // order criterion on the pairs as given
  bool enumerated;                  // no counterexample up to the bound
  std::optional<Element> witness;   // least counterexample under search order
  std::size_t checked = 0;
  bool agree() const { return criterion == enumerated; }
};

// Decides R_{upper} ⊆ R_{lower} and cross-checks by enumerating R_{upper} with
// |N| <= bound.
InclusionReport monoid_inclusion_check(const MonoidDescriptor& lower, const MonoidDescriptor& upper, const Integer& bound);

struct PositivityResult {
  bool forced;                          // w | m_inf
  std::optional<Element> counterexample;  // x ∈ R_{m,1} with w(x) < 0
};

// Throws InvalidArgument for a label that is not a real embedding and
// BoundExhausted when no counterexample has |N| <= bound.
PositivityResult ray_positivity_detect(int embedding, const Modulus& m, const Integer& bound);

// Modulus of K' induced from a modulus of Q under Q ↪ K': every real
// embedding of K' when m_inf is nontrivial, and m_0 R'.
Modulus induced_modulus(const Modulus& m, const NumberField& target);

// φ: (Z/m)* -> (R'/m~)* for m~ the induced modulus, carried by its group.
ResidueGroup::Index residue_pushforward(const ResidueGroup& from, const ResidueGroup& to, ResidueGroup::Index i);
Element include_element(const Element& x, const NumberField& target);

// Decides i(R_{m,Γ}) ⊆ R'_{m',Γ'} by m' | m~ and π(φ(Γ)) ⊆ Γ' and cross-checks
// by enumerating R_{m,Γ} with |x| <= bound.
InclusionReport field_inclusion_check(const MonoidDescriptor& base, const MonoidDescriptor& target, const Integer& bound);

}  // namespace cmon
