#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmon/constructions.hpp"
#include "cmon/ray_class.hpp"

namespace cmon {

using Context = std::shared_ptr<const ResidueSubgroup>;

Context make_context(const ResidueSubgroup& gamma);
// Trivial modulus with the full (trivial) residue group.
Context full_context(const NumberField& K);
bool same_context(const Context& x, const Context& y);

// (b, a) ∈ R ⋊ R_{m,Γ}; (b, a)(d, c) = (b + ad, ac).
struct SemigroupElement {
  Element b;
  Element a;

  SemigroupElement operator*(const SemigroupElement& o) const { return {b + a * o.b, a * o.a}; }
  std::string to_string() const { return "(" + b.to_string() + "," + a.to_string() + ")"; }
  friend bool operator==(const SemigroupElement& x, const SemigroupElement& y) { return x.b == y.b && x.a == y.a; }
};

// Throws Precondition unless b is integral and a ∈ R_{m,Γ}.
SemigroupElement make_semigroup_element(const Context& ctx, const Element& b, const Element& a);

// Empty, or the set (x + A) × (A ∩ R_{m,Γ}) for an integral ideal A coprime
// to m_0, stored with x reduced modulo A. Encoding equality is set equality.
class ConstructibleIdeal {
 public:
  static ConstructibleIdeal empty(Context ctx);
  static ConstructibleIdeal make(Context ctx, const Element& rep, const Ideal& ideal);
  // "<rep>+<ideal>", split at the last top-level '+', or "empty".
  static ConstructibleIdeal parse(Context ctx, const std::string& literal);

  const Context& context() const { return ctx_; }
  bool is_empty() const { return !ideal_.has_value(); }
  const Element& rep() const;
  const Ideal& ideal() const;

  // Y ⊆ this: A | B and y - x ∈ A.
  bool contains(const ConstructibleIdeal& Y) const;
  bool contains(const SemigroupElement& s) const;
  std::string to_string() const;

  friend bool operator==(const ConstructibleIdeal& x, const ConstructibleIdeal& y);
  friend bool operator!=(const ConstructibleIdeal& x, const ConstructibleIdeal& y) { return !(x == y); }

 private:
  ConstructibleIdeal(Context ctx, std::optional<Element> rep, std::optional<Ideal> ideal)
      : ctx_(std::move(ctx)), rep_(std::move(rep)), ideal_(std::move(ideal)) {}

  Context ctx_;
  std::optional<Element> rep_;
  std::optional<Ideal> ideal_;
};

ConstructibleIdeal meet(const ConstructibleIdeal& X, const ConstructibleIdeal& Y);
// (b, a)X = (b + ax + aA) × (aA ∩ R_{m,Γ}).
ConstructibleIdeal act(const SemigroupElement& g, const ConstructibleIdeal& X);
// Same data over the trivial modulus.
ConstructibleIdeal embed_full(const ConstructibleIdeal& X);

// An element of X outside every cover, or nullopt when some cover equals X.
// Throws CoverNotContained for a cover not inside X.
std::optional<SemigroupElement> independence_witness(const ConstructibleIdeal& X,
                                                     const std::vector<ConstructibleIdeal>& covers);

enum class Relation { Ta, Tb, Tc, Td, I, II };
const char* relation_name(Relation r);
std::optional<Relation> parse_relation(const std::string& s);

struct RelationSample {
  SemigroupElement g;
  SemigroupElement h;
  ConstructibleIdeal X;
  Element x;  // a ring element for the translation relations
};

struct RelationReport {
  Relation which;
  std::size_t checked = 0;
  std::vector<std::string> violations;
};

// Set-level forms in the combinatorial model:
//   Ta  translations compose: (x,1)(y,1)X = (x+y,1)X
//   Tb  (0,a)(x,1)X = (ax,1)(0,a)X
//   Tc  (0,a)(0 + B) = 0 + aB, with B the ideal of X
//   Td  (x + A) ⊓ (0 + A) is empty iff x ∉ A, and equals 0 + A otherwise
//   I   (gh)X = g(hX)
//   II  h ∈ X iff gh ∈ gX, and g(X ⊓ Y) = gX ⊓ gY with Y = hX
RelationReport relation_check(Relation which, const std::vector<RelationSample>& samples);

inline constexpr long kDefaultPrimeSearchNorm = 1L << 20;

// Least prime P ∉ S (by prime_less) with class_of(P) = target, containing no
// nonzero avoid element and dividing no avoid ideal. Throws BoundExhausted
// past max_norm.
PrimeIdeal prime_in_class_avoiding(const QuotientGroup& Q, QuotientGroup::Index target,
                                   const std::vector<Element>& avoid_elements, const std::vector<Ideal>& avoid_ideals,
                                   long max_norm = kDefaultPrimeSearchNorm);

struct Subcoset {
  Element rep;
  Ideal ideal;
};

// z + B ⊆ base with B in the target class and no subcoset inside z + B.
// Realized as 0 + P base for a prime P in class target [base]^{-1}; returns
// 0 + base itself when there are no subcosets and base already has the
// target class. Throws SubcosetNotProper for a subcoset not strictly in base.
ConstructibleIdeal faithfulness_witness(const QuotientGroup& Q, QuotientGroup::Index target,
                                        const Ideal& base, const std::vector<Subcoset>& subcosets,
                                        long max_norm = kDefaultPrimeSearchNorm);

}  // namespace cmon
