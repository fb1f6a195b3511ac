#include "cmon/functoriality.hpp"

#include <algorithm>

#include "cmon/error.hpp"

namespace cmon {

namespace {

ResidueClass restrict_signs(const ResidueClass& c, const Modulus& from, const Modulus& to) {
  ResidueClass out{{}, reduce_mod(c.residue, to.finite())};
  for (int w : to.infinite()) {
    auto it = std::find(from.infinite().begin(), from.infinite().end(), w);
    out.signs.push_back(c.signs[static_cast<std::size_t>(it - from.infinite().begin())]);
  }
  return out;
}

bool descends(const ResidueSubgroup& P, const Modulus& d) {
  auto H = make_residue_group(d);
  const auto& G = P.group();
  for (ResidueGroup::Index i = 0; i < G.order(); ++i)
    if (!P.contains(i) && project_residue(G, *H, i) == H->identity()) return false;
  return true;
}

// Applies the criterion, then enumerates candidates and tests membership.
template <class Candidates, class Member>
InclusionReport cross_check(bool criterion, bool literal, const Candidates& candidates, Member member) {
  InclusionReport r{criterion, literal, true, std::nullopt, 0};
  for (const auto& x : candidates) {
    ++r.checked;
    if (!member(x)) {
      r.enumerated = false;
      r.witness = x;
      break;
    }
  }
  return r;
}

// Already in search order.
std::vector<Element> sorted_monoid(const MonoidDescriptor& P, const Integer& bound) { return enumerate_monoid(P, bound); }

}  // namespace

ResidueGroup::Index project_residue(const ResidueGroup& from, const ResidueGroup& to, ResidueGroup::Index i) {
  if (!to.modulus().divides(from.modulus()))
    fail(ErrorCode::Precondition, to.modulus().to_string() + " does not divide " + from.modulus().to_string());
  return to.index_of(restrict_signs(from.element(i), from.modulus(), to.modulus()));
}

bool leq_pairs(const MonoidDescriptor& lower, const MonoidDescriptor& upper) {
  require_same_field(lower.field(), upper.field());
  if (!lower.modulus().divides(upper.modulus())) return false;
  for (auto i : upper.members())
    if (!lower.contains(project_residue(upper.group(), lower.group(), i))) return false;
  return true;
}

MonoidDescriptor primitive_form(const MonoidDescriptor& P) {
  const NumberField& K = P.field();
  std::vector<int> inf = P.modulus().infinite();
  Ideal fin = P.modulus().finite();
  for (std::size_t k = 0; k < inf.size();) {
    auto fewer = inf;
    fewer.erase(fewer.begin() + static_cast<long>(k));
    if (descends(P, Modulus(K, fewer, fin)))
      inf = std::move(fewer);
    else
      ++k;
  }
  // Support primes keep exponent >= 1: coprimality is part of the monoid.
  for (const auto& Pr : P.modulus().support())
    while (valuation(fin, Pr) > 1) {
      Ideal smaller = fin * Pr.ideal.inverse();
      if (!descends(P, Modulus(K, inf, smaller))) break;
      fin = smaller;
    }
  Modulus d(K, inf, fin);
  if (d == P.modulus()) return P;
  auto H = make_residue_group(d);
  std::vector<ResidueGroup::Index> gens;
  for (auto i : P.members()) gens.push_back(project_residue(P.group(), *H, i));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return ResidueSubgroup::generated(H, gens);
}

InclusionReport monoid_inclusion_check(const MonoidDescriptor& lower, const MonoidDescriptor& upper, const Integer& bound) {
  require_same_field(lower.field(), upper.field());
  bool literal = leq_pairs(lower, upper);
  bool criterion = leq_pairs(primitive_form(lower), upper);
  return cross_check(criterion, literal, sorted_monoid(upper, bound),
                     [&](const Element& x) { return in_congruence_monoid(x, lower).member; });
}

PositivityResult ray_positivity_detect(int embedding, const Modulus& m, const Integer& bound) {
  const auto labels = m.field().real_embeddings();
  if (std::find(labels.begin(), labels.end(), embedding) == labels.end())
    fail(ErrorCode::InvalidArgument, "embedding " + std::to_string(embedding) + " is not a real embedding of " + m.field().spec());
  if (m.has_infinite(embedding)) return {true, std::nullopt};
  auto ray = ResidueSubgroup::trivial(make_residue_group(m));
  for (const auto& x : sorted_monoid(ray, bound))
    if (x.sign_at(embedding) < 0) return {false, x};
  fail(ErrorCode::BoundExhausted, "no element of R_{m,1} negative at embedding " + std::to_string(embedding) +
                                      " with norm up to " + bound.get_str());
}

Modulus induced_modulus(const Modulus& m, const NumberField& target) {
  if (!m.field().is_rational()) fail(ErrorCode::InvalidArgument, "field inclusions start from Q");
  if (!target.is_quadratic()) fail(ErrorCode::InvalidArgument, "the target field must be quadratic");
  std::vector<int> inf = m.r0() > 0 ? target.real_embeddings() : std::vector<int>{};
  return Modulus(target, inf, Ideal::principal(from_integer(target, m.finite().a())));
}

Element include_element(const Element& x, const NumberField& target) {
  if (!x.field().is_rational()) fail(ErrorCode::InvalidArgument, "field inclusions start from Q");
  return Element(target, x.p(), 0);
}

ResidueGroup::Index residue_pushforward(const ResidueGroup& from, const ResidueGroup& to, ResidueGroup::Index i) {
  const NumberField& K = to.modulus().field();
  if (!(to.modulus() == induced_modulus(from.modulus(), K)))
    fail(ErrorCode::Precondition, to.modulus().to_string() + " is not the induced modulus");
  ResidueClass c = from.element(i);
  // Every real embedding of K' restricts to the one embedding of Q.
  ResidueClass out{std::vector<int>(to.modulus().infinite().size(), c.signs.empty() ? 1 : c.signs[0]),
                   include_element(c.residue, K)};
  return to.index_of(out);
}

InclusionReport field_inclusion_check(const MonoidDescriptor& base, const MonoidDescriptor& target, const Integer& bound) {
  const NumberField& K = target.field();
  auto induced = make_residue_group(induced_modulus(base.modulus(), K));
  auto criterion_for = [&](const MonoidDescriptor& T) {
    if (!T.modulus().divides(induced->modulus())) return false;
    for (auto g : base.members())
      if (!T.contains(project_residue(*induced, T.group(), residue_pushforward(base.group(), *induced, g)))) return false;
    return true;
  };
  bool literal = criterion_for(target);
  bool criterion = criterion_for(primitive_form(target));
  return cross_check(criterion, literal, sorted_monoid(base, bound),
                     [&](const Element& x) { return in_congruence_monoid(include_element(x, K), target).member; });
}

}  // namespace cmon
