#include "cmon/ray_class.hpp"

#include <algorithm>
#include <set>

#include "cmon/error.hpp"
#include "cmon/search.hpp"

namespace cmon {

namespace {

std::vector<Ideal> coprime_ideals_up_to(const Modulus& m, const Integer& bound) {
  std::vector<Ideal> out;
  for (auto& I : integral_ideals_up_to(m.field(), bound))
    if (m.coprime_to(I)) out.push_back(std::move(I));
  return out;
}

Integer initial_bound(const NumberField& K) { return std::max(Integer(1), minkowski_bound(K)); }

}  // namespace

Integer hm_formula(const Modulus& m) {
  const NumberField& K = m.field();
  auto G = make_residue_group(m);
  std::size_t unit_index = unit_image(G, unit_group(K)).order();
  Rational r = Rational(ClassGroup(K).order()) * Rational(Integer(1) << m.r0()) * Rational(m.finite().integral_norm());
  for (const auto& P : m.support()) r *= 1 - Rational(1) / Rational(P.norm());
  r /= Rational(static_cast<unsigned long>(unit_index));
  r.canonicalize();
  if (r.get_den() != 1) fail(ErrorCode::Internal, "class number formula produced a non-integer");
  return r.get_num();
}

Integer hm_enumeration_bound(const Modulus& m) { return initial_bound(m.field()) * m.finite().integral_norm(); }

Integer hm_enumerated(const Modulus& m, const Integer& bound) {
  const NumberField& K = m.field();
  auto G = make_residue_group(m);
  UnitGroup U = unit_group(K);
  // Residues of all units: torsion times powers of the fundamental unit.
  std::set<ResidueGroup::Index> unit_residues;
  for (const auto& z : U.torsion()) {
    for (Element u = z; unit_residues.insert(G->residue_of(u)).second && U.fundamental;) u = u * *U.fundamental;
  }
  std::vector<Ideal> buckets;
  for (const auto& I : coprime_ideals_up_to(m, bound)) {
    bool matched = false;
    for (const auto& B : buckets) {
      auto x = principal_generator(I / B);
      if (x && unit_residues.count(G->residue_of_fraction(*x))) {
        matched = true;
        break;
      }
    }
    if (!matched) buckets.push_back(I);
  }
  return Integer(static_cast<unsigned long>(buckets.size()));
}

std::optional<Element> monoid_generator(const Ideal& I, const ResidueSubgroup& gamma) {
  const NumberField& K = I.field();
  if (!I.is_integral()) fail(ErrorCode::Precondition, "monoid generator of a non-integral ideal");
  auto g = principal_generator(I);
  if (!g) return std::nullopt;
  UnitGroup U = unit_group(K);
  auto member = [&](const Element& x) { return in_congruence_monoid(x, gamma).member; };
  std::vector<Element> hits;
  if (!U.fundamental) {
    for (const auto& z : U.torsion())
      if (member(*g * z)) hits.push_back(*g * z);
    if (hits.empty()) return std::nullopt;
    return *std::min_element(hits.begin(), hits.end(), search_less);
  }
  // Residues of eps^k cycle, so one period decides existence and bounds |q|.
  const auto& G = gamma.group();
  std::size_t period = G.element_order(G.residue_of(*U.fundamental));
  Element e = from_integer(K, 1);
  std::optional<Rational> level_cap;
  for (std::size_t k = 0; k < period; ++k, e = e * *U.fundamental)
    for (const auto& z : U.torsion()) {
      Element c = *g * z * e;
      if (member(c) && (!level_cap || abs(c.q()) < *level_cap)) level_cap = abs(c.q());
    }
  if (!level_cap) return std::nullopt;
  Integer n = I.integral_norm();
  for (Integer y = 0; Rational(y) <= *level_cap; y += I.c()) {
    for (const auto& s : norm_solutions_at(I, n, y))
      if (member(s)) return s;
  }
  fail(ErrorCode::Internal, "generator level search missed a known generator");
}

QuotientGroup::QuotientGroup(ResidueSubgroup gamma)
    : gamma_(std::move(gamma)),
      saturated_(gamma_.join(unit_image(gamma_.group_ptr(), unit_group(gamma_.field())))),
      coset_label_(saturated_.coset_labels()),
      classes_(gamma_.field()) {
  const Modulus& m = modulus();
  const int h = classes_.order();
  class_reps_.resize(h, Ideal::unit(field()));
  std::vector<bool> seen(h, false);
  int found = 0;
  for (Integer B = initial_bound(field()); found < h; B *= 2)
    for (const auto& I : coprime_ideals_up_to(m, B)) {
      int j = classes_.class_index(I);
      if (!seen[j]) {
        seen[j] = true;
        class_reps_[j] = I;
        ++found;
      }
    }
  const std::size_t target = static_cast<std::size_t>(h) * saturated_.index();
  for (Integer B = initial_bound(field()) * m.finite().integral_norm(); reps_.size() < target; B *= 2) {
    for (const auto& I : coprime_ideals_up_to(m, B)) {
      auto k = key(I);
      if (index_.count(k)) continue;
      index_.emplace(k, reps_.size());
      reps_.push_back(I);
    }
  }
}

std::pair<int, std::size_t> QuotientGroup::key(const Ideal& a) const {
  int j = classes_.class_index(a);
  auto x = principal_generator(a / class_reps_[j]);
  if (!x) fail(ErrorCode::Internal, "class representative mismatch for " + a.to_string());
  return {j, coset_label_[gamma_.group().residue_of_fraction(*x)]};
}

QuotientGroup::Index QuotientGroup::class_of(const Ideal& a) const {
  require_same_field(a.field(), field());
  for (const auto& P : modulus().support())
    if (valuation(a, P) != 0) fail(ErrorCode::NotCoprime, a.to_string() + " is not coprime to " + modulus().finite().to_string());
  auto it = index_.find(key(a));
  if (it == index_.end()) fail(ErrorCode::Internal, "class of " + a.to_string() + " was not enumerated");
  return it->second;
}

QuotientGroup::Index QuotientGroup::multiply(Index i, Index j) const { return class_of(reps_.at(i) * reps_.at(j)); }

QuotientGroup::Index QuotientGroup::inverse(Index i) const { return class_of(reps_.at(i).inverse()); }

std::size_t QuotientGroup::element_order(Index i) const {
  std::size_t k = 1;
  Ideal power = reps_.at(i);
  while (class_of(power) != identity()) {
    power = power * reps_[i];
    ++k;
  }
  return k;
}

PrimeClassData prime_class_order(const PrimeIdeal& P, const QuotientGroup& Q) {
  if (Q.modulus().in_support(P)) fail(ErrorCode::PrimeInSupport, P.to_string() + " divides " + Q.modulus().finite().to_string());
  long f = static_cast<long>(Q.element_order(Q.class_of(P.ideal)));
  Ideal power = P.ideal.pow(static_cast<int>(f));
  auto t = monoid_generator(power, Q.gamma());
  if (!t) fail(ErrorCode::Internal, "no monoid generator for " + power.to_string());
  return {f, *t};
}

bool is_right_lcm(const QuotientGroup& Q) { return Q.order() == 1; }

}  // namespace cmon
