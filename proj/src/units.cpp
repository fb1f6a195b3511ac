#include "cmon/units.hpp"

#include "cmon/error.hpp"

namespace cmon {

namespace {

// Continued fraction of w = (P + sqrt D) / Q; the first convergent h/k with
// |N(h - k w)| = 1 yields the fundamental unit up to sign and conjugation.
Element fundamental_unit(const NumberField& K) {
  const Integer D = K.d();
  Integer P = K.omega_form() == OmegaForm::Half ? 1 : 0;
  Integer Q = K.omega_form() == OmegaForm::Half ? 2 : 1;
  const Integer s = isqrt(D);
  Integer h_prev = 1, h = 0, k_prev = 0, k = 1;
  for (int iter = 0; iter < 1'000'000; ++iter) {
    Integer a = Q > 0 ? floor_div(P + s, Q) : Integer(-floor_div(P + s, -Q) - 1);
    Integer h_next = a * h_prev + h, k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    Element x = from_integer(K, h_prev) - Element::omega(K) * Rational(k_prev);
    if (abs(x.norm()) == 1) {
      Element best = x;
      for (const Element& cand : {x, -x, x.conj(), -x.conj()})
        if (cand.sign_at(0) > 0 && cand.approx_at(0) > 1.0) best = cand;
      return best;
    }
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  fail(ErrorCode::ScaleExceeded, "continued fraction of w did not reach a unit");
}

}  // namespace

std::vector<Element> UnitGroup::torsion() const {
  std::vector<Element> out;
  Element z = from_integer(torsion_generator.field(), 1);
  for (int i = 0; i < torsion_order; ++i) {
    out.push_back(z);
    z *= torsion_generator;
  }
  return out;
}

UnitGroup unit_group(const NumberField& K) {
  if (K.is_rational()) return UnitGroup{2, from_integer(K, -1), std::nullopt};
  if (K.d() == -1) return UnitGroup{4, Element::omega(K), std::nullopt};
  if (K.d() == -3) return UnitGroup{6, Element::omega(K), std::nullopt};
  if (K.d() < 0) return UnitGroup{2, from_integer(K, -1), std::nullopt};
  return UnitGroup{2, from_integer(K, -1), fundamental_unit(K)};
}

}  // namespace cmon
