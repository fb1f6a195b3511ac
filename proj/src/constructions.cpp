#include "cmon/constructions.hpp"

#include <algorithm>

#include "cmon/error.hpp"

namespace cmon {

namespace {

Integer ceil_of(const Rational& r) { return -floor_div(-r.get_num(), r.get_den()); }

// Search limits implied by a known valid candidate.
struct Bounds {
  Integer norm;
  Integer height;
};

Bounds bounds_of(const Element& candidate) {
  return {ceil_of(abs(candidate.norm())), ceil_of(candidate.height())};
}

Element least_or(const Element& candidate, const Ideal& lattice, const std::function<bool(const Element&)>& pred) {
  Bounds b = bounds_of(candidate);
  auto found = least_satisfying(lattice, b.norm, b.height, pred);
  return found ? *found : candidate;
}

void require_ideal_context(const Ideal& A, const Modulus& m) {
  require_same_field(A.field(), m.field());
  if (!A.is_integral()) fail(ErrorCode::Precondition, "ideal " + A.to_string() + " is not integral");
  if (!m.coprime_to(A)) fail(ErrorCode::NotCoprime, "ideal " + A.to_string() + " is not coprime to " + m.finite().to_string());
}

void require_generator(const Element& a, const Ideal& A, const Modulus& m) {
  require_same_field(a.field(), m.field());
  if (a.is_zero()) fail(ErrorCode::ZeroInput, "zero generator");
  if (!A.contains(a)) fail(ErrorCode::Precondition, a.to_string() + " is not in " + A.to_string());
  if (!in_ray_monoid(a, m)) fail(ErrorCode::Precondition, a.to_string() + " is not in R_{m,1} for m = " + m.to_string());
}

bool totally_positive(const Element& x) {
  const NumberField& K = x.field();
  for (int w = 0; w < K.real_embedding_count(); ++w)
    if (x.sign_at(w) <= 0) return false;
  return true;
}

}  // namespace

QuotientPair monoid_quotient_rep(const Element& x, const ResidueSubgroup& gamma) {
  const ResidueGroup& G = gamma.group();
  const Modulus& m = gamma.modulus();
  require_same_field(x.field(), m.field());
  if (x.is_zero() || !m.unit_at_support(x))
    fail(ErrorCode::NotInKmGamma, x.to_string() + " is not a unit at the support of " + m.to_string());
  auto cls = G.residue_of_fraction(x);
  if (!gamma.contains(cls))
    fail(ErrorCode::NotInKmGamma, "[" + x.to_string() + "] = " + G.class_string(cls) + " is not in the subgroup");
  auto parts = localization_parts(x, m);
  Element c = G.realize(G.inverse(G.residue_of(parts->first)));
  return {parts->first * c, parts->second * c};
}

std::optional<QuotientPair> in_localization(const Element& x, const Modulus& m) {
  require_same_field(x.field(), m.field());
  auto parts = localization_parts(x, m);
  if (!parts) return std::nullopt;
  return QuotientPair{parts->first, parts->second};
}

Element uniformizer(const PrimeIdeal& P) {
  Ideal P2 = P.ideal * P.ideal;
  for (Integer bound = P2.integral_norm();; bound *= 4) {
    auto pi = least_satisfying(P.ideal, bound, bound, [&](const Element& e) { return !P2.contains(e); });
    if (pi) return *pi;
  }
}

Element approx_element(const std::vector<Prescription>& prescribed, const Modulus& m) {
  const NumberField& K = m.field();
  for (std::size_t i = 0; i < prescribed.size(); ++i) {
    const auto& pr = prescribed[i];
    require_same_field(pr.prime.ideal.field(), K);
    if (pr.exponent < 0) fail(ErrorCode::InvalidArgument, "prescribed valuations must be nonnegative");
    if (m.in_support(pr.prime)) fail(ErrorCode::PrimeInSupport, pr.prime.to_string() + " divides " + m.finite().to_string());
    for (std::size_t j = 0; j < i; ++j)
      if (prescribed[j].prime == pr.prime) fail(ErrorCode::InvalidArgument, "prime " + pr.prime.to_string() + " prescribed twice");
  }
  const Element one = from_integer(K, 1);
  std::vector<Congruence> system;
  Ideal lift_modulus = m.finite();
  Ideal lattice = Ideal::unit(K);
  std::vector<Ideal> too_deep;
  for (const auto& pr : prescribed) {
    Ideal deeper = pr.prime.ideal.pow(static_cast<int>(pr.exponent + 1));
    system.push_back({pow(uniformizer(pr.prime), pr.exponent), deeper});
    lift_modulus = lift_modulus * deeper;
    lattice = lattice * pr.prime.ideal.pow(static_cast<int>(pr.exponent));
    too_deep.push_back(std::move(deeper));
  }
  if (!m.finite().is_unit()) system.push_back({one, m.finite()});
  Element y = system.empty() ? one : crt_solve(system);
  Element candidate = totally_positive_lift(y, lift_modulus);

  auto valid = [&](const Element& x) {
    if (!m.finite().contains(x - one) || !totally_positive(x)) return false;
    for (const auto& I : too_deep)
      if (I.contains(x)) return false;
    return true;
  };
  if (!valid(candidate)) fail(ErrorCode::Internal, "approximation construction produced an invalid element");
  return least_or(candidate, lattice, valid);
}

Element second_generator(const Element& a, const Ideal& A, const Modulus& m) {
  require_ideal_context(A, m);
  require_generator(a, A, m);
  Ideal cofactor = Ideal::principal(a) / A;
  std::vector<Prescription> pres;
  for (const auto& src : {A, cofactor})
    for (const auto& P : support(src))
      if (std::none_of(pres.begin(), pres.end(), [&](const Prescription& q) { return q.prime == P; }))
        pres.push_back({P, valuation(A, P)});
  // v_P(b) = v_P(A) on supp(A) ∪ supp(aA^{-1}) forces aR + bR = A.
  Element candidate = approx_element(pres, m);
  Ideal aR = Ideal::principal(a);
  auto valid = [&](const Element& b) { return in_ray_monoid(b, m) && aR + Ideal::principal(b) == A; };
  if (!valid(candidate)) fail(ErrorCode::Internal, "second generator construction failed");
  return least_or(candidate, A, valid);
}

Element cutdown_pair(const Ideal& A, const Element& a, const Modulus& m) {
  require_ideal_context(A, m);
  require_generator(a, A, m);
  const NumberField& K = m.field();
  const Ideal R = Ideal::unit(K);
  // With aR = A c_a and b generating c_a together with a, (a/b)R ∩ R = A.
  Ideal cofactor = Ideal::principal(a) / A;
  Element candidate = second_generator(a, cofactor, m);
  auto valid = [&](const Element& b) {
    return in_ray_monoid(b, m) && Ideal::principal(a / b).intersect(R) == A;
  };
  if (!valid(candidate)) fail(ErrorCode::Internal, "cutdown construction failed");
  return least_or(candidate, R, valid);
}

Integer default_raygen_bound(const Ideal& A, const Modulus& m) {
  return 20 * A.integral_norm() * m.finite().integral_norm();
}

RayGeneration ray_generates_check(const Ideal& A, const Modulus& m, const Integer& bound) {
  require_ideal_context(A, m);
  const NumberField& K = m.field();
  const bool boxed = K.is_real() && K.is_quadratic();
  const Element one = from_integer(K, 1);
  RayGeneration out{false, {}};
  std::optional<Ideal> span;
  // Shells of doubling size; earlier shells precede later ones in the scan.
  Integer prev = 0;
  for (Integer s = boxed ? Integer(1) : A.integral_norm(); prev < bound; s *= 2) {
    if (s > bound) s = bound;
    for (const auto& e : boxed ? lattice_points(A, bound, s) : lattice_points(A, s, s)) {
      if (cmp(boxed ? e.height() : abs(e.norm()), Rational(prev)) <= 0) continue;
      if (!m.finite().contains(e - one) || !totally_positive(e)) continue;
      out.generators.push_back(e);
      span = span ? *span + Ideal::principal(e) : Ideal::principal(e);
      if (*span == A) {
        out.generates = true;
        return out;
      }
    }
    prev = s;
  }
  return out;
}

}  // namespace cmon
