#pragma once

#include <random>
#include <string>
#include <vector>

#include "cmon/ideal.hpp"
#include "cmon/residue.hpp"
#include "cmon/search.hpp"
#include "cmon/semilattice.hpp"

namespace testsupport {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed5eedULL);
  return gen;
}

inline long uniform(long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline cmon::Element el(const cmon::NumberField& K, long p, long q = 0) {
  return cmon::Element(K, cmon::Rational(p), cmon::Rational(q));
}

inline cmon::Element random_integral(const cmon::NumberField& K, long bound) {
  long q = K.is_quadratic() ? uniform(-bound, bound) : 0;
  return el(K, uniform(-bound, bound), q);
}

inline cmon::Ideal random_integral_ideal(const cmon::NumberField& K, long coord, long max_norm) {
  for (;;) {
    auto x = random_integral(K, coord);
    auto y = random_integral(K, coord);
    if (x.is_zero() && y.is_zero()) continue;
    auto I = cmon::Ideal::generated_by(K, {x, y});
    if (I.integral_norm() <= max_norm) return I;
  }
}

inline std::vector<cmon::NumberField> desk_fields() {
  return {cmon::NumberField::rational(), cmon::NumberField::quadratic(-1), cmon::NumberField::quadratic(2),
          cmon::NumberField::quadratic(-5), cmon::NumberField::quadratic(-3), cmon::NumberField::quadratic(5),
          cmon::NumberField::quadratic(3), cmon::NumberField::quadratic(-15)};
}

// Product of random primes outside the support of m, norm at most max_norm.
inline cmon::Ideal random_ideal_coprime(const cmon::Modulus& m, long max_norm) {
  const auto& K = m.field();
  std::vector<cmon::PrimeIdeal> primes;
  for (auto& P : cmon::primes_up_to(K, max_norm))
    if (!m.in_support(P)) primes.push_back(P);
  cmon::Ideal I = cmon::Ideal::unit(K);
  long steps = uniform(0, 4);
  for (long k = 0; k < steps; ++k) {
    const auto& P = primes[uniform(0, static_cast<long>(primes.size()) - 1)];
    cmon::Ideal J = I * P.ideal;
    if (J.integral_norm() > max_norm) break;
    I = J;
  }
  return I;
}

// Random element of A ∩ R_{m,1}.
inline cmon::Element random_ray_element(const cmon::Ideal& A, const cmon::Modulus& m) {
  const auto& K = A.field();
  cmon::Integer target = A.integral_norm() * m.finite().integral_norm() * (cmon::Integer(1) << m.r0()) * 12;
  for (;; target *= 2) {
    cmon::Integer h = cmon::isqrt(target) + 2;
    cmon::Integer n = K.is_real() && K.is_quadratic() ? cmon::Integer(h * h * (cmon::abs(cmon::Integer(K.d())) + 2)) : target;
    std::vector<cmon::Element> pool;
    for (auto& e : cmon::lattice_points(A, n, h))
      if (cmon::in_ray_monoid(e, m)) pool.push_back(e);
    if (pool.size() >= 3) return pool[uniform(0, static_cast<long>(pool.size()) - 1)];
  }
}

struct FieldModuli {
  cmon::NumberField field;
  std::vector<std::string> moduli;
};

// Fields and moduli of the constructive-lemma suites.
inline std::vector<FieldModuli> lemma_contexts() {
  using cmon::NumberField;
  return {{NumberField::rational(), {"trivial", "inf:0;fin:5", "fin:4", "inf:0;fin:3", "inf:0"}},
          {NumberField::quadratic(-1), {"trivial", "fin:1+2*w", "fin:3", "fin:(2,1+w)"}},
          {NumberField::quadratic(2), {"trivial", "inf:0;fin:3", "inf:0,1;fin:w", "inf:1;fin:5", "inf:0,1"}},
          {NumberField::quadratic(-5), {"trivial", "fin:3", "fin:(2,1+w)"}}};
}

// Random element of R_{m,Γ} by rejection sampling.
inline cmon::Element random_monoid_element(const cmon::ResidueSubgroup& gamma, long coord = 12) {
  const auto& K = gamma.field();
  for (long tries = 0;; ++tries) {
    auto a = random_integral(K, coord + tries / 200);
    if (!a.is_zero() && cmon::in_congruence_monoid(a, gamma).member) return a;
  }
}

inline cmon::ConstructibleIdeal random_constructible(const cmon::Context& ctx, long max_norm, long coord = 30) {
  auto A = random_ideal_coprime(ctx->modulus(), max_norm);
  return cmon::ConstructibleIdeal::make(ctx, random_integral(ctx->field(), coord), A);
}

inline cmon::SemigroupElement random_semigroup_element(const cmon::Context& ctx, long coord = 12) {
  return {random_integral(ctx->field(), coord), random_monoid_element(*ctx, coord)};
}

// Random strict subcoset of X: ideal A P_1 ... P_k with k >= 1, rep moved
// within x + A. Extra primes are added only while the norm stays in range.
inline cmon::ConstructibleIdeal random_strict_subcoset(const cmon::ConstructibleIdeal& X, long max_norm) {
  const auto& ctx = X.context();
  const auto& K = ctx->field();
  std::vector<cmon::PrimeIdeal> primes;
  for (auto& P : cmon::primes_up_to(K, 30))
    if (!ctx->modulus().in_support(P)) primes.push_back(P);
  auto pick = [&] { return primes[uniform(0, static_cast<long>(primes.size()) - 1)].ideal; };
  cmon::Ideal B = X.ideal() * pick();
  while (uniform(0, 2) == 0) {
    cmon::Ideal C = B * pick();
    if (C.integral_norm() > max_norm) break;
    B = C;
  }
  cmon::Element shift(K);
  for (const auto& e : X.ideal().basis()) shift = shift + e * cmon::Rational(uniform(-6, 6));
  return cmon::ConstructibleIdeal::make(ctx, X.rep() + shift, B);
}

// Canonical residues r mod A ∩ B lying in both cosets, by scanning.
inline std::vector<cmon::Element> brute_coset_meet(const cmon::ConstructibleIdeal& X, const cmon::ConstructibleIdeal& Y) {
  std::vector<cmon::Element> out;
  for (const auto& r : cmon::residue_representatives(X.ideal().intersect(Y.ideal())))
    if (X.ideal().contains(r - X.rep()) && Y.ideal().contains(r - Y.rep())) out.push_back(r);
  return out;
}

}  // namespace testsupport
