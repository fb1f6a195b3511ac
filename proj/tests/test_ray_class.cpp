#include <set>

#include "cmon/error.hpp"
#include "cmon/ray_class.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmon;
using testsupport::el;

namespace {

QuotientGroup quotient(const NumberField& K, const std::string& m, const std::string& gamma) {
  auto G = make_residue_group(Modulus::parse(K, m));
  return QuotientGroup(ResidueSubgroup::parse(G, gamma));
}

long euler_phi(long n) {
  long r = 0;
  for (long k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
  return r;
}

// Brute-force class count with the subgroup: a ~ b iff a/b = xR with x in K_{m,Γ}.
std::size_t brute_quotient_order(const ResidueSubgroup& gamma, const Integer& bound) {
  const auto& m = gamma.modulus();
  const auto& G = gamma.group();
  auto U = unit_group(m.field());
  std::set<std::size_t> unit_residues;
  for (const auto& z : U.torsion()) {
    Element e = z;
    for (std::size_t k = 0; k <= (U.fundamental ? G.order() : 0); ++k) {
      unit_residues.insert(G.residue_of(e));
      if (U.fundamental) e = e * *U.fundamental;
    }
  }
  std::vector<Ideal> buckets;
  for (const auto& I : integral_ideals_up_to(m.field(), bound)) {
    if (!m.coprime_to(I)) continue;
    bool hit = false;
    for (const auto& B : buckets) {
      auto x = principal_generator(I / B);
      if (!x) continue;
      auto r = G.residue_of_fraction(*x);
      for (auto u : unit_residues)
        if (gamma.contains(G.multiply(r, u))) hit = true;
      if (hit) break;
    }
    if (!hit) buckets.push_back(I);
  }
  return buckets.size();
}

}  // namespace

TEST_CASE("hm_order examples") {
  auto Q = NumberField::rational();
  auto m5 = Modulus::parse(Q, "inf:0;fin:5");
  CHECK(hm_formula(m5) == 4);
  CHECK(hm_enumerated(m5, hm_enumeration_bound(m5)) == 4);
  CHECK(hm_formula(Modulus::trivial(Q)) == 1);
  auto G = NumberField::quadratic(-1);
  auto mi = Modulus::parse(G, "fin:1+2*w");
  CHECK(hm_formula(mi) == 1);
  CHECK(hm_enumerated(mi, hm_enumeration_bound(mi)) == 1);
  auto F = NumberField::quadratic(-5);
  CHECK(hm_formula(Modulus::trivial(F)) == 2);
  CHECK(hm_enumerated(Modulus::trivial(F), hm_enumeration_bound(Modulus::trivial(F))) == 2);
}

TEST_CASE("hm over Q equals the totient") {
  auto Q = NumberField::rational();
  for (long n : {3L, 4L, 5L, 8L, 15L, 7L, 12L}) {
    auto m = Modulus::parse(Q, "inf:0;fin:" + std::to_string(n));
    CHECK(hm_formula(m) == euler_phi(n));
    CHECK(hm_enumerated(m, hm_enumeration_bound(m)) == euler_phi(n));
    auto mf = Modulus::parse(Q, "fin:" + std::to_string(n));
    CHECK(hm_formula(mf) == std::max(1L, euler_phi(n) / 2));
  }
}

TEST_CASE("hm formula matches enumeration in quadratic fields") {
  std::vector<std::pair<long, std::string>> cases{{-1, "fin:3"}, {-1, "fin:(2,1+w)"}, {-1, "fin:4"}, {-5, "fin:3"},
                                                  {-5, "fin:(2,1+w)"}, {-3, "fin:4"}, {2, "inf:0;fin:3"},
                                                  {2, "inf:0,1"}, {2, "inf:0,1;fin:w"}, {3, "inf:0,1"}, {5, "inf:0,1;fin:4"},
                                                  {-15, "trivial"}, {10, "trivial"}};
  for (const auto& [d, spec] : cases) {
    auto K = NumberField::quadratic(d);
    auto m = Modulus::parse(K, spec);
    INFO(K.spec() << " " << spec);
    // A generous bound: every class has a representative of small norm.
    CHECK(hm_formula(m) == hm_enumerated(m, 4 * hm_enumeration_bound(m) + 8));
    CHECK(hm_formula(m) == static_cast<long>(quotient(K, spec, "trivial").order()));
  }
}

TEST_CASE("quotient_group examples") {
  auto Q = NumberField::rational();
  auto q = quotient(Q, "inf:0;fin:5", "trivial");
  CHECK(q.order() == 4);
  std::vector<Ideal> expect{Ideal::unit(Q), Ideal::parse(Q, "2"), Ideal::parse(Q, "3"), Ideal::parse(Q, "4")};
  CHECK(q.representatives() == expect);
  for (long p : {11L, 2L, 3L, 19L})
    CHECK(q.class_of(Ideal::parse(Q, std::to_string(p))) == q.class_of(Ideal::parse(Q, std::to_string(p % 5))));
  CHECK(quotient(Q, "inf:0;fin:5", "full").order() == 1);
  CHECK(quotient(NumberField::quadratic(-5), "trivial", "trivial").order() == 2);
  CHECK_THROWS_AS(q.class_of(Ideal::parse(Q, "10")), Error);
}

TEST_CASE("quotient group structure") {
  std::vector<std::tuple<NumberField, std::string, std::string>> cases{
      {NumberField::rational(), "inf:0;fin:15", "trivial"},
      {NumberField::rational(), "inf:0;fin:15", "gens:4"},
      {NumberField::rational(), "fin:8", "trivial"},
      {NumberField::quadratic(-5), "fin:3", "trivial"},
      {NumberField::quadratic(-5), "fin:3", "gens:-1"},
      {NumberField::quadratic(-1), "fin:3", "gens:1+w"},
      {NumberField::quadratic(2), "inf:0,1;fin:7", "trivial"},
      {NumberField::quadratic(10), "fin:3", "trivial"},
      {NumberField::quadratic(-23), "trivial", "trivial"}};
  for (const auto& [K, spec, gspec] : cases) {
    INFO(K.spec() << " " << spec << " " << gspec);
    auto q = quotient(K, spec, gspec);
    CHECK(q.order() == q.class_group().order() * q.saturation().index());
    CHECK(q.order() == brute_quotient_order(q.gamma(), 4 * hm_enumeration_bound(q.modulus()) + 8));
    for (std::size_t i = 0; i < q.order(); ++i) {
      CHECK(q.class_of(q.representatives()[i]) == i);
      CHECK(q.multiply(i, q.inverse(i)) == q.identity());
      CHECK(q.multiply(i, q.identity()) == i);
      CHECK(q.order() % q.element_order(i) == 0);
    }
    for (int t = 0; t < 15; ++t) {
      auto a = testsupport::random_ideal_coprime(q.modulus(), 300), b = testsupport::random_ideal_coprime(q.modulus(), 300);
      CHECK(q.class_of(a * b) == q.multiply(q.class_of(a), q.class_of(b)));
      CHECK(q.class_of(a / b) == q.multiply(q.class_of(a), q.inverse(q.class_of(b))));
    }
  }
}

TEST_CASE("prime_class_order examples") {
  auto Q = NumberField::rational();
  auto q = quotient(Q, "inf:0;fin:5", "trivial");
  auto d2 = prime_class_order(require_prime(Ideal::parse(Q, "2")), q);
  CHECK(d2.order == 4);
  CHECK(d2.generator == el(Q, 16));
  auto d11 = prime_class_order(require_prime(Ideal::parse(Q, "11")), q);
  CHECK(d11.order == 1);
  CHECK(d11.generator == el(Q, 11));
  auto d19 = prime_class_order(require_prime(Ideal::parse(Q, "19")), q);
  CHECK(d19.order == 2);
  CHECK(d19.generator == el(Q, 361));
  CHECK_THROWS_AS(prime_class_order(require_prime(Ideal::parse(Q, "5")), q), Error);
  auto G = NumberField::quadratic(-1);
  auto qi = quotient(G, "fin:1+2*w", "full");
  auto di = prime_class_order(require_prime(Ideal::parse(G, "1+w")), qi);
  CHECK(di.order == 1);
  CHECK(Ideal::principal(di.generator) == Ideal::parse(G, "1+w"));
}

TEST_CASE("prime_class_order minimality") {
  std::vector<std::tuple<NumberField, std::string, std::string>> cases{
      {NumberField::rational(), "inf:0;fin:5", "trivial"}, {NumberField::rational(), "inf:0;fin:12", "gens:5"},
      {NumberField::quadratic(-5), "fin:3", "trivial"},   {NumberField::quadratic(-1), "fin:3", "trivial"},
      {NumberField::quadratic(2), "inf:0;fin:3", "trivial"}, {NumberField::quadratic(5), "inf:0,1;fin:2", "trivial"}};
  for (const auto& [K, spec, gspec] : cases) {
    auto q = quotient(K, spec, gspec);
    for (const auto& P : primes_up_to(K, 40)) {
      if (q.modulus().in_support(P)) continue;
      INFO(K.spec() << " " << spec << " P=" << P.to_string());
      auto d = prime_class_order(P, q);
      CHECK(Ideal::principal(d.generator) == P.ideal.pow(static_cast<int>(d.order)));
      CHECK(in_congruence_monoid(d.generator, q.gamma()).member);
      for (long f = 1; f < d.order; ++f) CHECK_FALSE(monoid_generator(P.ideal.pow(static_cast<int>(f)), q.gamma()));
      // No smaller generator of the same ideal lies in the monoid.
      for (const auto& e : lattice_points(P.ideal.pow(static_cast<int>(d.order)), abs(d.generator.norm()).get_num(),
                                          d.generator.height().get_num() + 1))
        if (search_less(e, d.generator) && Ideal::principal(e) == Ideal::principal(d.generator))
          CHECK_FALSE(in_congruence_monoid(e, q.gamma()).member);
    }
  }
}

TEST_CASE("is_right_lcm") {
  auto Q = NumberField::rational();
  CHECK(is_right_lcm(quotient(Q, "inf:0;fin:5", "full")));
  CHECK_FALSE(is_right_lcm(quotient(Q, "inf:0;fin:5", "trivial")));
  CHECK_FALSE(is_right_lcm(quotient(NumberField::quadratic(-5), "trivial", "trivial")));
  CHECK(is_right_lcm(quotient(NumberField::quadratic(-1), "trivial", "trivial")));
}
