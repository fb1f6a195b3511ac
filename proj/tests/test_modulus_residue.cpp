#include <set>

#include "cmon/error.hpp"
#include "cmon/residue.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmon;
using testsupport::el;

namespace {

std::shared_ptr<const ResidueGroup> group(const NumberField& K, const std::string& m) {
  return make_residue_group(Modulus::parse(K, m));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

// Count of x in a fundamental domain with (x) + m_0 = R, by direct scan.
std::size_t coprime_residue_count(const Ideal& M) {
  std::size_t n = 0;
  for (const auto& r : residue_representatives(M))
    if (r.is_zero() ? M.is_unit() : (Ideal::principal(r) + M).is_unit()) ++n;
  return n;
}

std::vector<std::pair<NumberField, std::string>> desk_moduli() {
  auto Q = NumberField::rational();
  auto G = NumberField::quadratic(-1);
  auto S2 = NumberField::quadratic(2);
  auto F = NumberField::quadratic(5);
  auto M5 = NumberField::quadratic(-5);
  auto E = NumberField::quadratic(-3);
  return {{Q, "inf:0;fin:5"}, {Q, "fin:12"}, {Q, "inf:0;fin:8"}, {Q, "trivial"}, {G, "fin:1+2*w"},
          {G, "fin:(2,1+w)"}, {G, "fin:6"}, {S2, "inf:0,1;fin:3"}, {S2, "inf:1;fin:w"}, {S2, "fin:7"},
          {F, "inf:0,1;fin:4"}, {M5, "fin:(2,1+w)"}, {M5, "fin:3"}, {E, "fin:4"}, {E, "fin:(7,2+w)"}};
}

}  // namespace

TEST_CASE("modulus parsing") {
  auto Q = NumberField::rational();
  auto m = Modulus::parse(Q, "inf:0;fin:5");
  CHECK(m.r0() == 1);
  CHECK(m.finite() == Ideal::principal(el(Q, 5)));
  CHECK(m.to_string() == "inf:0;fin:5");
  CHECK(Modulus::parse(Q, m.to_string()) == m);
  CHECK(Modulus::parse(Q, "trivial") == Modulus::trivial(Q));
  CHECK(Modulus::parse(Q, "fin:12").support().size() == 2);
  auto G = NumberField::quadratic(-1);
  CHECK(code_of([&] { Modulus::parse(G, "inf:0;fin:5"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { Modulus::parse(Q, "fin:1/2"); }) == ErrorCode::InvalidArgument);
  for (const auto& [K, spec] : desk_moduli()) {
    auto mm = Modulus::parse(K, spec);
    CHECK(Modulus::parse(K, mm.to_string()) == mm);
    CHECK(from_factorization(K, factor(mm.finite())).integral_norm() == mm.finite().integral_norm());
  }
}

TEST_CASE("residue_of examples") {
  auto Q = NumberField::rational();
  auto G5 = group(Q, "inf:0;fin:5");
  auto c7 = G5->element(G5->residue_of(el(Q, 7)));
  CHECK(c7.signs == std::vector<int>{1});
  CHECK(c7.residue == el(Q, 2));
  auto cm3 = G5->element(G5->residue_of(el(Q, -3)));
  CHECK(cm3.signs == std::vector<int>{-1});
  CHECK(cm3.residue == el(Q, 2));
  CHECK(G5->class_string(G5->residue_of(el(Q, -3))) == "(-|2)");
  CHECK(code_of([&] { G5->residue_of(el(Q, 10)); }) == ErrorCode::NotCoprime);

  auto G = NumberField::quadratic(-1);
  auto Gi = group(G, "fin:1+2*w");
  // i = 2 in Z[i]/(1+2i) since 1 + 2*2 = 0 mod 5.
  CHECK(Gi->element(Gi->residue_of(Element::omega(G))).residue == el(G, 2));
}

TEST_CASE("residue group order and axioms") {
  for (const auto& [K, spec] : desk_moduli()) {
    INFO(K.spec() << " " << spec);
    auto G = group(K, spec);
    const auto& m = G->modulus();
    CHECK(G->order() == coprime_residue_count(m.finite()) << m.r0());
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < G->order(); ++i) {
      CHECK(G->index_of(G->element(i)) == i);
      CHECK(G->multiply(i, G->inverse(i)) == G->identity());
      CHECK(G->multiply(i, G->identity()) == i);
      CHECK(G->order() % G->element_order(i) == 0);
      for (std::size_t j = 0; j < G->order(); j += 3) {
        CHECK(G->multiply(i, j) == G->multiply(j, i));
        CHECK(G->multiply(i, j) < G->order());
      }
    }
  }
}

TEST_CASE("residue map is a surjective homomorphism") {
  for (const auto& [K, spec] : desk_moduli()) {
    INFO(K.spec() << " " << spec);
    auto G = group(K, spec);
    const auto& m = G->modulus();
    for (int t = 0; t < 150; ++t) {
      auto a = testsupport::random_integral(K, 60), b = testsupport::random_integral(K, 60);
      if (a.is_zero() || b.is_zero() || !m.coprime_to(a) || !m.coprime_to(b)) continue;
      CHECK(G->residue_of(a * b) == G->multiply(G->residue_of(a), G->residue_of(b)));
    }
    if (G->order() <= 200)
      for (std::size_t i = 0; i < G->order(); ++i) {
        auto a = G->realize(i);
        CHECK(a.is_integral());
        CHECK(G->residue_of(a) == i);
      }
  }
}

TEST_CASE("residue_of_fraction") {
  auto Q = NumberField::rational();
  auto G5 = group(Q, "inf:0;fin:5");
  auto c = G5->element(G5->residue_of_fraction(Element(Q, Rational(3, 8))));
  CHECK(c.signs == std::vector<int>{1});
  CHECK(c.residue == el(Q, 1));
  CHECK(G5->residue_of_fraction(el(Q, 1)) == G5->identity());
  CHECK(code_of([&] { G5->residue_of_fraction(Element(Q, Rational(2, 5))); }) == ErrorCode::NotInKm);

  for (const auto& [K, spec] : desk_moduli()) {
    INFO(K.spec() << " " << spec);
    auto G = group(K, spec);
    const auto& m = G->modulus();
    int done = 0;
    for (int t = 0; t < 400 && done < 10; ++t) {
      auto a = testsupport::random_integral(K, 40), b = testsupport::random_integral(K, 40);
      if (a.is_zero() || b.is_zero() || !m.coprime_to(a) || !m.coprime_to(b)) continue;
      auto x = a / b;
      auto r = G->residue_of_fraction(x);
      // Representations x = (a c) / (b c) for c coprime to m_0.
      for (int k = 0; k < 3; ++k) {
        auto cc = testsupport::random_integral(K, 30);
        if (cc.is_zero() || !m.coprime_to(cc)) continue;
        CHECK(G->multiply(G->residue_of(a * cc), G->inverse(G->residue_of(b * cc))) == r);
      }
      CHECK(G->residue_of_fraction(x) == r);
      ++done;
    }
  }
}

TEST_CASE("localization parts") {
  auto Q = NumberField::rational();
  auto m = Modulus::parse(Q, "fin:5");
  auto parts = localization_parts(Element(Q, Rational(3, 8)), m);
  REQUIRE(parts);
  CHECK(parts->first == el(Q, 3));
  CHECK(parts->second == el(Q, 8));
  CHECK_FALSE(localization_parts(Element(Q, Rational(2, 5)), m));
  CHECK_FALSE(localization_parts(Element(Q, Rational(7, 10)), m));
  for (const auto& [K, spec] : desk_moduli()) {
    auto mm = Modulus::parse(K, spec);
    for (int t = 0; t < 60; ++t) {
      auto a = testsupport::random_integral(K, 40), b = testsupport::random_integral(K, 40);
      if (b.is_zero()) continue;
      auto x = a / b;
      bool local = true;
      if (!x.is_zero())
        for (const auto& P : mm.support()) local &= valuation(x, P) >= 0;
      auto p = localization_parts(x, mm);
      CHECK(bool(p) == local);
      if (p) {
        CHECK(p->first.is_integral());
        CHECK(p->second.is_integral());
        CHECK(mm.coprime_to(p->second));
        CHECK(p->first == x * p->second);
      }
    }
  }
}

TEST_CASE("congruence monoid membership") {
  auto Q = NumberField::rational();
  auto G5 = group(Q, "inf:0;fin:5");
  auto triv = ResidueSubgroup::trivial(G5);
  CHECK(in_congruence_monoid(el(Q, 6), triv).member);
  auto neg = in_congruence_monoid(el(Q, -4), triv);
  CHECK_FALSE(neg.member);
  CHECK(neg.reason == MembershipReason::NotInGamma);
  auto ten = in_congruence_monoid(el(Q, 10), triv);
  CHECK_FALSE(ten.member);
  CHECK(ten.reason == MembershipReason::NotCoprime);
  CHECK(code_of([&] { in_congruence_monoid(el(Q, 0), triv); }) == ErrorCode::ZeroInput);
  CHECK(in_ray_monoid(el(Q, 6), G5->modulus()));
  CHECK_FALSE(in_ray_monoid(el(Q, -4), G5->modulus()));
}

TEST_CASE("subgroups") {
  auto Q = NumberField::rational();
  auto G5 = group(Q, "inf:0;fin:5");
  auto H = ResidueSubgroup::from_elements(G5, {el(Q, 2)});
  CHECK(H.order() == 4);
  for (auto i : H.members()) CHECK(G5->element(i).signs == std::vector<int>{1});
  auto T = ResidueSubgroup::trivial(G5);
  CHECK(T.order() == 1);
  CHECK(T.index() == G5->order());
  CHECK(ResidueSubgroup::full(G5).index() == 1);
  CHECK(ResidueSubgroup::parse(G5, "gens:2") == H);
  CHECK(ResidueSubgroup::parse(G5, "trivial") == T);
  CHECK(ResidueSubgroup::parse(G5, H.spec()) == H);

  auto GI = NumberField::quadratic(-1);
  auto Gi = group(GI, "fin:1+2*w");
  auto U = unit_image(Gi, unit_group(GI));
  CHECK(U.order() == 4);
  CHECK(U == ResidueSubgroup::full(Gi));

  for (const auto& [K, spec] : desk_moduli()) {
    INFO(K.spec() << " " << spec);
    auto G = group(K, spec);
    for (int t = 0; t < 6; ++t) {
      std::vector<std::size_t> gens;
      for (int k = 0; k < t % 3; ++k) gens.push_back(static_cast<std::size_t>(testsupport::uniform(0, G->order() - 1)));
      auto S = ResidueSubgroup::generated(G, gens);
      CHECK(G->order() % S.order() == 0);
      CHECK(S.contains(G->identity()));
      for (auto x : S.members()) {
        CHECK(S.contains(G->inverse(x)));
        for (auto y : S.members()) CHECK(S.contains(G->multiply(x, y)));
      }
      auto cos = S.cosets();
      CHECK(cos.size() == S.index());
      auto labels = S.coset_labels();
      for (std::size_t c = 0; c < cos.size(); ++c)
        for (auto g : cos[c]) CHECK(labels[g] == c);
      auto J = S.join(unit_image(G, unit_group(K)));
      for (auto x : S.members()) CHECK(J.contains(x));
      CHECK(J.order() % S.order() == 0);
    }
  }
}

TEST_CASE("enumerate_monoid") {
  auto Q = NumberField::rational();
  auto G5 = group(Q, "inf:0;fin:5");
  auto triv = ResidueSubgroup::trivial(G5);
  std::vector<Element> expect{el(Q, 1), el(Q, 6), el(Q, 11), el(Q, 16)};
  CHECK(enumerate_monoid(triv, 20) == expect);
  auto all = enumerate_monoid(ResidueSubgroup::full(G5), 7);
  std::set<long> got;
  for (const auto& e : all) got.insert(e.p().get_num().get_si());
  CHECK(got == std::set<long>{-7, -6, -4, -3, -2, -1, 1, 2, 3, 4, 6, 7});
  CHECK(enumerate_monoid(triv, 0).empty());

  for (const auto& [K, spec] : desk_moduli()) {
    if (K.is_real() && K.is_quadratic()) continue;
    INFO(K.spec() << " " << spec);
    auto G = group(K, spec);
    auto S = ResidueSubgroup::generated(G, {static_cast<std::size_t>(testsupport::uniform(0, G->order() - 1))});
    const Integer bound = 200;
    auto list = enumerate_monoid(S, bound);
    std::set<std::string> keys;
    for (const auto& e : list) keys.insert(e.to_string());
    CHECK(keys.size() == list.size());
    for (std::size_t i = 0; i < list.size() && i < 40; ++i)
      for (std::size_t j = 0; j < list.size() && j < 40; ++j) {
        auto prod = list[i] * list[j];
        if (abs(prod.norm()) <= bound) CHECK(keys.count(prod.to_string()) == 1);
      }
  }
}
