#include "cmon/error.hpp"
#include "cmon/prim_lattice.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cmon;
using testsupport::el;
using testsupport::uniform;

namespace {

const NumberField Q = NumberField::rational();
const Modulus m5 = Modulus::parse(Q, "inf:0;fin:5");

QuotientGroup quotient(const NumberField& K, const std::string& m, const std::string& gamma) {
  return QuotientGroup(ResidueSubgroup::parse(make_residue_group(Modulus::parse(K, m)), gamma));
}

constexpr std::optional<long> inf = std::nullopt;

// T is in the closure of {A} iff every basic open U_F = {S : S ∩ F = ∅}
// containing T also contains A.
bool in_closure_by_basis(std::uint32_t A, std::uint32_t T, std::uint32_t full) {
  for (std::uint32_t F = 0; F <= full; ++F)
    if ((T & F) == 0 && (A & F) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("window parsing and validation") {
  auto w = PrimeWindow::parse(m5, "2,3,7");
  CHECK(w.size() == 3);
  CHECK(w.spec() == "2,3,7");
  CHECK_THROWS_AS(PrimeWindow::parse(m5, "2,5"), Error);
  try {
    PrimeWindow::parse(m5, "2,5");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrimeInSupport);
  }
  try {
    PrimeWindow::parse(m5, "2,3,2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
  auto K = NumberField::quadratic(-5);
  auto wk = PrimeWindow::parse(Modulus::trivial(K), "(2,1+w),(3,1+w)");
  CHECK(wk.size() == 2);
  CHECK(PrimeWindow::parse(m5, "").size() == 0);
}

TEST_CASE("ideal_leq examples") {
  auto w = PrimeWindow::parse(m5, "2,3");
  CHECK(ideal_leq(parse_descriptor(w, "2"), parse_descriptor(w, "2,3")));
  CHECK(ideal_leq(parse_descriptor(w, ""), parse_descriptor(w, "3")));
  CHECK_FALSE(ideal_leq(parse_descriptor(w, "2"), parse_descriptor(w, "3")));
  auto other = PrimeWindow::parse(m5, "2,7");
  try {
    ideal_leq(parse_descriptor(w, "2"), parse_descriptor(other, "2"));
    FAIL("expected WindowMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowMismatch);
  }
}

TEST_CASE("order isomorphism and closure, exhaustive up to six primes") {
  const std::vector<std::string> primes{"2", "3", "7", "11", "13", "17"};
  std::string spec;
  for (std::size_t n = 1; n <= primes.size(); ++n) {
    spec += (n > 1 ? "," : "") + primes[n - 1];
    auto w = PrimeWindow::parse(m5, spec);
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t A = 0; A <= full; ++A) {
      Descriptor DA{w, A};
      // Round trip through the literal form.
      std::string lit = DA.to_string();
      CHECK(parse_descriptor(w, lit) == DA);
      for (std::uint32_t B = 0; B <= full; ++B) {
        bool subset = true;
        for (std::size_t i = 0; i < n; ++i)
          if (((A >> i) & 1) && !((B >> i) & 1)) subset = false;
        REQUIRE(ideal_leq(DA, {w, B}) == subset);
      }
      std::vector<std::uint32_t> expected;
      for (std::uint32_t T = 0; T <= full; ++T)
        if (in_closure_by_basis(A, T, full)) expected.push_back(T);
      auto closure = closure_of(DA);
      REQUIRE(closure.size() == expected.size());
      for (const auto& D : closure)
        CHECK(std::find(expected.begin(), expected.end(), D.mask) != expected.end());
    }
  }
}

TEST_CASE("closure examples") {
  auto w = PrimeWindow::parse(m5, "2,3");
  auto c = closure_of(parse_descriptor(w, "2"));
  REQUIRE(c.size() == 2);
  CHECK(c[0].to_string() == "{2}");
  CHECK(c[1].to_string() == "{2,3}");
  CHECK(closure_of(parse_descriptor(w, "")).size() == 4);
  auto top = closure_of(full_descriptor(w));
  REQUIRE(top.size() == 1);
  CHECK(top[0] == full_descriptor(w));
}

TEST_CASE("extremal ideals") {
  auto w = PrimeWindow::parse(m5, "2,3,7");
  auto e = extremal_ideals(w);
  CHECK(e.maximal.to_string() == "{2,3,7}");
  REQUIRE(e.minimals.size() == 3);
  CHECK(e.minimals[0].to_string() == "{2}");
  CHECK(e.minimals[1].to_string() == "{3}");
  CHECK(e.minimals[2].to_string() == "{7}");
  auto single = extremal_ideals(PrimeWindow::parse(m5, "2"));
  CHECK(single.minimals.size() == 1);
  CHECK(single.minimals[0] == single.maximal);
  CHECK_THROWS_AS(extremal_ideals(PrimeWindow::parse(m5, "")), Error);
}

TEST_CASE("boundary defect data") {
  auto q = quotient(Q, "inf:0;fin:5", "trivial");
  auto d2 = boundary_defect_data(require_prime(Ideal::parse(Q, "2")), q);
  CHECK(d2.data.generator == el(Q, 16));
  CHECK(d2.coset_count == 16);
  REQUIRE(d2.representatives.size() == 16);
  for (long r = 0; r < 16; ++r) CHECK(d2.representatives[r] == el(Q, r));
  CHECK(boundary_defect_data(require_prime(Ideal::parse(Q, "11")), q).coset_count == 11);
  CHECK(boundary_defect_data(require_prime(Ideal::parse(Q, "19")), q).coset_count == 361);

  auto Ki = NumberField::quadratic(-1);
  auto qi = quotient(Ki, "fin:1+2*w", "full");
  auto di = boundary_defect_data(require_prime(Ideal::parse(Ki, "1+w")), qi);
  CHECK(di.data.order == 1);
  CHECK(Ideal::principal(di.data.generator) == Ideal::parse(Ki, "1+w"));
  REQUIRE(di.representatives.size() == 2);
  CHECK(di.representatives[0] == el(Ki, 0));
  CHECK(di.representatives[1] == el(Ki, 1));
}

TEST_CASE("defect cosets partition a fundamental domain") {
  struct Case {
    NumberField K;
    std::string m, gamma, prime;
  };
  std::vector<Case> cases{{Q, "inf:0;fin:5", "trivial", "3"},
                          {NumberField::quadratic(-1), "fin:3", "trivial", "1+w"},
                          {NumberField::quadratic(-1), "fin:3", "full", "2+w"},
                          {NumberField::quadratic(-5), "trivial", "full", "(2,1+w)"},
                          {NumberField::quadratic(2), "inf:0;fin:3", "trivial", "w"}};
  for (const auto& c : cases) {
    auto q = quotient(c.K, c.m, c.gamma);
    auto P = require_prime(Ideal::parse(c.K, c.prime));
    auto d = boundary_defect_data(P, q);
    Ideal T = Ideal::principal(d.data.generator);
    Integer expected = 1;
    for (long k = 0; k < d.data.order; ++k) expected *= P.norm();
    CHECK(d.coset_count == expected);
    CHECK(Integer(d.representatives.size()) == d.coset_count);
    for (std::size_t i = 0; i < d.representatives.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) REQUIRE_FALSE(congruent(d.representatives[i], d.representatives[j], T));
    // Every element of a box lands in exactly one coset.
    for (long x = -12; x <= 12; ++x)
      for (long y = c.K.is_quadratic() ? -12 : 0; y <= (c.K.is_quadratic() ? 12 : 0); ++y) {
        auto e = el(c.K, x, y);
        long hits = 0;
        for (const auto& r : d.representatives) hits += congruent(e, r, T);
        REQUIRE(hits == 1);
      }
  }
}

TEST_CASE("zero sets and quasi-orbit membership") {
  OrbitModel model(PrimeWindow::parse(m5, "2,3,7"), m5);
  auto x = model.point({inf, 1, 0}, el(Q, 0));
  CHECK(zero_set(x) == std::vector<std::size_t>{0});
  CHECK(quasi_orbit_membership(x, model.point({inf, 4, 2}, el(Q, 3))));
  auto z = model.point({0, 0, 0}, el(Q, 0));
  CHECK(zero_set(z).empty());
  CHECK(quasi_orbit_membership(z, model.point({inf, inf, 3}, el(Q, 1))));
  CHECK_FALSE(quasi_orbit_membership(model.point({inf, inf, 0}, el(Q, 0)), model.point({inf, 0, 0}, el(Q, 0))));
  CHECK_THROWS_AS(model.point({5, 0, 0}, el(Q, 0)), Error);
}

TEST_CASE("truncated points reduce b") {
  OrbitModel model(PrimeWindow::parse(m5, "2,3,7"), m5);
  // Modulus 2^4 * 3 * 1.
  CHECK(model.point({inf, 1, 0}, el(Q, 50)).b == el(Q, 2));
}

TEST_CASE("orbit reach examples") {
  OrbitModel model(PrimeWindow::parse(m5, "2,3,7"), m5);
  auto x = model.point({inf, 1, 0}, el(Q, 0));
  auto y = model.point({inf, 2, 1}, el(Q, 0));
  auto r = model.reach(x, y);
  REQUIRE(r.status == OrbitResult::Status::Reached);
  REQUIRE(r.path.size() == 1);
  // The shift at the infinite coordinate is irrelevant.
  CHECK(r.path[0].kind == OrbitMove::Kind::Multiply);
  CHECK(r.path[0].delta[1] == 1);
  CHECK(r.path[0].delta[2] == 1);

  auto same = model.reach(x, x);
  CHECK(same.status == OrbitResult::Status::Reached);
  CHECK(same.path.empty());

  auto blocked = model.reach(model.point({inf, inf, 0}, el(Q, 0)), model.point({inf, 0, 0}, el(Q, 0)));
  CHECK(blocked.status == OrbitResult::Status::NotInClosure);
  CHECK(blocked.states_explored == 0);
}

TEST_CASE("orbit reach on random pairs in the closure") {
  struct Setup {
    Modulus m;
    std::string window;
  };
  auto Ki = NumberField::quadratic(-1);
  auto K2 = NumberField::quadratic(2);
  std::vector<Setup> setups{{m5, "2,3,7"}, {Modulus::parse(Ki, "fin:3"), "1+w,2+w"}, {Modulus::parse(K2, "inf:0"), "w,3"}};
  for (const auto& s : setups) {
    OrbitModel model(PrimeWindow::parse(s.m, s.window), s.m);
    const auto& K = s.m.field();
    const std::size_t W = model.window().size();
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<std::optional<long>> vx(W), vy(W);
      for (std::size_t i = 0; i < W; ++i) {
        bool zx = uniform(0, 3) == 0;
        vx[i] = zx ? inf : std::optional<long>(uniform(0, 4));
        vy[i] = zx || uniform(0, 3) == 0 ? inf : std::optional<long>(uniform(0, 4));
      }
      auto x = model.point(vx, testsupport::random_integral(K, 20));
      auto y = model.point(vy, testsupport::random_integral(K, 20));
      auto r = model.reach(x, y);
      INFO(s.window, " trial ", trial);
      REQUIRE(r.status == OrbitResult::Status::Reached);
      // Replaying the path lands in the neighborhood of y.
      auto cur = x;
      for (const auto& mv : r.path) {
        auto next = model.apply(cur, mv, y, model.vmax() + kDefaultMoveBudget + 1);
        REQUIRE(next);
        cur = *next;
      }
      CHECK(model.in_neighborhood(cur, y));
    }
  }
}

TEST_CASE("every move preserves the zero set") {
  OrbitModel model(PrimeWindow::parse(m5, "2,3,7"), m5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::optional<long>> v(3);
    for (auto& c : v) c = uniform(0, 3) == 0 ? inf : std::optional<long>(uniform(0, 4));
    auto x = model.point(v, el(Q, uniform(0, 200)));
    auto y = model.point({inf, inf, inf}, el(Q, uniform(0, 50)));
    for (const auto& mv : model.moves()) {
      auto image = model.apply(x, mv, y, 20);
      if (!image) continue;
      CHECK(zero_set(*image) == zero_set(x));
      for (std::size_t i = 0; i < 3; ++i)
        if (image->valuations[i]) CHECK(*image->valuations[i] >= 0);
    }
  }
}
