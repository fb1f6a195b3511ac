#include "cmon/cli.hpp"

#include <CLI11.hpp>
#include <deque>
#include <functional>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <ostream>

#include "cmon/constructions.hpp"
#include "cmon/error.hpp"
#include "cmon/functoriality.hpp"
#include "cmon/prim_lattice.hpp"
#include "cmon/ray_class.hpp"
#include "cmon/semilattice.hpp"

namespace cmon::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Scope { Field, Modulus, Subgroup };

// Canonical echo of one argument. Options render as --name=value so values
// starting with '-' stay unambiguous; positionals follow a "--" separator.
struct Input {
  std::string name;
  json value;  // string or array of strings
  bool positional = false;
};

struct Outcome {
  json result;
  std::string human;
  int exit_code = kExitOk;
};

struct Raw {
  std::string field = "Q";
  std::string modulus = "trivial";
  std::string gamma = "trivial";
  std::string format = "human";
};

class Session {
 public:
  explicit Session(const Raw& raw) : raw_(raw) {}

  const NumberField& field() {
    if (!K_) K_ = NumberField::parse(raw_.field);
    return *K_;
  }
  const Modulus& modulus() {
    if (!m_) m_ = raw_.modulus == "trivial" ? Modulus::trivial(field()) : Modulus::parse(field(), raw_.modulus);
    return *m_;
  }
  const ResidueSubgroup& gamma() {
    if (!gamma_) gamma_ = ResidueSubgroup::parse(make_residue_group(modulus()), raw_.gamma);
    return *gamma_;
  }

  void option(const std::string& name, const std::string& value) { inputs_.push_back({name, value, false}); }
  void list(const std::string& name, const std::vector<std::string>& values) { inputs_.push_back({name, values, false}); }
  void positional(const std::string& name, const std::string& value) { inputs_.push_back({name, value, true}); }
  const std::vector<Input>& inputs() const { return inputs_; }

 private:
  const Raw& raw_;
  std::optional<NumberField> K_;
  std::optional<Modulus> m_;
  std::optional<ResidueSubgroup> gamma_;
  std::vector<Input> inputs_;
};

struct Leaf {
  std::string path;
  Scope scope;
  std::function<Outcome(Session&)> body;
};

Modulus parse_modulus(const NumberField& K, const std::string& spec) {
  return spec == "trivial" ? Modulus::trivial(K) : Modulus::parse(K, spec);
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json or_null(const std::optional<Element>& x) { return x ? json(x->to_string()) : json(nullptr); }

Integer parse_bound(const std::string& s, const std::string& what) {
  Integer n;
  if (s.empty() || n.set_str(s, 10) != 0 || n < 0) fail(ErrorCode::Parse, "malformed " + what + " '" + s + "'");
  return n;
}

long parse_long(const std::string& s, const std::string& what) {
  Integer n = parse_bound(s, what);
  if (!n.fits_slong_p()) fail(ErrorCode::ScaleExceeded, what + " '" + s + "' is too large");
  return n.get_si();
}

PrimeIdeal parse_prime(const NumberField& K, const std::string& spec) {
  auto P = as_prime(Ideal::parse(K, spec));
  if (!P) fail(ErrorCode::InvalidArgument, "'" + spec + "' is not a prime ideal");
  return *P;
}

// "<prime>:<exponent>", split at the last ':'.
Prescription parse_prescription(const NumberField& K, const std::string& spec) {
  auto colon = spec.rfind(':');
  if (colon == std::string::npos) fail(ErrorCode::Parse, "prescription '" + spec + "' needs the form <prime>:<exponent>");
  return {parse_prime(K, spec.substr(0, colon)), parse_long(spec.substr(colon + 1), "exponent")};
}

// Comma-separated valuations, each a nonnegative integer or "inf".
std::vector<std::optional<long>> parse_valuations(const std::string& spec) {
  std::vector<std::optional<long>> out;
  std::size_t start = 0;
  for (;;) {
    auto comma = spec.find(',', start);
    std::string tok = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(tok == "inf" ? std::nullopt : std::optional<long>(parse_long(tok, "valuation")));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string valuations_string(const std::vector<std::optional<long>>& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(x ? std::to_string(*x) : "inf");
  return join(parts, ",");
}

json report_json(const InclusionReport& r) {
  return {{"included", r.criterion},
          {"literal_order", r.literal_order},
          {"enumerated", r.enumerated},
          {"agree", r.agree()},
          {"checked", r.checked},
          {"witness", or_null(r.witness)}};
}

std::string report_human(const InclusionReport& r) {
  std::string s = yes_no(r.criterion);
  if (r.witness) s += " (witness " + r.witness->to_string() + ")";
  if (!r.agree()) s += " [enumeration disagrees]";
  return s;
}

std::vector<std::string> literal_list(const std::vector<Descriptor>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.to_string());
  return out;
}

// Binds an option slot after storing its default.
std::string& seeded(std::string& slot, std::string value) {
  slot = std::move(value);
  return slot;
}

int exit_code_for(ErrorCode code) {
  if (is_exhaustion(code)) return kExitExhausted;
  if (code == ErrorCode::Internal) return kExitFailure;
  return kExitInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence monoid semigroup toolkit", "cmon"};
  app.require_subcommand(1);
  Raw raw;
  std::vector<Leaf> leaves;
  std::map<CLI::App*, std::size_t> leaf_of;

  auto group = [&](const std::string& name, const std::string& about) {
    auto* g = app.add_subcommand(name, about);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& about, Scope scope,
                  std::function<Outcome(Session&)> body) {
    auto* sub = parent->add_subcommand(name, about);
    sub->add_option("--field", raw.field, "Q or Q(sqrt,<d>)")->capture_default_str();
    if (scope != Scope::Field) sub->add_option("--modulus", raw.modulus, "inf:<labels>;fin:<generators> or trivial")->capture_default_str();
    if (scope == Scope::Subgroup) sub->add_option("--gamma", raw.gamma, "trivial, full or gens:<elements>")->capture_default_str();
    sub->add_option("--format", raw.format, "human or structured")->check(CLI::IsMember({"human", "structured"}))->capture_default_str();
    leaf_of[sub] = leaves.size();
    leaves.push_back({parent->get_name() + " " + name, scope, std::move(body)});
    return sub;
  };

  // Argument slots, one set per leaf; deque keeps references stable.
  struct Slots {
    std::string s1, s2, s3, s4, s5, s6, s7, s9;
    std::vector<std::string> v1;
  };
  std::deque<Slots> slots;

  // monoid
  auto* monoid = group("monoid", "membership in R_{m,Γ}");
  {
    auto& S = slots.emplace_back();
    leaf(monoid, "contains", "test a ∈ R_{m,Γ}", Scope::Subgroup, [&](Session& s) {
      auto a = Element::parse(s.field(), S.s1);
      s.positional("element", a.to_string());
      auto r = in_congruence_monoid(a, s.gamma());
      return Outcome{{{"member", r.member}, {"reason", reason_name(r.reason)}}, yes_no(r.member)};
    })->add_option("element", S.s1)->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* e = leaf(monoid, "enumerate", "elements with |N| <= bound in search order", Scope::Subgroup, [&](Session& s) {
      Integer bound = parse_bound(S.s1, "bound");
      Integer height = S.s2 == "-1" ? Integer(-1) : parse_bound(S.s2, "height");
      s.option("bound", bound.get_str());
      s.option("height", height.get_str());
      std::vector<std::string> xs;
      for (const auto& x : enumerate_monoid(s.gamma(), bound, height)) xs.push_back(x.to_string());
      return Outcome{{{"count", xs.size()}, {"elements", xs}}, join(xs, " ")};
    });
    e->add_option("--bound", seeded(S.s1, "30"), "norm bound")->capture_default_str();
    e->add_option("--height", seeded(S.s2, "-1"), "coordinate bound on real fields; -1 = norm bound")->capture_default_str();
  }

  // lemma
  auto* lemma = group("lemma", "constructive lemmas");
  {
    auto& S = slots.emplace_back();
    leaf(lemma, "approx", "element of R_{m,1} with prescribed valuations", Scope::Modulus, [&](Session& s) {
      std::vector<Prescription> pr;
      std::vector<std::string> canon;
      for (const auto& spec : S.v1) {
        pr.push_back(parse_prescription(s.field(), spec));
        canon.push_back(pr.back().prime.to_string() + ":" + std::to_string(pr.back().exponent));
      }
      s.list("prescribe", canon);
      auto x = approx_element(pr, s.modulus());
      return Outcome{{{"element", x.to_string()}}, x.to_string()};
    })->add_option("--prescribe", S.v1, "<prime>:<exponent>, repeatable");
  }
  {
    auto& S = slots.emplace_back();
    auto* t = leaf(lemma, "twogen", "b with aR + bR = A", Scope::Modulus, [&](Session& s) {
      auto a = Element::parse(s.field(), S.s1);
      auto A = Ideal::parse(s.field(), S.s2);
      s.positional("a", a.to_string());
      s.positional("ideal", A.to_string());
      auto b = second_generator(a, A, s.modulus());
      return Outcome{{{"b", b.to_string()}}, b.to_string()};
    });
    t->add_option("a", S.s1)->required();
    t->add_option("ideal", S.s2)->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* c = leaf(lemma, "cutdown", "b with (a/b)R ∩ R = A", Scope::Modulus, [&](Session& s) {
      auto A = Ideal::parse(s.field(), S.s1);
      auto a = Element::parse(s.field(), S.s2);
      s.positional("ideal", A.to_string());
      s.positional("a", a.to_string());
      auto b = cutdown_pair(A, a, s.modulus());
      return Outcome{{{"b", b.to_string()}}, b.to_string()};
    });
    c->add_option("ideal", S.s1)->required();
    c->add_option("a", S.s2)->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* r = leaf(lemma, "raygen", "does A ∩ R_{m,1} generate A", Scope::Modulus, [&](Session& s) {
      auto A = Ideal::parse(s.field(), S.s1);
      s.positional("ideal", A.to_string());
      Integer bound = S.s2.empty() ? default_raygen_bound(A, s.modulus()) : parse_bound(S.s2, "bound");
      s.option("bound", bound.get_str());
      auto g = ray_generates_check(A, s.modulus(), bound);
      std::vector<std::string> gens;
      for (const auto& x : g.generators) gens.push_back(x.to_string());
      return Outcome{{{"generates", g.generates}, {"generators", gens}},
                     yes_no(g.generates) + (gens.empty() ? "" : " (" + join(gens) + ")")};
    });
    r->add_option("ideal", S.s1)->required();
    r->add_option("--bound", S.s2, "search bound; default 20 N(A) N(m_0)");
  }

  // semilattice
  auto* semi = group("semilattice", "constructible ideals x + A");
  auto ctx_of = [](Session& s) { return make_context(s.gamma()); };
  {
    auto& S = slots.emplace_back();
    auto* m = leaf(semi, "meet", "X ⊓ Y", Scope::Subgroup, [&](Session& s) {
      auto ctx = ctx_of(s);
      auto X = ConstructibleIdeal::parse(ctx, S.s1);
      auto Y = ConstructibleIdeal::parse(ctx, S.s2);
      s.positional("x", X.to_string());
      s.positional("y", Y.to_string());
      auto Z = meet(X, Y);
      return Outcome{{{"meet", Z.to_string()}}, Z.to_string()};
    });
    m->add_option("x", S.s1)->required();
    m->add_option("y", S.s2)->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* a = leaf(semi, "act", "(b,a)X", Scope::Subgroup, [&](Session& s) {
      auto ctx = ctx_of(s);
      auto g = make_semigroup_element(ctx, Element::parse(s.field(), S.s1), Element::parse(s.field(), S.s2));
      auto X = ConstructibleIdeal::parse(ctx, S.s3);
      s.option("b", g.b.to_string());
      s.option("a", g.a.to_string());
      s.positional("x", X.to_string());
      auto Y = act(g, X);
      return Outcome{{{"image", Y.to_string()}}, Y.to_string()};
    });
    a->add_option("--b", S.s1, "translation part")->required();
    a->add_option("--a", S.s2, "element of R_{m,Γ}")->required();
    a->add_option("x", S.s3)->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* w = leaf(semi, "witness", "element of X outside every cover", Scope::Subgroup, [&](Session& s) {
      auto ctx = ctx_of(s);
      auto X = ConstructibleIdeal::parse(ctx, S.s1);
      std::vector<ConstructibleIdeal> covers;
      std::vector<std::string> canon;
      for (const auto& c : S.v1) {
        covers.push_back(ConstructibleIdeal::parse(ctx, c));
        canon.push_back(covers.back().to_string());
      }
      s.list("cover", canon);
      s.positional("x", X.to_string());
      auto g = independence_witness(X, covers);
      json v = g ? json(g->to_string()) : json(nullptr);
      return Outcome{{{"witness", v}}, g ? g->to_string() : "none"};
    });
    w->add_option("x", S.s1)->required();
    w->add_option("--cover", S.v1, "constructible ideal inside X, repeatable");
  }

  // faithful
  auto* faithful = group("faithful", "faithfulness witnesses");
  {
    auto& S = slots.emplace_back();
    auto* w = leaf(faithful, "witness", "z + B ⊆ base avoiding the subcosets, B in the target class", Scope::Subgroup,
                   [&](Session& s) {
                     QuotientGroup Q(s.gamma());
                     auto target = Ideal::parse(s.field(), S.s1);
                     auto base = Ideal::parse(s.field(), S.s2);
                     auto ctx = ctx_of(s);
                     std::vector<Subcoset> subs;
                     std::vector<std::string> canon;
                     for (const auto& lit : S.v1) {
                       auto C = ConstructibleIdeal::parse(ctx, lit);
                       if (C.is_empty()) fail(ErrorCode::InvalidArgument, "subcosets must be nonempty");
                       subs.push_back({C.rep(), C.ideal()});
                       canon.push_back(C.to_string());
                     }
                     long max_norm = parse_long(S.s3, "max-norm");
                     s.option("target", target.to_string());
                     s.option("base", base.to_string());
                     s.list("subcoset", canon);
                     s.option("max-norm", std::to_string(max_norm));
                     auto W = faithfulness_witness(Q, Q.class_of(target), base, subs, max_norm);
                     return Outcome{{{"witness", W.to_string()}}, W.to_string()};
                   });
    w->add_option("--target", S.s1, "ideal whose class is the target")->required();
    w->add_option("--base", S.s2, "ideal of the base coset 0 + base")->required();
    w->add_option("--subcoset", S.v1, "x + A strictly inside the base, repeatable");
    w->add_option("--max-norm", seeded(S.s3, std::to_string(kDefaultPrimeSearchNorm)), "prime search limit")->capture_default_str();
  }

  // rayclass
  auto* ray = group("rayclass", "the quotient I_m / i(K_{m,Γ})");
  {
    leaf(ray, "order", "order of the quotient", Scope::Subgroup, [&](Session& s) {
      QuotientGroup Q(s.gamma());
      return Outcome{{{"order", Q.order()}}, std::to_string(Q.order())};
    });
  }
  {
    leaf(ray, "quotient", "order and class representatives", Scope::Subgroup, [&](Session& s) {
      QuotientGroup Q(s.gamma());
      std::vector<std::string> reps;
      for (const auto& I : Q.representatives()) reps.push_back(I.to_string());
      return Outcome{{{"order", Q.order()}, {"representatives", reps}}, std::to_string(Q.order()) + ": " + join(reps)};
    });
  }
  {
    auto& S = slots.emplace_back();
    leaf(ray, "fp", "order f_P of [P] and generator t_P of P^f", Scope::Subgroup, [&](Session& s) {
      QuotientGroup Q(s.gamma());
      auto P = parse_prime(s.field(), S.s1);
      s.option("prime", P.to_string());
      auto d = prime_class_order(P, Q);
      return Outcome{{{"order", d.order}, {"generator", d.generator.to_string()}},
                     "f = " + std::to_string(d.order) + ", t = " + d.generator.to_string()};
    })->add_option("--prime", S.s1, "prime outside the support")->required();
  }
  {
    leaf(ray, "rightlcm", "is R ⋊ R_{m,Γ} right LCM", Scope::Subgroup, [&](Session& s) {
      bool r = is_right_lcm(QuotientGroup(s.gamma()));
      return Outcome{{{"right_lcm", r}}, yes_no(r)};
    });
  }

  // prim
  auto* prim = group("prim", "primitive ideals over a prime window");
  auto window_of = [](Session& s, const std::string& spec) {
    auto w = PrimeWindow::parse(s.modulus(), spec);
    s.option("window", w.spec());
    return w;
  };
  {
    auto& S = slots.emplace_back();
    auto* o = leaf(prim, "order", "I_A <= I_B", Scope::Modulus, [&](Session& s) {
      auto w = window_of(s, S.s9);
      auto A = parse_descriptor(w, S.s1);
      auto B = parse_descriptor(w, S.s2);
      s.positional("a", A.to_string());
      s.positional("b", B.to_string());
      bool r = ideal_leq(A, B);
      return Outcome{{{"leq", r}}, yes_no(r)};
    });
    o->add_option("--window", S.s9, "comma-separated primes")->required();
    o->add_option("a", S.s1)->required();
    o->add_option("b", S.s2)->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* c = leaf(prim, "closure", "closure of {I_A}", Scope::Modulus, [&](Session& s) {
      auto w = window_of(s, S.s9);
      auto A = parse_descriptor(w, S.s1);
      s.positional("a", A.to_string());
      auto lits = literal_list(closure_of(A));
      return Outcome{{{"closure", lits}}, join(lits, " ")};
    });
    c->add_option("--window", S.s9, "comma-separated primes")->required();
    c->add_option("a", S.s1)->required();
  }
  {
    auto& S = slots.emplace_back();
    leaf(prim, "extremal", "maximal and minimal primitive ideals", Scope::Modulus, [&](Session& s) {
      auto e = extremal_ideals(window_of(s, S.s9));
      auto mins = literal_list(e.minimals);
      return Outcome{{{"maximal", e.maximal.to_string()}, {"minimals", mins}},
                     "maximal " + e.maximal.to_string() + "; minimal " + join(mins, " ")};
    })->add_option("--window", S.s9, "comma-separated primes")->required();
  }
  {
    auto& S = slots.emplace_back();
    leaf(prim, "defect", "t_P and the cosets of t_P R", Scope::Subgroup, [&](Session& s) {
      QuotientGroup Q(s.gamma());
      auto P = parse_prime(s.field(), S.s1);
      s.option("prime", P.to_string());
      auto d = boundary_defect_data(P, Q);
      std::vector<std::string> reps;
      for (const auto& r : d.representatives) reps.push_back(r.to_string());
      std::string human = "t = " + d.data.generator.to_string() + ", " + d.coset_count.get_str() + " cosets";
      if (reps.size() <= 32) human += ": " + join(reps, " ");
      return Outcome{{{"order", d.data.order},
                      {"generator", d.data.generator.to_string()},
                      {"coset_count", d.coset_count.get_str()},
                      {"representatives", reps}},
                     human};
    })->add_option("--prime", S.s1, "prime outside the support")->required();
  }

  // orbit
  auto* orbit = group("orbit", "truncated quasi-orbits");
  {
    auto& S = slots.emplace_back();
    auto* r = leaf(orbit, "reach", "move sequence from x into the neighborhood of y", Scope::Modulus, [&](Session& s) {
      auto w = window_of(s, S.s9);
      long vmax = parse_long(S.s5, "vmax");
      long budget = parse_long(S.s6, "budget");
      long max_states = parse_long(S.s7, "max-states");
      OrbitModel model(w, s.modulus(), vmax);
      auto x = model.point(parse_valuations(S.s1), Element::parse(s.field(), S.s2));
      auto y = model.point(parse_valuations(S.s3), Element::parse(s.field(), S.s4));
      s.option("x", valuations_string(x.valuations));
      s.option("xb", x.b.to_string());
      s.option("y", valuations_string(y.valuations));
      s.option("yb", y.b.to_string());
      s.option("vmax", std::to_string(vmax));
      s.option("budget", std::to_string(budget));
      s.option("max-states", std::to_string(max_states));
      auto res = model.reach(x, y, budget, static_cast<std::size_t>(max_states));
      std::vector<std::string> path;
      for (const auto& mv : res.path) path.push_back(mv.to_string());
      Outcome o{{{"status", status_name(res.status)},
                 {"reachable", res.status == OrbitResult::Status::Reached},
                 {"moves", path.size()},
                 {"path", path},
                 {"states_explored", res.states_explored}},
                status_name(res.status)};
      if (res.status == OrbitResult::Status::Reached)
        o.human += " in " + std::to_string(path.size()) + " moves" + (path.empty() ? "" : ": " + join(path, " "));
      if (res.status == OrbitResult::Status::BudgetExhausted) o.exit_code = kExitExhausted;
      return o;
    });
    r->add_option("--window", S.s9, "comma-separated primes")->required();
    r->add_option("--x", S.s1, "valuations of x, e.g. inf,1,0")->required();
    r->add_option("--xb", seeded(S.s2, "0"), "b coordinate of x")->capture_default_str();
    r->add_option("--y", S.s3, "valuations of y")->required();
    r->add_option("--yb", seeded(S.s4, "0"), "b coordinate of y")->capture_default_str();
    r->add_option("--vmax", seeded(S.s5, std::to_string(kDefaultVmax)), "truncation level")->capture_default_str();
    r->add_option("--budget", seeded(S.s6, std::to_string(kDefaultMoveBudget)), "move budget")->capture_default_str();
    r->add_option("--max-states", seeded(S.s7, "200000"), "state limit")->capture_default_str();
  }

  // functor
  auto* functor = group("functor", "order on pairs (m, Γ) and field inclusions");
  auto upper_of = [](Session& s, const std::string& modulus, const std::string& gamma) {
    auto n = parse_modulus(s.field(), modulus);
    auto L = ResidueSubgroup::parse(make_residue_group(n), gamma);
    s.option("upper-modulus", n.to_string());
    s.option("upper-gamma", L.spec());
    return L;
  };
  {
    auto& S = slots.emplace_back();
    auto* l = leaf(functor, "leq", "(m, Γ) <= (n, Λ)", Scope::Subgroup, [&](Session& s) {
      auto L = upper_of(s, S.s1, S.s2);
      bool r = leq_pairs(s.gamma(), L);
      return Outcome{{{"leq", r}}, yes_no(r)};
    });
    l->add_option("--upper-modulus", S.s1, "n")->required();
    l->add_option("--upper-gamma", seeded(S.s2, "trivial"), "Λ")->capture_default_str();
  }
  {
    auto& S = slots.emplace_back();
    auto* i = leaf(functor, "include", "R_{n,Λ} ⊆ R_{m,Γ}, with enumeration", Scope::Subgroup, [&](Session& s) {
      auto L = upper_of(s, S.s1, S.s2);
      Integer bound = parse_bound(S.s3, "bound");
      s.option("bound", bound.get_str());
      auto r = monoid_inclusion_check(s.gamma(), L, bound);
      return Outcome{report_json(r), report_human(r)};
    });
    i->add_option("--upper-modulus", S.s1, "n")->required();
    i->add_option("--upper-gamma", seeded(S.s2, "trivial"), "Λ")->capture_default_str();
    i->add_option("--bound", seeded(S.s3, "1000"), "enumeration bound")->capture_default_str();
  }
  {
    auto& S = slots.emplace_back();
    leaf(functor, "induce", "modulus of K' induced from Q", Scope::Modulus, [&](Session& s) {
      auto K2 = NumberField::parse(S.s1);
      s.option("target-field", K2.spec());
      auto m = induced_modulus(s.modulus(), K2);
      return Outcome{{{"modulus", m.to_string()}}, m.to_string()};
    })->add_option("--target-field", S.s1, "quadratic field")->required();
  }
  {
    auto& S = slots.emplace_back();
    auto* f = leaf(functor, "fieldinc", "i(R_{m,Γ}) ⊆ R'_{m',Γ'}, with enumeration", Scope::Subgroup, [&](Session& s) {
      auto K2 = NumberField::parse(S.s1);
      auto m2 = parse_modulus(K2, S.s2);
      auto G2 = ResidueSubgroup::parse(make_residue_group(m2), S.s3);
      Integer bound = parse_bound(S.s4, "bound");
      s.option("target-field", K2.spec());
      s.option("target-modulus", m2.to_string());
      s.option("target-gamma", G2.spec());
      s.option("bound", bound.get_str());
      auto r = field_inclusion_check(s.gamma(), G2, bound);
      return Outcome{report_json(r), report_human(r)};
    });
    f->add_option("--target-field", S.s1, "quadratic field")->required();
    f->add_option("--target-modulus", seeded(S.s2, "trivial"), "m'")->capture_default_str();
    f->add_option("--target-gamma", seeded(S.s3, "trivial"), "Γ'")->capture_default_str();
    f->add_option("--bound", seeded(S.s4, "1000"), "enumeration bound")->capture_default_str();
  }
  {
    auto& S = slots.emplace_back();
    auto* p = leaf(functor, "positivity", "is w(x) > 0 forced on R_{m,1}", Scope::Modulus, [&](Session& s) {
      long w = parse_long(S.s1, "embedding");
      Integer bound = parse_bound(S.s2, "bound");
      s.option("embedding", std::to_string(w));
      s.option("bound", bound.get_str());
      auto r = ray_positivity_detect(static_cast<int>(w), s.modulus(), bound);
      return Outcome{{{"forced", r.forced}, {"counterexample", or_null(r.counterexample)}},
                     r.forced ? "forced" : "counterexample " + r.counterexample->to_string()};
    });
    p->add_option("--embedding", S.s1, "real embedding label")->required();
    p->add_option("--bound", seeded(S.s2, "1000"), "norm bound")->capture_default_str();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  const Leaf* chosen = nullptr;
  for (auto* sub : app.get_subcommands())
    for (auto* l : sub->get_subcommands()) chosen = &leaves[leaf_of.at(l)];
  if (!chosen) {
    err << "error: no command selected\n";
    return kExitInvalid;
  }

  const bool structured = raw.format == "structured";
  Session session(raw);
  json record;
  record["command"] = chosen->path;
  try {
    json inputs;
    inputs["field"] = session.field().spec();
    if (chosen->scope != Scope::Field) inputs["modulus"] = session.modulus().to_string();
    if (chosen->scope == Scope::Subgroup) inputs["gamma"] = session.gamma().spec();
    Outcome o = chosen->body(session);

    std::vector<std::string> argv;
    for (std::size_t p = 0, q; p < chosen->path.size(); p = q + 1) {
      q = chosen->path.find(' ', p);
      if (q == std::string::npos) q = chosen->path.size();
      argv.push_back(chosen->path.substr(p, q - p));
    }
    for (const auto& [k, v] : inputs.items()) argv.push_back("--" + k + "=" + v.get<std::string>());
    std::vector<std::string> positionals;
    for (const auto& in : session.inputs()) {
      inputs[in.name] = in.value;
      if (in.positional)
        positionals.push_back(in.value.get<std::string>());
      else if (in.value.is_array())
        for (const auto& v : in.value) argv.push_back("--" + in.name + "=" + v.get<std::string>());
      else
        argv.push_back("--" + in.name + "=" + in.value.get<std::string>());
    }
    argv.push_back("--format=" + raw.format);
    if (!positionals.empty()) {
      argv.push_back("--");
      argv.insert(argv.end(), positionals.begin(), positionals.end());
    }
    record["inputs"] = inputs;
    record["argv"] = argv;
    record["result"] = o.result;
    if (structured)
      out << record.dump() << "\n";
    else
      out << o.human << "\n";
    return o.exit_code;
  } catch (const Error& e) {
    if (structured) {
      record["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
      out << record.dump() << "\n";
    }
    err << "error [" << error_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace cmon::cli
