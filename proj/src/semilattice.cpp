#include "cmon/semilattice.hpp"

#include <algorithm>

#include "cmon/error.hpp"

namespace cmon {

namespace {

std::size_t last_top_level_plus(const std::string& s) {
  int depth = 0;
  std::size_t pos = std::string::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == '+' && depth == 0 && i > 0) pos = i;
  }
  return pos;
}

void require_context(const Context& x, const Context& y) {
  if (!same_context(x, y)) fail(ErrorCode::ContextMismatch, "constructible ideals live over different (m, Gamma)");
}

bool in_monoid(const Context& ctx, const Element& a) {
  return !a.is_zero() && a.is_integral() && in_congruence_monoid(a, *ctx).member;
}

}  // namespace

Context make_context(const ResidueSubgroup& gamma) { return std::make_shared<const ResidueSubgroup>(gamma); }

Context full_context(const NumberField& K) {
  return make_context(ResidueSubgroup::full(make_residue_group(Modulus::trivial(K))));
}

bool same_context(const Context& x, const Context& y) { return x == y || *x == *y; }

SemigroupElement make_semigroup_element(const Context& ctx, const Element& b, const Element& a) {
  require_same_field(b.field(), ctx->field());
  if (!b.is_integral()) fail(ErrorCode::Precondition, "translation part " + b.to_string() + " is not integral");
  if (!in_monoid(ctx, a)) fail(ErrorCode::Precondition, a.to_string() + " is not in the congruence monoid");
  return {b, a};
}

ConstructibleIdeal ConstructibleIdeal::empty(Context ctx) { return ConstructibleIdeal(std::move(ctx), {}, {}); }

ConstructibleIdeal ConstructibleIdeal::make(Context ctx, const Element& rep, const Ideal& ideal) {
  require_same_field(rep.field(), ctx->field());
  require_same_field(ideal.field(), ctx->field());
  if (!rep.is_integral()) fail(ErrorCode::Precondition, "coset representative " + rep.to_string() + " is not integral");
  if (!ideal.is_integral()) fail(ErrorCode::Precondition, "ideal " + ideal.to_string() + " is not integral");
  if (!ctx->modulus().coprime_to(ideal))
    fail(ErrorCode::NotCoprime, "ideal " + ideal.to_string() + " is not coprime to " + ctx->modulus().finite().to_string());
  Element r = reduce_mod(rep, ideal);
  return ConstructibleIdeal(std::move(ctx), std::move(r), ideal);
}

ConstructibleIdeal ConstructibleIdeal::parse(Context ctx, const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (ch != ' ') s += ch;
  if (s == "empty") return empty(std::move(ctx));
  std::size_t plus = last_top_level_plus(s);
  if (plus == std::string::npos || plus + 1 >= s.size())
    fail(ErrorCode::Parse, "constructible ideal '" + raw + "' is not of the form <rep>+<ideal>");
  const NumberField& K = ctx->field();
  Element rep = Element::parse(K, s.substr(0, plus));
  Ideal ideal = Ideal::parse(K, s.substr(plus + 1));
  return make(std::move(ctx), rep, ideal);
}

const Element& ConstructibleIdeal::rep() const {
  if (!rep_) fail(ErrorCode::Precondition, "the empty constructible ideal has no representative");
  return *rep_;
}

const Ideal& ConstructibleIdeal::ideal() const {
  if (!ideal_) fail(ErrorCode::Precondition, "the empty constructible ideal has no ideal");
  return *ideal_;
}

bool ConstructibleIdeal::contains(const ConstructibleIdeal& Y) const {
  require_context(ctx_, Y.ctx_);
  if (Y.is_empty()) return true;
  if (is_empty()) return false;
  return ideal_->divides(*Y.ideal_) && ideal_->contains(Y.rep() - *rep_);
}

bool ConstructibleIdeal::contains(const SemigroupElement& s) const {
  if (is_empty()) return false;
  return ideal_->contains(s.b - *rep_) && ideal_->contains(s.a) && in_monoid(ctx_, s.a);
}

std::string ConstructibleIdeal::to_string() const {
  if (is_empty()) return "empty";
  return rep_->to_string() + "+" + ideal_->to_string();
}

bool operator==(const ConstructibleIdeal& x, const ConstructibleIdeal& y) {
  if (!same_context(x.ctx_, y.ctx_)) return false;
  if (x.is_empty() || y.is_empty()) return x.is_empty() == y.is_empty();
  return *x.ideal_ == *y.ideal_ && *x.rep_ == *y.rep_;
}

ConstructibleIdeal meet(const ConstructibleIdeal& X, const ConstructibleIdeal& Y) {
  require_context(X.context(), Y.context());
  if (X.is_empty() || Y.is_empty()) return ConstructibleIdeal::empty(X.context());
  // x - y = alpha + beta with alpha ∈ A, beta ∈ B gives x - alpha ∈ both cosets.
  auto split = split_in_sum(X.rep() - Y.rep(), X.ideal(), Y.ideal());
  if (!split) return ConstructibleIdeal::empty(X.context());
  return ConstructibleIdeal::make(X.context(), X.rep() - split->first, X.ideal().intersect(Y.ideal()));
}

ConstructibleIdeal act(const SemigroupElement& g, const ConstructibleIdeal& X) {
  if (!in_monoid(X.context(), g.a)) fail(ErrorCode::Precondition, g.a.to_string() + " is not in the congruence monoid");
  if (X.is_empty()) return X;
  return ConstructibleIdeal::make(X.context(), g.b + g.a * X.rep(), X.ideal() * g.a);
}

ConstructibleIdeal embed_full(const ConstructibleIdeal& X) {
  Context ctx = full_context(X.context()->field());
  if (X.is_empty()) return ConstructibleIdeal::empty(ctx);
  return ConstructibleIdeal::make(ctx, X.rep(), X.ideal());
}

std::optional<SemigroupElement> independence_witness(const ConstructibleIdeal& X,
                                                     const std::vector<ConstructibleIdeal>& covers) {
  for (const auto& C : covers)
    if (!X.contains(C)) fail(ErrorCode::CoverNotContained, C.to_string() + " is not contained in " + X.to_string());
  if (X.is_empty()) return std::nullopt;
  for (const auto& C : covers)
    if (C == X) return std::nullopt;
  // Every nonempty cover has an ideal strictly inside A, so some prime has a
  // larger exponent there; a ∈ A with v_P(a) = v_P(A) on all those primes
  // lies in no cover ideal.
  const Ideal& A = X.ideal();
  std::vector<Prescription> pres;
  auto add = [&](const PrimeIdeal& P) {
    if (std::none_of(pres.begin(), pres.end(), [&](const Prescription& q) { return q.prime == P; }))
      pres.push_back({P, valuation(A, P)});
  };
  for (const auto& P : support(A)) add(P);
  for (const auto& C : covers)
    if (!C.is_empty())
      for (const auto& P : support(C.ideal())) add(P);
  Element a = approx_element(pres, X.context()->modulus());
  SemigroupElement w{X.rep(), a};
  if (!X.contains(w)) fail(ErrorCode::Internal, "independence witness left X");
  for (const auto& C : covers)
    if (C.contains(w)) fail(ErrorCode::Internal, "independence witness fell into a cover");
  return w;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Ta: return "Ta";
    case Relation::Tb: return "Tb";
    case Relation::Tc: return "Tc";
    case Relation::Td: return "Td";
    case Relation::I: return "I";
    case Relation::II: return "II";
  }
  return "?";
}

std::optional<Relation> parse_relation(const std::string& s) {
  for (Relation r : {Relation::Ta, Relation::Tb, Relation::Tc, Relation::Td, Relation::I, Relation::II})
    if (s == relation_name(r)) return r;
  return std::nullopt;
}

RelationReport relation_check(Relation which, const std::vector<RelationSample>& samples) {
  RelationReport report{which, 0, {}};
  for (const auto& s : samples) {
    const Context& ctx = s.X.context();
    const NumberField& K = ctx->field();
    const Element zero(K), one = from_integer(K, 1);
    auto translate = [&](const Element& t) { return SemigroupElement{t, one}; };
    bool ok = true;
    std::string detail;
    switch (which) {
      case Relation::Ta: {
        ok = act(translate(s.x), act(translate(s.g.b), s.X)) == act(translate(s.x + s.g.b), s.X) &&
             act(translate(zero), s.X) == s.X;
        detail = "x=" + s.x.to_string() + " y=" + s.g.b.to_string();
        break;
      }
      case Relation::Tb: {
        SemigroupElement sa{zero, s.g.a};
        ok = act(sa, act(translate(s.x), s.X)) == act(translate(s.g.a * s.x), act(sa, s.X));
        detail = "a=" + s.g.a.to_string() + " x=" + s.x.to_string();
        break;
      }
      case Relation::Tc: {
        if (s.X.is_empty()) break;
        const Ideal& B = s.X.ideal();
        ok = act({zero, s.g.a}, ConstructibleIdeal::make(ctx, zero, B)) == ConstructibleIdeal::make(ctx, zero, B * s.g.a);
        detail = "a=" + s.g.a.to_string() + " B=" + B.to_string();
        break;
      }
      case Relation::Td: {
        if (s.X.is_empty()) break;
        const Ideal& A = s.X.ideal();
        auto base = ConstructibleIdeal::make(ctx, zero, A);
        auto m = meet(ConstructibleIdeal::make(ctx, s.x, A), base);
        ok = A.contains(s.x) ? m == base : m.is_empty();
        detail = "x=" + s.x.to_string() + " A=" + A.to_string();
        break;
      }
      case Relation::I: {
        ok = act(s.g * s.h, s.X) == act(s.g, act(s.h, s.X));
        detail = "g=" + s.g.to_string() + " h=" + s.h.to_string();
        break;
      }
      case Relation::II: {
        auto gX = act(s.g, s.X);
        auto Y = act(s.h, s.X);
        ok = s.X.contains(s.h) == gX.contains(s.g * s.h) && act(s.g, meet(s.X, Y)) == meet(gX, act(s.g, Y));
        detail = "g=" + s.g.to_string() + " h=" + s.h.to_string();
        break;
      }
    }
    ++report.checked;
    if (!ok) report.violations.push_back(std::string(relation_name(which)) + " fails at X=" + s.X.to_string() + " " + detail);
  }
  return report;
}

PrimeIdeal prime_in_class_avoiding(const QuotientGroup& Q, QuotientGroup::Index target,
                                   const std::vector<Element>& avoid_elements, const std::vector<Ideal>& avoid_ideals,
                                   long max_norm) {
  if (target >= Q.order()) fail(ErrorCode::InvalidArgument, "class index out of range");
  const NumberField& K = Q.field();
  Integer prev = 0;
  for (Integer B = 64;; B *= 4) {
    if (B > max_norm) B = max_norm;
    for (const auto& P : primes_up_to(K, B)) {
      if (P.norm() <= prev || Q.modulus().in_support(P)) continue;
      bool bad = false;
      for (const auto& y : avoid_elements)
        if (!y.is_zero() && P.ideal.contains(y)) bad = true;
      for (const auto& I : avoid_ideals)
        if (P.ideal.divides(I)) bad = true;
      if (!bad && Q.class_of(P.ideal) == target) return P;
    }
    if (B >= max_norm) break;
    prev = B;
  }
  fail(ErrorCode::BoundExhausted, "no prime in the class up to norm " + std::to_string(max_norm));
}

ConstructibleIdeal faithfulness_witness(const QuotientGroup& Q, QuotientGroup::Index target, const Ideal& base,
                                        const std::vector<Subcoset>& subcosets, long max_norm) {
  Context ctx = make_context(Q.gamma());
  const Element zero(Q.field());
  auto outer = ConstructibleIdeal::make(ctx, zero, base);
  std::vector<Element> avoid_elements;
  std::vector<Ideal> avoid_ideals;
  for (const auto& sc : subcosets) {
    auto inner = ConstructibleIdeal::make(ctx, sc.rep, sc.ideal);
    if (!outer.contains(inner) || inner == outer)
      fail(ErrorCode::SubcosetNotProper, inner.to_string() + " is not strictly inside " + outer.to_string());
    avoid_elements.push_back(sc.rep);
    avoid_ideals.push_back(sc.ideal);
  }
  QuotientGroup::Index base_class = Q.class_of(base);
  if (subcosets.empty() && base_class == target) return outer;
  auto P = prime_in_class_avoiding(Q, Q.multiply(target, Q.inverse(base_class)), avoid_elements, avoid_ideals, max_norm);
  auto w = ConstructibleIdeal::make(ctx, zero, P.ideal * base);
  for (const auto& sc : subcosets)
    if (w.contains(ConstructibleIdeal::make(ctx, sc.rep, sc.ideal)))
      fail(ErrorCode::Internal, "faithfulness witness swallowed a subcoset");
  return w;
}

}  // namespace cmon
