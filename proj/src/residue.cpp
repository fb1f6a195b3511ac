#include "cmon/residue.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "cmon/error.hpp"
#include "cmon/search.hpp"

namespace cmon {

namespace {

constexpr long kMaxResidueModulusNorm = 2'000'000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Modulus::Modulus(const NumberField& K, std::vector<int> infinite, const Ideal& finite)
    : K_(K), inf_(std::move(infinite)), fin_(finite) {
  require_same_field(K, finite.field());
  std::sort(inf_.begin(), inf_.end());
  if (std::adjacent_find(inf_.begin(), inf_.end()) != inf_.end())
    fail(ErrorCode::InvalidArgument, "repeated real embedding in modulus");
  for (int w : inf_)
    if (w < 0 || w >= K.real_embedding_count())
      fail(ErrorCode::InvalidArgument,
           "embedding label " + std::to_string(w) + " is not a real embedding of " + K.spec());
  if (!fin_.is_integral()) fail(ErrorCode::InvalidArgument, "finite part of a modulus must be integral");
  support_ = cmon::support(fin_);
}

Modulus Modulus::trivial(const NumberField& K) { return Modulus(K, {}, Ideal::unit(K)); }

Modulus Modulus::parse(const NumberField& K, const std::string& raw) {
  std::string spec = trim(raw);
  if (spec == "trivial" || spec.empty()) return trivial(K);
  std::vector<int> inf;
  std::optional<Ideal> fin;
  for (const auto& part0 : split(spec, ';')) {
    std::string part = trim(part0);
    if (part.rfind("inf:", 0) == 0) {
      std::string list = trim(part.substr(4));
      if (list.empty()) continue;
      for (const auto& tok : split(list, ',')) {
        std::string t = trim(tok);
        std::size_t used = 0;
        int w = 0;
        try {
          w = std::stoi(t, &used);
        } catch (const std::exception&) {
          fail(ErrorCode::Parse, "malformed embedding label '" + t + "' in modulus '" + raw + "'");
        }
        if (used != t.size()) fail(ErrorCode::Parse, "malformed embedding label '" + t + "' in modulus '" + raw + "'");
        inf.push_back(w);
      }
    } else if (part.rfind("fin:", 0) == 0) {
      fin = Ideal::parse(K, trim(part.substr(4)));
    } else {
      fail(ErrorCode::Parse, "malformed modulus spec '" + raw + "' (expected inf:<labels>;fin:<generators>)");
    }
  }
  return Modulus(K, inf, fin ? *fin : Ideal::unit(K));
}

bool Modulus::has_infinite(int embedding) const {
  return std::find(inf_.begin(), inf_.end(), embedding) != inf_.end();
}

bool Modulus::in_support(const PrimeIdeal& P) const {
  return std::find(support_.begin(), support_.end(), P) != support_.end();
}

bool Modulus::coprime_to(const Element& a) const {
  if (a.is_zero()) return fin_.is_unit();
  if (!a.is_integral()) return unit_at_support(a);
  for (const auto& P : support_)
    if (P.ideal.contains(a)) return false;
  return true;
}

bool Modulus::coprime_to(const Ideal& I) const {
  for (const auto& P : support_)
    if (valuation(I, P) != 0) return false;
  return true;
}

bool Modulus::unit_at_support(const Element& x) const {
  if (x.is_zero()) return false;
  for (const auto& P : support_)
    if (valuation(x, P) != 0) return false;
  return true;
}

bool Modulus::divides(const Modulus& n) const {
  require_same_field(K_, n.K_);
  for (int w : inf_)
    if (!n.has_infinite(w)) return false;
  return n.fin_.is_subset_of(fin_);
}

std::string Modulus::to_string() const {
  std::string out = "inf:";
  for (std::size_t i = 0; i < inf_.size(); ++i) out += (i ? "," : "") + std::to_string(inf_[i]);
  std::string f = fin_.to_string();
  if (f.size() > 1 && f.front() == '(') f = f.substr(1, f.size() - 2);
  return out + ";fin:" + f;
}

std::string ResidueClass::to_string() const {
  std::string s = "(";
  for (int g : signs) s += g > 0 ? '+' : '-';
  return s + "|" + residue.to_string() + ")";
}

std::optional<std::pair<Element, Element>> localization_parts(const Element& x, const Modulus& m) {
  const NumberField& K = x.field();
  if (x.is_zero()) return std::make_pair(x, from_integer(K, 1));
  for (const auto& P : m.support())
    if (valuation(x, P) < 0) return std::nullopt;
  Integer D = lcm(x.p().get_den(), x.q().get_den());
  Element Dx = from_integer(K, D);
  if (m.coprime_to(Dx)) return std::make_pair(x * Rational(D), Dx);
  // Denominator ideal R ∩ x^{-1}R is coprime to m_0; pick b in it with b = 1 mod m_0.
  Ideal den_ideal = Ideal::unit(K).intersect(Ideal::principal(x).inverse());
  auto split = split_in_sum(from_integer(K, 1), den_ideal, m.finite());
  Element b = split->first;
  return std::make_pair(b * x, b);
}

ResidueGroup::ResidueGroup(const Modulus& m) : m_(m) {
  const Ideal& M = m.finite();
  Integer N = M.integral_norm();
  if (N > kMaxResidueModulusNorm)
    fail(ErrorCode::ScaleExceeded, "N(m_0) = " + N.get_str() + " is beyond the enumeration scale");
  slot_.assign(N.get_ui(), -1);
  for (const auto& r : residue_representatives(M)) {
    if (!m.coprime_to(r) && !M.is_unit()) continue;
    slot_[residue_slot(r)] = static_cast<long>(finite_.size());
    finite_.push_back(r);
  }
  one_ = static_cast<Index>(slot_[residue_slot(reduce_mod(from_integer(m.field(), 1), M))]);
}

ResidueGroup::Index ResidueGroup::residue_slot(const Element& r) const {
  const Ideal& M = m_.finite();
  Integer cy = m_.field().is_quadratic() ? M.c() : Integer(1);
  Integer s = r.p().get_num() * cy + r.q().get_num();
  return s.get_ui();
}

ResidueClass ResidueGroup::element(Index i) const {
  if (i >= order()) fail(ErrorCode::InvalidArgument, "residue index out of range");
  Index F = finite_.size();
  Index mask = i / F;
  ResidueClass c{{}, finite_[i % F]};
  for (int k = 0; k < m_.r0(); ++k) c.signs.push_back((mask >> k) & 1u ? -1 : 1);
  return c;
}

ResidueGroup::Index ResidueGroup::index_of(const ResidueClass& c) const {
  if (static_cast<int>(c.signs.size()) != m_.r0()) fail(ErrorCode::InvalidArgument, "sign vector has the wrong length");
  Index mask = 0;
  for (int k = 0; k < m_.r0(); ++k)
    if (c.signs[k] < 0) mask |= Index{1} << k;
  Element r = reduce_mod(c.residue, m_.finite());
  long s = slot_[residue_slot(r)];
  if (s < 0) fail(ErrorCode::NotCoprime, "residue " + r.to_string() + " is not a unit modulo " + m_.finite().to_string());
  return mask * finite_.size() + static_cast<Index>(s);
}

ResidueGroup::Index ResidueGroup::multiply(Index i, Index j) const {
  Index F = finite_.size();
  Index mask = (i / F) ^ (j / F);
  Element r = reduce_mod(finite_[i % F] * finite_[j % F], m_.finite());
  return mask * F + static_cast<Index>(slot_[residue_slot(r)]);
}

ResidueGroup::Index ResidueGroup::power(Index i, const Integer& e0) const {
  Integer e = mod_floor(e0, Integer(static_cast<unsigned long>(order())));
  Index r = one_, b = i;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = multiply(r, b);
    b = multiply(b, b);
    e /= 2;
  }
  return r;
}

ResidueGroup::Index ResidueGroup::inverse(Index i) const { return power(i, -1); }

std::size_t ResidueGroup::element_order(Index i) const {
  std::size_t k = 1;
  for (Index x = i; x != one_; x = multiply(x, i)) ++k;
  return k;
}

ResidueGroup::Index ResidueGroup::residue_of(const Element& a) const {
  require_same_field(a.field(), m_.field());
  if (a.is_zero()) fail(ErrorCode::ZeroInput, "residue of zero");
  if (!a.is_integral()) fail(ErrorCode::Precondition, "residue_of needs an integral element; use residue_of_fraction");
  if (!m_.coprime_to(a))
    fail(ErrorCode::NotCoprime, a.to_string() + " is not coprime to " + m_.finite().to_string());
  Index mask = 0;
  for (int k = 0; k < m_.r0(); ++k)
    if (a.sign_at(m_.infinite()[k]) < 0) mask |= Index{1} << k;
  Element r = reduce_mod(a, m_.finite());
  return mask * finite_.size() + static_cast<Index>(slot_[residue_slot(r)]);
}

ResidueGroup::Index ResidueGroup::residue_of_fraction(const Element& x) const {
  require_same_field(x.field(), m_.field());
  if (!m_.unit_at_support(x)) fail(ErrorCode::NotInKm, x.to_string() + " is not a unit at the support of the modulus");
  auto parts = localization_parts(x, m_);
  return multiply(residue_of(parts->first), inverse(residue_of(parts->second)));
}

Element ResidueGroup::realize(Index i) const {
  const NumberField& K = m_.field();
  Ideal R = Ideal::unit(K);
  for (Integer X = 16; X < Integer(1) << 40; X *= 4) {
    for (const auto& e : lattice_points(R, X, X)) {
      if (!m_.coprime_to(e)) continue;
      if (residue_of(e) == i) return e;
    }
  }
  fail(ErrorCode::BoundExhausted, "no element realizes residue class " + class_string(i));
}

std::shared_ptr<const ResidueGroup> make_residue_group(const Modulus& m) {
  return std::make_shared<const ResidueGroup>(m);
}

ResidueSubgroup::ResidueSubgroup(std::shared_ptr<const ResidueGroup> G, std::vector<Index> gens,
                                 std::vector<Element> gen_elements, std::string keyword)
    : G_(std::move(G)), gens_(std::move(gens)), gen_elements_(std::move(gen_elements)), keyword_(std::move(keyword)) {
  member_.assign(G_->order(), false);
  std::deque<Index> queue{G_->identity()};
  member_[G_->identity()] = true;
  while (!queue.empty()) {
    Index x = queue.front();
    queue.pop_front();
    for (Index g : gens_) {
      Index y = G_->multiply(x, g);
      if (!member_[y]) {
        member_[y] = true;
        queue.push_back(y);
      }
    }
  }
  for (Index i = 0; i < member_.size(); ++i)
    if (member_[i]) members_.push_back(i);
}

ResidueSubgroup ResidueSubgroup::trivial(std::shared_ptr<const ResidueGroup> G) {
  return ResidueSubgroup(std::move(G), {}, {}, "trivial");
}

ResidueSubgroup ResidueSubgroup::full(std::shared_ptr<const ResidueGroup> G) {
  std::vector<Index> all(G->order());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  return ResidueSubgroup(std::move(G), all, {}, "full");
}

ResidueSubgroup ResidueSubgroup::generated(std::shared_ptr<const ResidueGroup> G, const std::vector<Index>& gens) {
  for (Index g : gens)
    if (g >= G->order()) fail(ErrorCode::InvalidArgument, "generator outside the residue group");
  return ResidueSubgroup(std::move(G), gens, {}, "");
}

ResidueSubgroup ResidueSubgroup::from_elements(std::shared_ptr<const ResidueGroup> G,
                                               const std::vector<Element>& gens) {
  std::vector<Index> idx;
  for (const auto& e : gens) idx.push_back(G->residue_of(e));
  return ResidueSubgroup(std::move(G), idx, gens, "");
}

ResidueSubgroup ResidueSubgroup::parse(std::shared_ptr<const ResidueGroup> G, const std::string& raw) {
  std::string spec = trim(raw);
  if (spec == "trivial") return trivial(std::move(G));
  if (spec == "full") return full(std::move(G));
  if (spec.rfind("gens:", 0) == 0) {
    std::vector<Element> gens;
    std::string list = trim(spec.substr(5));
    if (!list.empty())
      for (const auto& tok : split(list, ',')) gens.push_back(Element::parse(G->modulus().field(), trim(tok)));
    return from_elements(std::move(G), gens);
  }
  fail(ErrorCode::Parse, "malformed subgroup spec '" + raw + "' (expected trivial, full or gens:<list>)");
}

std::vector<std::size_t> ResidueSubgroup::coset_labels() const {
  std::vector<std::size_t> label(G_->order(), SIZE_MAX);
  std::size_t next = 0;
  for (Index g = 0; g < G_->order(); ++g) {
    if (label[g] != SIZE_MAX) continue;
    for (Index h : members_) label[G_->multiply(g, h)] = next;
    ++next;
  }
  return label;
}

std::vector<std::vector<ResidueSubgroup::Index>> ResidueSubgroup::cosets() const {
  auto label = coset_labels();
  std::vector<std::vector<Index>> out(index());
  for (Index g = 0; g < G_->order(); ++g) out[label[g]].push_back(g);
  return out;
}

ResidueSubgroup ResidueSubgroup::join(const ResidueSubgroup& other) const {
  if (!(modulus() == other.modulus())) fail(ErrorCode::ContextMismatch, "join of subgroups of different groups");
  std::vector<Index> gens = members_;
  gens.insert(gens.end(), other.members_.begin(), other.members_.end());
  return generated(G_, gens);
}

std::string ResidueSubgroup::spec() const {
  if (!keyword_.empty()) return keyword_;
  std::string out = "gens:";
  if (!gen_elements_.empty()) {
    for (std::size_t i = 0; i < gen_elements_.size(); ++i) out += (i ? "," : "") + gen_elements_[i].to_string();
    return out;
  }
  if (order() == 1) return "trivial";
  if (order() == G_->order()) return "full";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? "," : "") + G_->realize(gens_[i]).to_string();
  return out;
}

ResidueSubgroup unit_image(std::shared_ptr<const ResidueGroup> G, const UnitGroup& U) {
  std::vector<Element> gens{U.torsion_generator};
  if (U.fundamental) gens.push_back(*U.fundamental);
  std::vector<ResidueGroup::Index> idx;
  for (const auto& u : gens) idx.push_back(G->residue_of(u));
  return ResidueSubgroup::generated(std::move(G), idx);
}

const char* reason_name(MembershipReason r) {
  switch (r) {
    case MembershipReason::Member: return "Member";
    case MembershipReason::NotCoprime: return "NotCoprime";
    case MembershipReason::NotInGamma: return "NotInGamma";
  }
  return "Unknown";
}

Membership in_congruence_monoid(const Element& a, const ResidueSubgroup& gamma) {
  if (a.is_zero()) fail(ErrorCode::ZeroInput, "membership test for zero");
  if (!a.is_integral()) fail(ErrorCode::Precondition, a.to_string() + " is not integral");
  if (!gamma.modulus().coprime_to(a)) return {false, MembershipReason::NotCoprime};
  if (!gamma.contains(gamma.group().residue_of(a))) return {false, MembershipReason::NotInGamma};
  return {true, MembershipReason::Member};
}

bool in_ray_monoid(const Element& a, const Modulus& m) {
  if (a.is_zero() || !a.is_integral()) return false;
  if (!m.finite().contains(a - from_integer(a.field(), 1))) return false;
  for (int w : m.infinite())
    if (a.sign_at(w) <= 0) return false;
  return true;
}

std::vector<Element> enumerate_monoid(const ResidueSubgroup& gamma, const Integer& norm_bound,
                                      Integer height_bound) {
  if (height_bound < 0) height_bound = norm_bound;
  std::vector<Element> out;
  for (auto& e : lattice_points(Ideal::unit(gamma.field()), norm_bound, height_bound))
    if (in_congruence_monoid(e, gamma).member) out.push_back(std::move(e));
  return out;
}

}  // namespace cmon
