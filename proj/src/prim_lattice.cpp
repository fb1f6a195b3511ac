#include "cmon/prim_lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_set>

#include "cmon/constructions.hpp"
#include "cmon/error.hpp"

namespace cmon {

namespace {

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == ' ') continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) fail(ErrorCode::Parse, "unbalanced parentheses in '" + s + "'");
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) fail(ErrorCode::Parse, "unbalanced parentheses in '" + s + "'");
  if (!cur.empty() || !parts.empty()) parts.push_back(cur);
  for (const auto& p : parts)
    if (p.empty()) fail(ErrorCode::Parse, "empty prime spec in '" + s + "'");
  return parts;
}

void require_same_window(const PrimeWindow& x, const PrimeWindow& y) {
  if (!(x == y)) fail(ErrorCode::WindowMismatch, "windows " + x.spec() + " and " + y.spec() + " differ");
}

}  // namespace

PrimeWindow::PrimeWindow(const Modulus& m, std::vector<PrimeIdeal> primes) : K_(m.field()), primes_(std::move(primes)) {
  if (primes_.size() > kMaxWindow) fail(ErrorCode::ScaleExceeded, "window holds more than 20 primes");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    require_same_field(primes_[i].ideal.field(), K_);
    if (m.in_support(primes_[i]))
      fail(ErrorCode::PrimeInSupport, primes_[i].to_string() + " divides " + m.finite().to_string());
    for (std::size_t j = 0; j < i; ++j)
      if (primes_[j] == primes_[i]) fail(ErrorCode::InvalidArgument, "prime " + primes_[i].to_string() + " repeated in window");
  }
}

PrimeWindow PrimeWindow::parse(const Modulus& m, const std::string& spec) {
  std::vector<PrimeIdeal> primes;
  for (const auto& part : split_top_level(spec)) {
    auto P = as_prime(Ideal::parse(m.field(), part));
    if (!P) fail(ErrorCode::InvalidArgument, "'" + part + "' is not a prime ideal");
    primes.push_back(*P);
  }
  return PrimeWindow(m, std::move(primes));
}

std::optional<std::size_t> PrimeWindow::index_of(const PrimeIdeal& P) const {
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (primes_[i] == P) return i;
  return std::nullopt;
}

std::string PrimeWindow::spec() const {
  std::string out;
  for (std::size_t i = 0; i < primes_.size(); ++i) out += (i ? "," : "") + primes_[i].to_string();
  return out;
}

std::size_t Descriptor::size() const { return static_cast<std::size_t>(std::popcount(mask)); }

std::string Descriptor::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < window.size(); ++i)
    if (contains(i)) {
      out += (first ? "" : ",") + window.primes()[i].to_string();
      first = false;
    }
  return out + "}";
}

Descriptor parse_descriptor(const PrimeWindow& w, const std::string& spec) {
  std::string s = spec;
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  Descriptor D{w, 0};
  for (const auto& part : split_top_level(s)) {
    auto P = as_prime(Ideal::parse(w.field(), part));
    auto i = P ? w.index_of(*P) : std::nullopt;
    if (!i) fail(ErrorCode::InvalidArgument, "'" + part + "' is not a window prime");
    D.mask |= 1u << *i;
  }
  return D;
}

Descriptor full_descriptor(const PrimeWindow& w) {
  return {w, w.size() == 32 ? ~0u : ((1u << w.size()) - 1)};
}

bool ideal_leq(const Descriptor& A, const Descriptor& B) {
  require_same_window(A.window, B.window);
  return (A.mask & ~B.mask) == 0;
}

std::vector<Descriptor> closure_of(const Descriptor& A) {
  const std::uint32_t full = full_descriptor(A.window).mask;
  const std::uint32_t free = full & ~A.mask;
  std::vector<Descriptor> out;
  // Enumerate subsets of the free positions.
  for (std::uint32_t s = free;; s = (s - 1) & free) {
    out.push_back({A.window, A.mask | s});
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end(), [](const Descriptor& x, const Descriptor& y) {
    return std::pair(x.size(), x.mask) < std::pair(y.size(), y.mask);
  });
  return out;
}

Extremal extremal_ideals(const PrimeWindow& w) {
  if (w.size() == 0) fail(ErrorCode::InvalidArgument, "extremal ideals need a nonempty window");
  Extremal e{full_descriptor(w), {}};
  for (std::size_t i = 0; i < w.size(); ++i) e.minimals.push_back({w, 1u << i});
  return e;
}

BoundaryDefect boundary_defect_data(const PrimeIdeal& P, const QuotientGroup& Q) {
  PrimeClassData data = prime_class_order(P, Q);
  Ideal T = Ideal::principal(data.generator);
  Integer count = T.integral_norm();
  if (count > kMaxCosetEnumeration)
    fail(ErrorCode::ScaleExceeded, "R/" + T.to_string() + " has " + count.get_str() + " cosets");
  auto reps = residue_representatives(T);
  if (Integer(reps.size()) != count) fail(ErrorCode::Internal, "coset enumeration disagrees with the norm");
  return {data, count, std::move(reps)};
}

std::vector<std::size_t> zero_set(const TruncatedPoint& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.valuations.size(); ++i)
    if (!x.valuations[i]) out.push_back(i);
  return out;
}

bool quasi_orbit_membership(const TruncatedPoint& x, const TruncatedPoint& y) {
  if (x.valuations.size() != y.valuations.size()) fail(ErrorCode::WindowMismatch, "points over different windows");
  for (std::size_t i = 0; i < x.valuations.size(); ++i)
    if (!x.valuations[i] && y.valuations[i]) return false;
  return true;
}

std::string OrbitMove::to_string() const {
  switch (kind) {
    case Kind::TranslateToZero: return "translate(0)";
    case Kind::TranslateToTarget: return "translate(y)";
    case Kind::Multiply: break;
  }
  std::string out = "multiply(";
  for (std::size_t i = 0; i < delta.size(); ++i) out += (i ? "," : "") + std::to_string(delta[i]);
  return out + ")";
}

const char* status_name(OrbitResult::Status s) {
  switch (s) {
    case OrbitResult::Status::Reached: return "reached";
    case OrbitResult::Status::NotInClosure: return "not_in_closure";
    case OrbitResult::Status::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

inline constexpr std::size_t kMaxOrbitWindow = 6;

OrbitModel::OrbitModel(PrimeWindow window, const Modulus& m, long vmax)
    : window_(std::move(window)), m_(m), vmax_(vmax) {
  require_same_field(window_.field(), m.field());
  if (vmax_ < 1) fail(ErrorCode::InvalidArgument, "V_max must be positive");
  if (window_.size() > kMaxOrbitWindow) fail(ErrorCode::ScaleExceeded, "orbit search supports at most 6 window primes");
  const std::size_t W = window_.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < W; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> delta(W);
    std::size_t c = code;
    for (std::size_t i = 0; i < W; ++i, c /= 3) delta[i] = static_cast<int>(c % 3) - 1;
    if (std::all_of(delta.begin(), delta.end(), [](int d) { return d == 0; })) continue;
    // k = a / b with a, b ∈ R_{m,1} and v_P(k) = delta_P on the window.
    std::vector<Prescription> up, down;
    for (std::size_t i = 0; i < W; ++i) {
      up.push_back({window_.primes()[i], std::max(delta[i], 0)});
      down.push_back({window_.primes()[i], std::max(-delta[i], 0)});
    }
    multipliers_.push_back(approx_element(up, m_) / approx_element(down, m_));
    deltas_.push_back(std::move(delta));
  }
}

Ideal OrbitModel::truncation_ideal(const std::vector<std::optional<long>>& v, long cap) const {
  std::vector<PrimePower> f;
  for (std::size_t i = 0; i < window_.size(); ++i) {
    long e = v[i] ? std::min(*v[i], cap) : cap;
    if (e > 0) f.push_back({window_.primes()[i], e});
  }
  return from_factorization(window_.field(), f);
}

// Representative in R of z modulo M, for z integral at every prime of M.
Element OrbitModel::canonical(const Element& z, const Ideal& M) const {
  if (z.is_integral()) return reduce_mod(z, M);
  Ideal D = (Ideal::principal(z) + Ideal::unit(z.field())).inverse();
  auto split = split_in_sum(from_integer(z.field(), 1), D, M);
  if (!split) fail(ErrorCode::Internal, "denominator of " + z.to_string() + " meets the window");
  return reduce_mod(split->first * z, M);
}

TruncatedPoint OrbitModel::point(std::vector<std::optional<long>> valuations, const Element& b) const {
  if (valuations.size() != window_.size()) fail(ErrorCode::WindowMismatch, "valuation count differs from window size");
  for (const auto& v : valuations)
    if (v && (*v < 0 || *v > vmax_))
      fail(ErrorCode::InvalidArgument, "valuation " + std::to_string(*v) + " outside 0.." + std::to_string(vmax_));
  require_same_field(b.field(), window_.field());
  if (!b.is_integral()) fail(ErrorCode::InvalidArgument, "b must be integral");
  Ideal M = truncation_ideal(valuations, vmax_);
  return {std::move(valuations), reduce_mod(b, M)};
}

std::vector<OrbitMove> OrbitModel::moves() const {
  std::vector<OrbitMove> out{{OrbitMove::Kind::TranslateToZero, {}}, {OrbitMove::Kind::TranslateToTarget, {}}};
  for (const auto& d : deltas_) out.push_back({OrbitMove::Kind::Multiply, d});
  return out;
}

std::optional<TruncatedPoint> OrbitModel::apply(const TruncatedPoint& s, const OrbitMove& mv, const TruncatedPoint& target,
                                                long clamp) const {
  const NumberField& K = window_.field();
  const long precision = clamp;
  Ideal M = truncation_ideal(std::vector<std::optional<long>>(window_.size()), precision);
  switch (mv.kind) {
    case OrbitMove::Kind::TranslateToZero:
      return TruncatedPoint{s.valuations, Element(K)};
    case OrbitMove::Kind::TranslateToTarget:
      return TruncatedPoint{s.valuations, reduce_mod(target.b, M)};
    case OrbitMove::Kind::Multiply: break;
  }
  auto it = std::find(deltas_.begin(), deltas_.end(), mv.delta);
  if (it == deltas_.end()) fail(ErrorCode::InvalidArgument, "unknown move " + mv.to_string());
  std::size_t idx = static_cast<std::size_t>(it - deltas_.begin());

  TruncatedPoint out{s.valuations, s.b};
  for (std::size_t i = 0; i < window_.size(); ++i) {
    auto& v = out.valuations[i];
    if (!v) continue;  // infinity is absorbing
    long nv = *v + mv.delta[i];
    if (nv < 0) return std::nullopt;
    v = std::min(nv, clamp);
  }
  if (!s.b.is_zero())
    for (std::size_t i = 0; i < window_.size(); ++i)
      if (mv.delta[i] < 0 && valuation(s.b, window_.primes()[i]) < -mv.delta[i]) return std::nullopt;

  out.b = s.b.is_zero() ? s.b : canonical(multipliers_[idx] * s.b, M);
  return out;
}

bool OrbitModel::in_neighborhood(const TruncatedPoint& s, const TruncatedPoint& y) const {
  for (std::size_t i = 0; i < window_.size(); ++i) {
    const auto& vy = y.valuations[i];
    const auto& vs = s.valuations[i];
    if (vy) {
      if (!vs || *vs != *vy) return false;
    } else if (vs && *vs < vmax_) {
      return false;
    }
  }
  Element diff = s.b - y.b;
  if (diff.is_zero()) return true;
  for (std::size_t i = 0; i < window_.size(); ++i) {
    long need = y.valuations[i] ? std::min(*y.valuations[i], vmax_) : vmax_;
    if (need > 0 && valuation(diff, window_.primes()[i]) < need) return false;
  }
  return true;
}

// Lower bound on the remaining moves: each multiply shifts every valuation by
// at most one, and a mismatched b needs at least one more move.
long OrbitModel::heuristic(const TruncatedPoint& s, const TruncatedPoint& y) const {
  long h = 0;
  for (std::size_t i = 0; i < window_.size(); ++i) {
    const auto& vy = y.valuations[i];
    const auto& vs = s.valuations[i];
    if (!vs) continue;
    h = std::max(h, vy ? std::abs(*vs - *vy) : std::max(0L, vmax_ - *vs));
  }
  if (h == 0 && !in_neighborhood(s, y)) h = 1;
  return h;
}

OrbitResult OrbitModel::reach(const TruncatedPoint& x, const TruncatedPoint& y, long budget, std::size_t max_states) const {
  if (x.valuations.size() != window_.size() || y.valuations.size() != window_.size())
    fail(ErrorCode::WindowMismatch, "points over a different window");
  if (!quasi_orbit_membership(x, y)) return {OrbitResult::Status::NotInClosure, {}, 0};
  // Valuations above this clamp cannot return below V_max within the budget,
  // so clamping never changes the outcome.
  const long clamp = vmax_ + budget + 1;
  Ideal M = truncation_ideal(std::vector<std::optional<long>>(window_.size()), clamp);

  struct Node {
    TruncatedPoint point;
    long cost;
    std::size_t parent;
    std::size_t move;
  };
  auto key = [](const TruncatedPoint& p) {
    std::string k;
    for (const auto& v : p.valuations) k += (v ? std::to_string(*v) : "inf") + ",";
    return k + p.b.to_string();
  };
  const auto all_moves = moves();
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  // (f, -g, node), min-ordered: ties go to the deeper node.
  using Entry = std::tuple<long, long, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;

  TruncatedPoint start{x.valuations, reduce_mod(x.b, M)};
  nodes.push_back({start, 0, 0, 0});
  seen.insert(key(start));
  frontier.emplace(heuristic(start, y), 0, 0);

  while (!frontier.empty()) {
    auto [f, neg_g, id] = frontier.top();
    frontier.pop();
    const long g = -neg_g;
    if (in_neighborhood(nodes[id].point, y)) {
      OrbitResult r{OrbitResult::Status::Reached, {}, nodes.size()};
      for (std::size_t n = id; n != 0; n = nodes[n].parent) r.path.push_back(all_moves[nodes[n].move]);
      std::reverse(r.path.begin(), r.path.end());
      return r;
    }
    if (g >= budget) continue;
    for (std::size_t mi = 0; mi < all_moves.size(); ++mi) {
      auto next = apply(nodes[id].point, all_moves[mi], y, clamp);
      if (!next) continue;
      if (!seen.insert(key(*next)).second) continue;
      long h = heuristic(*next, y);
      if (g + 1 + h > budget) continue;
      if (nodes.size() >= max_states) return {OrbitResult::Status::BudgetExhausted, {}, nodes.size()};
      nodes.push_back({std::move(*next), g + 1, id, mi});
      frontier.emplace(g + 1 + h, -(g + 1), nodes.size() - 1);
    }
  }
  return {OrbitResult::Status::BudgetExhausted, {}, nodes.size()};
}

}  // namespace cmon
