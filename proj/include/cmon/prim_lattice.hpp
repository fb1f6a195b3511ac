#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmon/ray_class.hpp"

namespace cmon {

// Ordered list of distinct primes outside the support of m_0.
class PrimeWindow {
 public:
  PrimeWindow(const Modulus& m, std::vector<PrimeIdeal> primes);
  // Comma-separated prime specs; parentheses protect multi-generator primes.
  static PrimeWindow parse(const Modulus& m, const std::string& spec);

  const std::vector<PrimeIdeal>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  const NumberField& field() const { return K_; }
  std::optional<std::size_t> index_of(const PrimeIdeal& P) const;
  std::string spec() const;

  friend bool operator==(const PrimeWindow& x, const PrimeWindow& y) { return x.K_ == y.K_ && x.primes_ == y.primes_; }

 private:
  NumberField K_;
  std::vector<PrimeIdeal> primes_;
};

inline constexpr std::size_t kMaxWindow = 20;

// I_A for a subset A of the window, as a bit mask over window positions.
struct Descriptor {
  PrimeWindow window;
  std::uint32_t mask = 0;

  bool contains(std::size_t i) const { return (mask >> i) & 1u; }
  std::size_t size() const;
  // "{}" or "{p1,p2,...}" in window order.
  std::string to_string() const;
  friend bool operator==(const Descriptor& x, const Descriptor& y) { return x.window == y.window && x.mask == y.mask; }
};

// A subset of the window given as comma-separated prime specs ("" = empty).
Descriptor parse_descriptor(const PrimeWindow& w, const std::string& spec);
Descriptor full_descriptor(const PrimeWindow& w);

// I_A <= I_B iff A ⊆ B. Throws WindowMismatch.
bool ideal_leq(const Descriptor& A, const Descriptor& B);
// Closure of {A} in the power-cofinite topology: the up-set of A, ordered by
// size, then mask.
std::vector<Descriptor> closure_of(const Descriptor& A);

struct Extremal {
  Descriptor maximal;
  std::vector<Descriptor> minimals;
};
// Throws InvalidArgument on an empty window.
Extremal extremal_ideals(const PrimeWindow& w);

struct BoundaryDefect {
  PrimeClassData data;
  Integer coset_count;                 // N(P)^{f_P} = |R / t_P R|
  std::vector<Element> representatives;  // canonical, one per coset of t_P R
};

inline constexpr long kMaxCosetEnumeration = 1'000'000;

BoundaryDefect boundary_defect_data(const PrimeIdeal& P, const QuotientGroup& Q);

// Truncation of a point [b, a] over a window: per prime a valuation in
// {0, ..., V_max} or infinity (nullopt), and b reduced modulo
// prod P^{min(v_P, V_max)}.
struct TruncatedPoint {
  std::vector<std::optional<long>> valuations;
  Element b;
};

// Window positions with infinite valuation.
std::vector<std::size_t> zero_set(const TruncatedPoint& x);
// y ∈ C_{Z(x)} at truncation level: Z(x) ⊆ Z(y).
bool quasi_orbit_membership(const TruncatedPoint& x, const TruncatedPoint& y);

struct OrbitMove {
  enum class Kind { TranslateToZero, TranslateToTarget, Multiply } kind;
  // Multiply by k ∈ K_{m,1} with v_P(k) = delta_P on the window.
  std::vector<int> delta;
  std::string to_string() const;
};

struct OrbitResult {
  enum class Status { Reached, NotInClosure, BudgetExhausted } status;
  std::vector<OrbitMove> path;
  std::size_t states_explored = 0;
};
const char* status_name(OrbitResult::Status s);

inline constexpr long kDefaultVmax = 4;
inline constexpr long kDefaultMoveBudget = 12;

// Finite shadow of the action of (R_m^{-1}R) ⋊ K_{m,1} on the window.
class OrbitModel {
 public:
  OrbitModel(PrimeWindow window, const Modulus& m, long vmax = kDefaultVmax);

  const PrimeWindow& window() const { return window_; }
  long vmax() const { return vmax_; }

  // Validates valuations in {0..V_max} ∪ {∞} and reduces b.
  TruncatedPoint point(std::vector<std::optional<long>> valuations, const Element& b) const;

  std::vector<OrbitMove> moves() const;
  // Image of s under a move, or nullopt when the image leaves the integral
  // points. Valuations are kept exact up to the clamp.
  std::optional<TruncatedPoint> apply(const TruncatedPoint& s, const OrbitMove& mv, const TruncatedPoint& target,
                                      long clamp) const;

  // Shortest move sequence (A* over the moves) taking x into the truncation
  // neighborhood of y: matching finite valuations, valuation >= V_max where
  // y has infinity, and b within prod P^{min(v_P(y), V_max)} of y's.
  OrbitResult reach(const TruncatedPoint& x, const TruncatedPoint& y, long budget = kDefaultMoveBudget,
                    std::size_t max_states = 200'000) const;

  bool in_neighborhood(const TruncatedPoint& s, const TruncatedPoint& y) const;

 private:
  Ideal truncation_ideal(const std::vector<std::optional<long>>& v, long cap) const;
  Element canonical(const Element& z, const Ideal& M) const;
  long heuristic(const TruncatedPoint& s, const TruncatedPoint& y) const;

  PrimeWindow window_;
  Modulus m_;
  long vmax_;
  std::vector<std::vector<int>> deltas_;
  std::vector<Element> multipliers_;
};

}  // namespace cmon
