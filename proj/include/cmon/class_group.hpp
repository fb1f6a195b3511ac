#pragma once

#include <optional>
#include <vector>

#include "cmon/ideal.hpp"
#include "cmon/units.hpp"

namespace cmon {

// Least generator under search_less, or nullopt when I is not principal.
std::optional<Element> principal_generator(const Ideal& I);
bool is_principal(const Ideal& I);

// Integral ideals of norm at most bound, ordered by ideal_less.
std::vector<Ideal> integral_ideals_up_to(const NumberField& K, const Integer& bound);

Integer minkowski_bound(const NumberField& K);

class ClassGroup {
 public:
  explicit ClassGroup(const NumberField& K);

  const NumberField& field() const { return K_; }
  int order() const { return static_cast<int>(reps_.size()); }
  const std::vector<Ideal>& representatives() const { return reps_; }

  // Index of the representative equivalent to I.
  int class_index(const Ideal& I) const;
  int multiply(int i, int j) const;
  bool equivalent(const Ideal& I, const Ideal& J) const;

 private:
  NumberField K_;
  std::vector<Ideal> reps_;
};

}  // namespace cmon
