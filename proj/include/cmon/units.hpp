#pragma once

#include <optional>
#include <vector>

#include "cmon/field.hpp"

namespace cmon {

struct UnitGroup {
  int torsion_order;
  Element torsion_generator;
  // Present iff K is real quadratic: |N| = 1, > 1 under embedding 0, minimal.
  std::optional<Element> fundamental;

  std::vector<Element> torsion() const;
};

UnitGroup unit_group(const NumberField& K);

}  // namespace cmon
