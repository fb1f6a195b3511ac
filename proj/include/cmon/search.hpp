#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cmon/ideal.hpp"

namespace cmon {

// Nonzero elements of the integral ideal J with |N| <= norm_bound, sorted by
// search_less. Over a real quadratic field infinitely many elements share a
// norm, so coordinates are additionally confined to |p|, |q| <= height_bound.
std::vector<Element> lattice_points(const Ideal& J, const Integer& norm_bound,
                                    const Integer& height_bound);

// Elements of J whose w-coordinate is +-level and whose absolute norm is n.
std::vector<Element> norm_solutions_at(const Ideal& J, const Integer& n, const Integer& level);

// Rough count of lattice_points(J, norm_bound, height_bound), for throttling.
double lattice_point_estimate(const Ideal& J, const Integer& norm_bound, const Integer& height_bound);

inline constexpr double kDefaultSearchPoints = 2.0e5;

// Least element of J satisfying pred among |N| <= norm_bound. The norm bound
// doubles from N(J) so early hits stay cheap. Over a real quadratic field the
// coordinate box doubles from height 1 up to height_bound instead, and the
// answer is the search_less-least hit of the first box containing one.
// Returns nullopt on exhaustion or once a pass would exceed max_points.
std::optional<Element> least_satisfying(const Ideal& J, const Integer& norm_bound, const Integer& height_bound,
                                        const std::function<bool(const Element&)>& pred,
                                        double max_points = kDefaultSearchPoints);

}  // namespace cmon
