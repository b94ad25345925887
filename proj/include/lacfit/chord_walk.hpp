#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lacfit/geometry.hpp"

namespace lacfit {

/// Walk a parameterized curve emitting n_points samples whose consecutive
/// chords all equal `step`, starting at position(t_begin). Each step finds
/// the first parameter past the current one where the chord reaches `step`
/// (march and bisect; distance along a smooth arc brackets the root).
/// chord_tol is the absolute tolerance on the chord length.
///
/// Throws LengthDeficitError when the curve runs out before n_points.
std::vector<Vec2> equal_chord_walk(const std::function<Vec2(double)>& position,
                                   double t_begin, double t_end,
                                   std::size_t n_points, double step,
                                   double chord_tol);

}  // namespace lacfit
