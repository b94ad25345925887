#include "lacfit/chord_walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lacfit/errors.hpp"

namespace lacfit {

std::vector<Vec2> equal_chord_walk(const std::function<Vec2(double)>& position,
                                   double t_begin, double t_end,
                                   std::size_t n_points, double step,
                                   double chord_tol) {
  if (n_points < 2 || !(step > 0.0) || !(t_end > t_begin)) {
    throw std::invalid_argument("equal_chord_walk: bad arguments");
  }

  std::vector<Vec2> out;
  out.reserve(n_points);
  double t_cur = t_begin;
  Vec2 p_cur = position(t_begin);
  out.push_back(p_cur);

  // Parameter advance of the previous step seeds the next bracket search.
  double dt_guess = (t_end - t_begin) / (4.0 * static_cast<double>(n_points - 1));

  for (std::size_t k = 1; k < n_points; ++k) {
    // Bracket: march forward until the chord reaches `step` or the curve ends.
    double lo = t_cur;
    double hi = t_cur;
    Vec2 p_hi = p_cur;
    double dt = dt_guess;
    while (true) {
      hi = std::min(t_cur + dt, t_end);
      p_hi = position(hi);
      if (norm(p_hi - p_cur) >= step || hi >= t_end) {
        break;
      }
      lo = hi;
      dt *= 1.6;
    }
    if (norm(p_hi - p_cur) < step - chord_tol) {
      throw LengthDeficitError("curve too short for the requested equal-chord walk (placed " +
                               std::to_string(k) + " of " + std::to_string(n_points) +
                               " points)");
    }

    // Bisect; dist(lo) < step <= dist(hi) throughout.
    for (int it = 0; it < 200 && std::abs(norm(p_hi - p_cur) - step) > chord_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (norm(position(mid) - p_cur) < step) {
        lo = mid;
      } else {
        hi = mid;
        p_hi = position(mid);
      }
      if (hi - lo < 1e-17 * (t_end - t_begin)) {
        break;
      }
    }

    dt_guess = std::max(hi - t_cur, 1e-14 * (t_end - t_begin));
    t_cur = hi;
    p_cur = p_hi;
    out.push_back(p_cur);
  }
  return out;
}

}  // namespace lacfit
