#pragma once

// Distribution function mu_f(t) = |{f > t}|, decreasing rearrangement
// f*(s) and the level breakpoints at which mu_f changes analytic form.
// On each datum piece f is continuous and nonincreasing, so superlevel
// sets are half-open intervals recovered by monotone root finding.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "l1tv/numerics.hpp"
#include "l1tv/radial_datum.hpp"

namespace l1tv {

namespace detail {

// sup{r in [lo,hi] : f(r) cmp t} for nonincreasing f on the piece, where
// cmp is > (strict=true) or >= (strict=false).  Returns lo when even the
// left end fails the comparison.
inline double superlevel_right_end(const RadialDatum& f, double lo, double hi,
                                   double t, bool strict) {
  const double eps = 1e-13 * (hi - lo);
  auto above = [&](double r) {
    const double v = f(r);
    return strict ? (v > t) : (v >= t);
  };
  if (!above(lo + eps)) return lo;
  if (above(hi - eps)) return hi;
  // bisect in log r: the crossing can sit many decades below hi (large t),
  // and the measure needs uniform *relative* accuracy there
  double la = std::log(lo + eps), lb = std::log(hi - eps);
  for (int i = 0; i < 200 && lb - la > 1e-15; ++i) {
    const double m = 0.5 * (la + lb);
    (above(std::exp(m)) ? la : lb) = m;
  }
  return std::exp(0.5 * (la + lb));
}

}  // namespace detail

// |{x in B_R : f(|x|) > t}|.
inline double distribution_function(const RadialDatum& f, double t) {
  if (t < 0) throw std::invalid_argument("level t must be nonnegative");
  const auto& bp = f.breakpoints();
  const double cn = f.unit_ball_volume();
  double vol = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double rt =
        detail::superlevel_right_end(f, bp[i], bp[i + 1], t, /*strict=*/true);
    if (rt > bp[i])
      vol += cn * (std::pow(rt, f.dim()) - std::pow(bp[i], f.dim()));
  }
  return vol;
}

// Left limit |{f >= t}| = lim_{s->t^-} mu_f(s); used where suprema over
// levels must see plateau endpoints.
inline double distribution_function_closed(const RadialDatum& f, double t) {
  const auto& bp = f.breakpoints();
  const double cn = f.unit_ball_volume();
  double vol = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double rt =
        detail::superlevel_right_end(f, bp[i], bp[i + 1], t, /*strict=*/false);
    if (rt > bp[i])
      vol += cn * (std::pow(rt, f.dim()) - std::pow(bp[i], f.dim()));
  }
  return vol;
}

// Candidate levels where mu_f can change analytic form: the one-sided
// values of f at piece endpoints.
inline std::vector<double> level_breakpoints(const RadialDatum& f) {
  const auto& bp = f.breakpoints();
  std::vector<double> levels;
  const double eps = 1e-12 * f.radius();
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    levels.push_back(f(bp[i] + eps));
    levels.push_back(f(bp[i + 1] - eps));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  while (!levels.empty() && levels.front() <= 0.0)
    levels.erase(levels.begin());
  return levels;
}

// f*(s) = sup{t > 0 : mu_f(t) > s},  0 < s <= |B_R|.
inline double decreasing_rearrangement(const RadialDatum& f, double s) {
  const double dom = f.domain_measure();
  if (!(s > 0.0) || s > dom * (1 + 1e-12))
    throw std::invalid_argument("s must lie in (0, |B_R|]");
  if (distribution_function(f, 0.0) <= s) return 0.0;
  // Expand an upper bracket; mu_f(t) -> 0 as t -> inf.
  double hi = 1.0;
  while (distribution_function(f, hi) > s) {
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (distribution_function(f, mid) > s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace l1tv
