#pragma once

// Desk-scale reproduction of the approximation schemes: truncated data
// min(f, n), truncated growth min(g, k), and shifted growth g + 1/n, with
// error tables against the exact constructed solution.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "l1tv/growth.hpp"
#include "l1tv/numerics.hpp"
#include "l1tv/radial_datum.hpp"
#include "l1tv/solver.hpp"

namespace l1tv {

// Pointwise min(f, n) rebuilt as an exact term list: on each breakpoint
// piece f is nonincreasing, so the cap is active on a single left
// subinterval whose right endpoint solves f = n (closed form for a single
// power term, monotone bisection otherwise).
inline RadialDatum truncate_datum(const RadialDatum& f, double n) {
  if (!(n > 0)) throw std::invalid_argument("truncation level must be > 0");
  const auto& bp = f.breakpoints();
  std::vector<PowerTerm> out;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = bp[i], b = bp[i + 1];
    std::vector<PowerTerm> active;
    for (const auto& t : f.terms())
      if (t.lo <= a + 1e-15 * f.radius() && t.hi >= b - 1e-15 * f.radius())
        active.push_back(t);
    if (active.empty()) continue;
    auto value = [&](double r) {
      double v = 0.0;
      for (const auto& t : active) v += t.coef * std::pow(r, -t.exponent);
      return v;
    };
    auto keep_from = [&](double lo) {
      for (auto t : active) {
        t.lo = lo;
        t.hi = b;
        out.push_back(t);
      }
    };
    const double va = value(a);  // +inf at a = 0 for singular terms
    const double vb = value(b);
    if (va <= n) {
      keep_from(a);
    } else if (vb >= n) {
      out.push_back({n, 0.0, a, b});
    } else {
      double rn;
      if (active.size() == 1 && active.front().exponent > 0) {
        rn = std::pow(active.front().coef / n, 1.0 / active.front().exponent);
      } else {
        rn = bisect([&](double r) { return value(r) - n; },
                    std::max(a, 1e-300), b);
      }
      out.push_back({n, 0.0, a, rn});
      keep_from(rn);
    }
  }
  return RadialDatum(f.dim(), f.radius(), std::move(out));
}

enum class Scheme { TruncateDatum, TruncateGrowth, ShiftGrowth };
enum class ErrorMetric { L1, LinfAwayFromOrigin };

struct ApproximationSchedule {
  Scheme scheme;
  std::vector<double> parameters;  // increasing; n or k
  ErrorMetric metric = ErrorMetric::L1;
  double delta = 0.0;  // exclusion radius for LinfAwayFromOrigin; 0 -> R/100
};

struct ConvergenceRow {
  double parameter = 0.0;
  double error = 0.0;
  double variation = 0.0;  // total variation of the approximate solution
  double bv_bound = 0.0;   // n-independent bound it must respect
  bool bv_ok = false;
  bool ok = false;
  std::string note;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double empirical_rate = 0.0;  // log-log slope across the last two rows
};

namespace detail {

// Uniform BV bound by splitting the profile at a level sigma above the zero
// set of the unmodified growth: below sigma each superlevel set is a
// centered ball, so its variation is at most sigma * Per(B_R); above sigma
// the equation itself gives m * TV <= total mass with m = inf g on the tail.
inline double bv_uniform_bound(const RadialDatum& f, const GrowthSpec& g_base,
                               const GrowthSpec& g_used) {
  const double mass = f.total_mass();
  const double per =
      f.dim() * ball_volume(f.dim()) * std::pow(f.radius(), f.dim() - 1);
  double sigma = 0.0;
  for (const auto& [lo, hi] : g_base.zero_intervals())
    if (std::isfinite(hi)) sigma = std::max(sigma, hi + 1.0);
  double m = kInf;
  for (int i = 0; i <= 256; ++i)
    m = std::min(m, g_used.g(sigma + std::expm1(i * std::log(1e4) / 256)));
  if (!(m > 0)) return kInf;
  return sigma * per + mass / m;
}

inline double l1_distance(const Solution& a, const Solution& b) {
  const RadialDatum& f = a.datum();
  const int n = f.dim();
  auto diff = [&](double r) {
    return std::abs(a.h(r) - b.h(r)) * std::pow(r, n - 1);
  };
  std::vector<double> cuts{0.0, f.radius()};
  auto add = [&](double x) {
    if (x > 0 && x < f.radius()) cuts.push_back(x);
  };
  for (const Solution* s : {&a, &b}) {
    for (double x : s->datum().breakpoints()) add(x);
    add(s->envelope().s0);
    add(s->envelope().r2);
    for (const auto& j : s->jumps()) add(j.radius);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_singular(diff, cuts[i], cuts[i + 1], 1e-11);
  return n * ball_volume(n) * total;
}

inline double linf_distance(const Solution& a, const Solution& b, double delta) {
  const double R = a.datum().radius();
  const double lo = delta > 0 ? delta : R / 100.0;
  double worst = 0.0;
  const int samples = 8192;
  for (int i = 0; i <= samples; ++i) {
    const double r = lo + (R - lo) * i / samples;
    worst = std::max(worst, std::abs(a.h(r) - b.h(r)));
  }
  return worst;
}

}  // namespace detail

inline ConvergenceTable run_convergence_study(const RadialDatum& f,
                                              const GrowthSpec& g,
                                              const ApproximationSchedule& sched,
                                              Branch policy = Branch::Minimal) {
  SolveOutcome exact = construct_radial_solution(f, g, policy);
  if (!exact.solution)
    throw std::invalid_argument(
        "convergence study needs a constructible reference problem");
  ConvergenceTable table;
  for (double p : sched.parameters) {
    ConvergenceRow row;
    row.parameter = p;
    try {
      RadialDatum fn = f;
      GrowthSpec gn = g;
      switch (sched.scheme) {
        case Scheme::TruncateDatum: fn = truncate_datum(f, p); break;
        case Scheme::TruncateGrowth: gn = g.truncated(p); break;
        case Scheme::ShiftGrowth: gn = g.shifted(1.0 / p); break;
      }
      SolveOutcome approx = construct_radial_solution(fn, gn, policy);
      if (!approx.solution) {
        row.note = "no solution at this parameter";
        table.rows.push_back(row);
        continue;
      }
      row.error = sched.metric == ErrorMetric::L1
                      ? detail::l1_distance(*approx.solution, *exact.solution)
                      : detail::linf_distance(*approx.solution,
                                              *exact.solution, sched.delta);
      row.variation = total_variation(*approx.solution).value;
      row.bv_bound = detail::bv_uniform_bound(f, g, gn);
      row.bv_ok = row.variation <= row.bv_bound * (1.0 + 1e-9);
      row.ok = true;
    } catch (const std::exception& e) {
      row.note = e.what();
    }
    table.rows.push_back(row);
  }
  // empirical decay rate from the last two successful rows
  const ConvergenceRow* prev = nullptr;
  for (const auto& r : table.rows) {
    if (!r.ok || r.error <= 0) continue;
    if (prev && r.parameter > prev->parameter)
      table.empirical_rate = (std::log(r.error) - std::log(prev->error)) /
                             (std::log(r.parameter) - std::log(prev->parameter));
    prev = &r;
  }
  return table;
}

}  // namespace l1tv
