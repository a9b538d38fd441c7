#pragma once

// Radial construction for the Dirichlet problem
//   -div(Du/|Du|) + g(u)|Du| = f(x)   on B_R,   u = 0 on the boundary,
// with nonnegative radially nonincreasing data f(r) = sum c_i r^{-q_i}.
//
// Ansatz: u(x) = h(|x|), z(x) = xi(|x|) x.  On the strict-decrease set of h
// the field is pinned to xi(r) r = -1; the level G(h(r)) then follows the
// envelope w(r) = Psi(r) - min_{[r,R]} Psi with Psi(r) = int_r^R (f - (N-1)/rho).
// A flat core [0, s0] (h constant) is inserted when f is too weak near the
// origin to sustain strict decrease; its extent is fixed by field
// feasibility: s0 is the largest radius with  int_0^s f rho^{N-1} <= s^{N-1}.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1tv/growth.hpp"
#include "l1tv/lorentz.hpp"
#include "l1tv/numerics.hpp"
#include "l1tv/radial_datum.hpp"

namespace l1tv {

enum class SegmentKind { StrictDecrease, Flat };

struct Segment {
  SegmentKind kind;
  double lo;
  double hi;
  double value = 0.0;    // h on Flat segments
  double field_K = 0.0;  // r^N xi(r) = field_K - int_0^r f rho^{N-1} drho
};

struct Jump {
  double radius;
  double lower;  // value for r > radius
  double upper;  // value for r < radius
};

enum class RegimeTag {
  Trivial,
  Nontrivial,
  NontrivialNonBV,
  NonexistentRadial,
  NonUnique,
  WeakBoundaryOnly
};

inline const char* to_string(RegimeTag t) {
  switch (t) {
    case RegimeTag::Trivial: return "Trivial";
    case RegimeTag::Nontrivial: return "Nontrivial";
    case RegimeTag::NontrivialNonBV: return "NontrivialNonBV";
    case RegimeTag::NonexistentRadial: return "NonexistentRadial";
    case RegimeTag::NonUnique: return "NonUnique";
    case RegimeTag::WeakBoundaryOnly: return "WeakBoundaryOnly";
  }
  return "?";
}

struct RegimeReport {
  std::set<RegimeTag> tags;
  std::map<std::string, double> witnesses;
  bool has(RegimeTag t) const { return tags.count(t) > 0; }
};

enum class ConstructErrorKind { InapplicableDatum, InfeasibleField, LevelAboveRange };

class ConstructError : public std::runtime_error {
 public:
  ConstructError(ConstructErrorKind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
  ConstructErrorKind kind;
};

// Psi(r) = int_r^R (f(rho) - (N-1)/rho) drho, closed form.
inline double potential_Psi(const RadialDatum& f, double r) {
  if (!(r > 0 && r <= f.radius()))
    throw std::invalid_argument("radius must lie in (0, R]");
  return f.integral(r, f.radius()) - (f.dim() - 1) * std::log(f.radius() / r);
}

namespace detail {

// phi(r) = r f(r) - (N-1) restricted to one maximal breakpoint interval,
// using that interval's active term set (one-sided limits at the ends).
struct PiecePhi {
  std::vector<PowerTerm> active;
  double nm1;
  double operator()(double r) const {
    double v = -nm1;
    for (const auto& t : active) v += t.coef * std::pow(r, 1.0 - t.exponent);
    return v;  // nondecreasing in r: each c r^{1-q} has q <= 1
  }
};

// Maximal open intervals where r f(r) - (N-1) > 0, merged across adjacent
// datum pieces.
inline std::vector<std::pair<double, double>> increase_intervals(
    const RadialDatum& f) {
  const auto& bp = f.breakpoints();
  std::vector<std::pair<double, double>> plus;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = bp[i], b = bp[i + 1];
    PiecePhi phi{{}, double(f.dim() - 1)};
    for (const auto& t : f.terms())
      if (t.lo <= a + 1e-15 * f.radius() && t.hi >= b - 1e-15 * f.radius())
        phi.active.push_back(t);
    const double pa = phi(a), pb = phi(b);
    if (pb <= 0 && pa <= 0) continue;  // phi nondecreasing: never positive
    double start = a;
    if (pa <= 0) {
      // first radius with phi > 0
      double lo = a, hi = b;
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi(mid) > 0 ? hi : lo) = mid;
      }
      start = hi;
    }
    if (start < b) plus.emplace_back(start, b);
  }
  // merge intervals that abut across a shared breakpoint
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : plus) {
    if (!merged.empty() && iv.first <= merged.back().second + 1e-12 * f.radius())
      merged.back().second = iv.second;
    else
      merged.push_back(iv);
  }
  return merged;
}

}  // namespace detail

// Structural analysis of the envelope w = Psi - running min.
struct EnvelopeInfo {
  bool trivial = true;
  double r1 = 0.0, r2 = 0.0;  // increase interval of the level (empty if trivial)
  double s0 = 0.0;            // flat-core boundary (0: no core)
  double M_max = 0.0;         // max_r [ int_0^r f rho^{N-1} - r^{N-1} ]
  double core_level = 0.0;    // w on the core (when s0 > 0)
  double w_origin = 0.0;      // w(0+), may be +inf
};

inline EnvelopeInfo analyze_envelope(const RadialDatum& f) {
  const int n = f.dim();
  const double R = f.radius();
  auto M = [&](double r) {
    return f.weighted_integral(0.0, r) - std::pow(r, n - 1);
  };
  EnvelopeInfo info;
  auto plus = detail::increase_intervals(f);
  if (plus.size() > 1)
    throw ConstructError(
        ConstructErrorKind::InapplicableDatum,
        "construction inapplicable: the datum drives more than one "
        "strict-decrease region");
  if (plus.empty()) {
    info.M_max = 0.0;  // M nonincreasing from M(0) = 0
    return info;
  }
  info.r1 = plus.front().first;
  info.r2 = plus.front().second;
  info.M_max = M(info.r2);
  if (info.M_max <= 0) return info;  // feasible flat field carries h == 0
  info.trivial = false;
  if (info.r1 > 0) {
    // M < 0 left of r1, increasing on (r1, r2): unique feasibility radius.
    double lo = info.r1, hi = info.r2;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (M(mid) > 0 ? hi : lo) = mid;
    }
    info.s0 = lo;
    if (info.s0 < 1e-13 * R) info.s0 = 0.0;
  }
  const auto w_at = [&](double r) {
    return f.integral(r, info.r2) - (n - 1) * std::log(info.r2 / r);
  };
  if (info.s0 > 0) {
    info.core_level = w_at(info.s0);
    info.w_origin = info.core_level;
  } else {
    // w(0+) finite iff the logarithmic strength at the origin is exactly
    // N-1 (the log terms of Psi cancel); stronger data blow up.
    info.w_origin = f.origin_log_rate() > n - 1 + 1e-13 ? kInf : w_at(1e-30);
  }
  return info;
}

// w(r) = Psi(r) - min_{s in [r,R]} Psi(s) for the supported datum class.
inline std::function<double(double)> envelope_w(const RadialDatum& f) {
  const EnvelopeInfo info = analyze_envelope(f);
  const RadialDatum datum = f;
  const int n = f.dim();
  return [info, datum, n](double r) {
    if (info.trivial || r >= info.r2) return 0.0;
    const double rr = std::max(r, info.s0);
    if (rr >= info.r2) return 0.0;
    return datum.integral(rr, info.r2) - (n - 1) * std::log(info.r2 / rr);
  };
}

class Solution {
 public:
  Solution(RadialDatum f, GrowthSpec g, Branch policy, EnvelopeInfo env)
      : f_(std::move(f)), g_(std::move(g)), policy_(policy), env_(env) {
    build();
  }

  const RadialDatum& datum() const { return f_; }
  const GrowthSpec& growth() const { return g_; }
  Branch policy() const { return policy_; }
  const EnvelopeInfo& envelope() const { return env_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  double boundary_value() const { return boundary_value_; }
  bool unbounded_at_origin() const { return unbounded_at_origin_; }

  double w(double r) const {
    if (env_.trivial || r >= env_.r2) return 0.0;
    const double rr = std::max(r, env_.s0);
    if (rr >= env_.r2) return 0.0;
    return f_.integral(rr, env_.r2) - (f_.dim() - 1) * std::log(env_.r2 / rr);
  }

  double h(double r) const {
    const double level = w(r);
    if (level == 0.0) {
      if (env_.trivial) return 0.0;
      if (r >= f_.radius()) return boundary_value_;
      return zero_level_value_;
    }
    const auto inv = g_.inverse_G(level);
    return inv.select(policy_);
  }

  double hprime(double r) const {
    if (!on_strict(r)) return 0.0;
    return wprime(r) / g_.g(h(r));
  }

  // Density (w.r.t. dr) of the variation measure of G(h): equals |w'| on the
  // strict set, zero on flats; jump atoms are reported separately.
  double variation_density(double r) const {
    return on_strict(r) ? -wprime(r) : 0.0;
  }

  double xi_times_r(double r) const {
    if (on_strict(r)) return -1.0;
    const double rr = std::max(r, 1e-30);
    for (const auto& s : segments_)
      if (s.kind == SegmentKind::Flat && rr >= s.lo - 1e-300 && rr <= s.hi)
        return (s.field_K - f_.weighted_integral(0.0, rr)) /
               std::pow(rr, f_.dim() - 1);
    // r beyond the last segment (r == R on a strict-to-boundary profile)
    return -1.0;
  }

  double wprime(double r) const {  // = (N-1)/r - f(r), valid on the strict set
    return (f_.dim() - 1) / r - f_(r);
  }

  bool on_strict(double r) const {
    return !env_.trivial && r > env_.s0 && r < env_.r2;
  }

  // min over flat segments of 1 - sup |xi(r)| r  (1 when there are none).
  double feasibility_margin() const {
    double margin = 1.0;
    for (const auto& s : segments_) {
      if (s.kind != SegmentKind::Flat) continue;
      auto neg_abs = [&](double r) { return std::abs(xi_times_r(r)); };
      double m = std::max(neg_abs(std::max(s.lo, 1e-12 * f_.radius())),
                          neg_abs(s.hi));
      auto g = golden_max(neg_abs, std::max(s.lo, 1e-12 * f_.radius()), s.hi);
      m = std::max(m, g.second);
      margin = std::min(margin, 1.0 - m);
    }
    return margin;
  }

 private:
  void build() {
    const double R = f_.radius();
    if (env_.trivial) {
      segments_.push_back({SegmentKind::Flat, 0.0, R, 0.0, 0.0});
      boundary_value_ = 0.0;
      return;
    }
    if (env_.s0 > 0)
      segments_.push_back({SegmentKind::Flat, 0.0, env_.s0, core_value(), 0.0});
    segments_.push_back({SegmentKind::StrictDecrease, env_.s0, env_.r2});
    const double zero_hi = g_.inverse_G(0.0).hi;  // upper end of {G = 0}
    zero_level_value_ = 0.0;
    if (env_.r2 < R) {
      // field continuity at r2: xi(r2) r2 = -1
      const double K = -std::pow(env_.r2, f_.dim() - 1) +
                       f_.weighted_integral(0.0, env_.r2);
      zero_level_value_ =
          policy_ == Branch::Upper && std::isfinite(zero_hi) ? zero_hi : 0.0;
      segments_.push_back(
          {SegmentKind::Flat, env_.r2, R, zero_level_value_, K});
      boundary_value_ = zero_level_value_;
    } else {
      // w > 0 up to the boundary: h(R-) = lim_{t->0+} G^{-1}(t), the upper
      // end of the zero set of g, regardless of policy.
      boundary_value_ = std::isfinite(zero_hi) ? zero_hi : 0.0;
    }
    collect_jumps(zero_hi);
    unbounded_at_origin_ =
        env_.s0 == 0.0 &&
        (env_.w_origin == kInf ||
         (std::isfinite(g_.G_infinity()) &&
          env_.w_origin >= g_.G_infinity() * (1.0 - 1e-13)));
  }

  double core_value() const {
    return g_.inverse_G(env_.core_level).select(policy_);
  }

  void collect_jumps(double zero_hi) {
    const double w_top = env_.s0 > 0 ? env_.core_level : env_.w_origin;
    for (const auto& fl : g_.flat_levels()) {
      if (fl.s_hi <= fl.s_lo || !std::isfinite(fl.s_hi)) continue;
      if (fl.level == 0.0) {
        // profile dives through the zero set of g at r2
        if (env_.r2 < f_.radius() && zero_level_value_ < fl.s_hi)
          jumps_.push_back({env_.r2, zero_level_value_, fl.s_hi});
        continue;
      }
      if (!(fl.level < w_top)) continue;
      // unique radius in (s0, r2) with w = level (w strictly decreasing)
      double lo = env_.s0, hi = env_.r2;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (w(mid) > fl.level ? lo : hi) = mid;
      }
      jumps_.push_back({0.5 * (lo + hi), fl.s_lo, fl.s_hi});
    }
    std::sort(jumps_.begin(), jumps_.end(),
              [](const Jump& a, const Jump& b) { return a.radius < b.radius; });
  }

  RadialDatum f_;
  GrowthSpec g_;
  Branch policy_;
  EnvelopeInfo env_;
  std::vector<Segment> segments_;
  std::vector<Jump> jumps_;
  double boundary_value_ = 0.0;
  double zero_level_value_ = 0.0;
  bool unbounded_at_origin_ = false;
};

struct SolveOutcome {
  std::optional<Solution> solution;
  RegimeReport report;
};

struct TotalVariation {
  double value = 0.0;
  bool divergent = false;
};

// N C_N [ int |h'| r^{N-1} dr + sum_j r_j^{N-1} (upper - lower) ], with the
// origin divergence decided from the log-log slope of the closed-form
// integrand (slope <= -1 means a non-integrable tail at r = 0).
inline TotalVariation total_variation(const Solution& sol) {
  const RadialDatum& f = sol.datum();
  const int n = f.dim();
  const double surf = n * ball_volume(n);
  TotalVariation tv;
  for (const auto& j : sol.jumps())
    tv.value += surf * std::pow(j.radius, n - 1) * (j.upper - j.lower);
  const auto& env = sol.envelope();
  if (env.trivial) return tv;
  auto integrand = [&](double r) {
    return -sol.hprime(r) * std::pow(r, n - 1);
  };
  double lo = env.s0;
  if (lo == 0.0 && sol.unbounded_at_origin()) {
    double lr0 = std::log(1e-5), sum_p = 0.0;
    int cnt = 0;
    for (int i = 0; i < 4; ++i) {
      const double a = std::exp(lr0 - i), b = std::exp(lr0 - i - 1);
      sum_p += (std::log(integrand(b)) - std::log(integrand(a))) /
               (std::log(b) - std::log(a));
      ++cnt;
    }
    const double slope = sum_p / cnt;
    if (slope <= -1.0 + 1e-3) {
      tv.value = kInf;
      tv.divergent = true;
      return tv;
    }
  }
  // split at datum breakpoints and jump radii; endpoint-singular pieces
  // (h' blows up where g(h) -> 0) go through the substitution quadrature
  std::vector<double> cuts{lo, env.r2};
  for (double b : f.breakpoints())
    if (b > lo && b < env.r2) cuts.push_back(b);
  for (const auto& j : sol.jumps())
    if (j.radius > lo && j.radius < env.r2) cuts.push_back(j.radius);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    tv.value += surf * integrate_singular(integrand, cuts[i], cuts[i + 1], 1e-11);
  return tv;
}

// ---------------------------------------------------------------------------
// Weak-form verification.

// Smooth radial test function: x -> exp(1 - 1/(1 - t^2)), t = (r-c)/rho,
// supported on (c - rho, c + rho) strictly inside (0, R).
struct BumpFunction {
  double center;
  double halfwidth;
  double operator()(double r) const {
    const double t = (r - center) / halfwidth;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
  }
  double derivative(double r) const {
    const double t = (r - center) / halfwidth;
    if (std::abs(t) >= 1.0) return 0.0;
    const double d = 1.0 - t * t;
    return (*this)(r) * (-2.0 * t / (d * d)) / halfwidth;
  }
};

inline std::vector<BumpFunction> bump_family(double R, int count = 20) {
  std::vector<BumpFunction> out;
  for (int i = 0; i < count; ++i) {
    const double c = R * (0.08 + 0.84 * (i + 0.5) / count);
    const double rho = std::min({c - 0.02 * R, R * 0.98 - c,
                                 R * (0.06 + 0.30 * ((i * 7) % count) / count)});
    out.push_back({c, std::max(rho, 0.02 * R)});
  }
  return out;
}

// A verification candidate: everything the weak form needs, independent of
// how the profile was produced (constructed, perturbed, or read from disk).
struct Candidate {
  std::function<double(double)> h;
  std::function<double(double)> xi_times_r;
  std::function<double(double)> variation_density;  // g(h)|h'| w.r.t. dr
  std::vector<Jump> jumps;
  std::vector<std::pair<double, double>> strict_intervals;
  std::vector<double> split_points;
};

inline Candidate as_candidate(const Solution& sol) {
  Candidate c;
  c.h = [sol](double r) { return sol.h(r); };
  c.xi_times_r = [sol](double r) { return sol.xi_times_r(r); };
  c.variation_density = [sol](double r) { return sol.variation_density(r); };
  c.jumps = sol.jumps();
  const auto& env = sol.envelope();
  if (!env.trivial) c.strict_intervals.push_back({env.s0, env.r2});
  c.split_points = sol.datum().breakpoints();
  if (!env.trivial) {
    c.split_points.push_back(env.s0);
    c.split_points.push_back(env.r2);
  }
  for (const auto& j : sol.jumps()) c.split_points.push_back(j.radius);
  std::sort(c.split_points.begin(), c.split_points.end());
  return c;
}

struct ResidualReport {
  double max_residual = 0.0;
  double pairing_defect = 0.0;
  std::vector<double> residuals;
};

// R(phi) = int [ xi r phi' + phi (dG(h)-variation density) - phi f ] r^{N-1} dr
//        + sum_jumps phi(r*) r*^{N-1} (G(upper) - G(lower)).
inline ResidualReport weak_residual(const Candidate& cand, const RadialDatum& f,
                                    const GrowthSpec& g,
                                    const std::vector<BumpFunction>& bumps) {
  const int n = f.dim();
  ResidualReport rep;
  for (const auto& phi : bumps) {
    auto integrand = [&](double r) {
      return (cand.xi_times_r(r) * phi.derivative(r) +
              phi(r) * cand.variation_density(r) - phi(r) * f(r)) *
             std::pow(r, n - 1);
    };
    const double a = phi.center - phi.halfwidth;
    const double b = phi.center + phi.halfwidth;
    std::vector<double> cuts{a, b};
    for (double s : cand.split_points)
      if (s > a && s < b) cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    double val = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      val += integrate(integrand, cuts[i], cuts[i + 1], 1e-10);
    for (const auto& j : cand.jumps)
      val += phi(j.radius) * std::pow(j.radius, n - 1) *
             (g.G(j.upper) - g.G(j.lower));
    rep.residuals.push_back(val);
    rep.max_residual = std::max(rep.max_residual, std::abs(val));
  }
  for (const auto& [lo, hi] : cand.strict_intervals) {
    const int samples = 257;
    for (int i = 1; i < samples; ++i) {
      const double r = lo + (hi - lo) * i / samples;
      rep.pairing_defect =
          std::max(rep.pairing_defect, std::abs(cand.xi_times_r(r) + 1.0));
    }
  }
  return rep;
}

inline ResidualReport weak_residual(const Solution& sol) {
  return weak_residual(as_candidate(sol), sol.datum(), sol.growth(),
                       bump_family(sol.datum().radius()));
}

// ---------------------------------------------------------------------------
// Boundary behavior.

enum class TraceKind { StrongTrace, WeakTrace };

struct BoundaryReport {
  TraceKind kind;
  double boundary_value;
  double normal_trace;  // [z, nu] = xi(R) R
  bool ok;
};

inline BoundaryReport boundary_check(const Solution& sol) {
  const double R = sol.datum().radius();
  const double bv = sol.boundary_value();
  const double zn = sol.xi_times_r(R);
  if (bv <= 1e-12) return {TraceKind::StrongTrace, bv, zn, true};
  const bool ok = std::abs(zn + 1.0) <= 1e-9;  // [z,nu] = -sign(u)
  return {TraceKind::WeakTrace, bv, zn, ok};
}

// ---------------------------------------------------------------------------
// Green identity  int u* dmu + int (z, Du) = int_boundary [z,nu] u  for
// bounded constructed solutions;  dmu = div z dx has density -(N-1)/r on the
// strict set and -f on flats.
struct GreenIdentity {
  double measure_term;
  double variation_term;
  double boundary_term;
  double defect;
};

inline GreenIdentity green_identity(const Solution& sol) {
  const RadialDatum& f = sol.datum();
  const int n = f.dim();
  const double surf = n * ball_volume(n);
  const auto& env = sol.envelope();
  double mu_term = 0.0;
  for (const auto& s : sol.segments()) {
    auto dens = [&](double r) {
      const double div_z = s.kind == SegmentKind::StrictDecrease
                               ? -(n - 1) / r
                               : -f(r);
      return sol.h(r) * div_z * std::pow(r, n - 1);
    };
    std::vector<double> cuts{s.lo, s.hi};
    for (double b : f.breakpoints())
      if (b > s.lo && b < s.hi) cuts.push_back(b);
    for (const auto& j : sol.jumps())
      if (j.radius > s.lo && j.radius < s.hi) cuts.push_back(j.radius);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      mu_term += surf * integrate_singular(dens, cuts[i], cuts[i + 1], 1e-11);
  }
  const double tv = total_variation(sol).value;
  const double rhs = surf * std::pow(f.radius(), n - 1) *
                     sol.xi_times_r(f.radius()) * sol.boundary_value();
  (void)env;
  return {mu_term, tv, rhs, std::abs(mu_term + tv - rhs)};
}

// ---------------------------------------------------------------------------
// Construction entry point and regime classification.

inline SolveOutcome construct_radial_solution(const RadialDatum& f,
                                              const GrowthSpec& g,
                                              Branch policy = Branch::Minimal) {
  const EnvelopeInfo env = analyze_envelope(f);  // throws on unsupported data
  SolveOutcome out;
  auto& rep = out.report;
  rep.witnesses["M_max"] = env.M_max;
  rep.witnesses["r1"] = env.r1;
  rep.witnesses["r2"] = env.r2;
  rep.witnesses["s0"] = env.s0;
  rep.witnesses["w_origin"] = env.w_origin;
  rep.witnesses["lambda_origin"] = f.origin_log_rate();
  rep.witnesses["dim_minus_one"] = f.dim() - 1;
  const double ginf = g.G_infinity();
  rep.witnesses["G_infinity"] = ginf;
  const GrowthClass gc = g.classify();
  if (gc.nonuniqueness_warning) rep.tags.insert(RegimeTag::NonUnique);
  if (env.trivial) {
    rep.tags.insert(RegimeTag::Trivial);
    Solution sol(f, g, policy, env);
    rep.witnesses["feasibility_margin"] = sol.feasibility_margin();
    rep.witnesses["boundary_value"] = 0.0;
    out.solution = std::move(sol);
    return out;
  }
  // Integrable growth cannot carry a level above sup G; a flat core cannot
  // even carry the supremum itself (it would need h = +inf on a set of
  // positive measure).  The tie w(0+) = G(inf) with no core is admissible:
  // the profile exists and blows up at the origin.
  if (std::isfinite(ginf) &&
      (env.w_origin > ginf * (1.0 + 1e-13) ||
       (env.s0 > 0 && env.w_origin >= ginf * (1.0 - 1e-13)))) {
    rep.tags.insert(RegimeTag::NonexistentRadial);
    return out;
  }
  Solution sol(f, g, policy, env);
  const double margin = sol.feasibility_margin();
  rep.witnesses["feasibility_margin"] = margin;
  if (margin < -1e-9) {
    rep.tags.insert(RegimeTag::NonexistentRadial);
    return out;
  }
  rep.tags.insert(RegimeTag::Nontrivial);
  rep.witnesses["boundary_value"] = sol.boundary_value();
  if (sol.boundary_value() > 1e-12)
    rep.tags.insert(RegimeTag::WeakBoundaryOnly);
  if (total_variation(sol).divergent)
    rep.tags.insert(RegimeTag::NontrivialNonBV);
  out.solution = std::move(sol);
  return out;
}

inline RegimeReport classify_regime(const RadialDatum& f, const GrowthSpec& g,
                                    Branch policy = Branch::Minimal) {
  SolveOutcome out = construct_radial_solution(f, g, policy);
  RegimeReport rep = std::move(out.report);
  const auto dual = dual_norm_bounds(f);
  rep.witnesses["dual_lower"] = dual.lower;
  rep.witnesses["dual_upper"] = dual.upper;
  return rep;
}

}  // namespace l1tv
