#pragma once

// Growth functions g >= 0 on [0,inf), their primitive G(s) = int_0^s g,
// the (possibly multivalued) inverse of G, regime classification, and the
// exact shift / truncation transforms used by the approximation studies.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "l1tv/numerics.hpp"

namespace l1tv {

enum class GrowthFamily {
  Constant,        // g = m
  AffinePlus,      // g = base + slope s
  Rational1,       // g = 1/(1+s)
  Rational2,       // g = 1/(1+s^2)
  HingePlus,       // g = (s-a)_+
  Trapezoid,       // g = a-s on [0,a], 0 on [a,b], s-b after
  PiecewiseLinear  // knots + tail slope
};

enum class Branch { Minimal, Upper };

enum class GrowthTag {
  StandardBounded,
  StandardUnbounded,
  TouchesAxisNonIntegrable,
  VanishesAtInfinityNonIntegrable,
  Integrable,
  VanishesNearZero,
  VanishesOnInterval
};

struct GrowthClass {
  GrowthTag tag;
  double inf_g = 0.0;          // inf over [0,inf)
  double G_infinity = kInf;
  bool integrable = false;     // G_infinity < inf
  double interval_lo = 0.0;    // zero interval witness when applicable
  double interval_hi = 0.0;
  bool nonuniqueness_warning = false;  // g == 0 on a neighborhood of 0
};

inline const char* to_string(GrowthTag t) {
  switch (t) {
    case GrowthTag::StandardBounded: return "StandardBounded";
    case GrowthTag::StandardUnbounded: return "StandardUnbounded";
    case GrowthTag::TouchesAxisNonIntegrable: return "TouchesAxisNonIntegrable";
    case GrowthTag::VanishesAtInfinityNonIntegrable:
      return "VanishesAtInfinityNonIntegrable";
    case GrowthTag::Integrable: return "Integrable";
    case GrowthTag::VanishesNearZero: return "VanishesNearZero";
    case GrowthTag::VanishesOnInterval: return "VanishesOnInterval";
  }
  return "?";
}

// Preimage of a level under G: a point (lo == hi) or a flat interval;
// hi may be +inf when G is eventually constant.
struct InverseResult {
  double lo = 0.0;
  double hi = 0.0;
  bool is_interval(double tol = 1e-12) const { return hi - lo > tol; }
  double select(Branch b) const { return b == Branch::Minimal ? lo : hi; }
};

struct PwlKnot {
  double s;
  double v;
};

class GrowthSpec {
 public:
  static GrowthSpec constant(double m) {
    return GrowthSpec(GrowthFamily::Constant, m, 0.0);
  }
  static GrowthSpec affine_plus(double base, double slope) {
    if (base < 0 || slope < 0)
      throw std::invalid_argument("affine growth needs base, slope >= 0");
    return GrowthSpec(GrowthFamily::AffinePlus, base, slope);
  }
  static GrowthSpec rational1(double shift = 0.0) {
    GrowthSpec g(GrowthFamily::Rational1, 0.0, 0.0);
    g.shift_ = shift;
    return g;
  }
  static GrowthSpec rational2(double shift = 0.0) {
    GrowthSpec g(GrowthFamily::Rational2, 0.0, 0.0);
    g.shift_ = shift;
    return g;
  }
  static GrowthSpec hinge_plus(double a) {
    if (a < 0) throw std::invalid_argument("hinge offset must be >= 0");
    return GrowthSpec(GrowthFamily::HingePlus, a, 0.0);
  }
  static GrowthSpec trapezoid(double a, double b) {
    if (!(0 < a && a <= b))
      throw std::invalid_argument("trapezoid needs 0 < a <= b");
    return GrowthSpec(GrowthFamily::Trapezoid, a, b);
  }
  // Beyond the last knot: g = v_last + tail_slope * (s - s_last).
  static GrowthSpec piecewise_linear(std::vector<PwlKnot> knots,
                                     double tail_slope = 0.0) {
    GrowthSpec g(GrowthFamily::PiecewiseLinear, 0.0, 0.0);
    if (knots.empty() || knots.front().s != 0.0)
      throw std::invalid_argument("knots must start at s = 0");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      if (knots[i].v < 0)
        throw std::invalid_argument("growth values must be >= 0");
      if (i && knots[i].s <= knots[i - 1].s)
        throw std::invalid_argument("knot abscissae must increase");
    }
    if (tail_slope < 0)
      throw std::invalid_argument("tail slope must be >= 0");
    g.knots_ = std::move(knots);
    g.tail_slope_ = tail_slope;
    g.build_pwl_cache();
    return g;
  }

  GrowthFamily family() const { return family_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  double shift() const { return shift_; }
  const std::vector<PwlKnot>& knots() const { return knots_; }
  double tail_slope() const { return tail_slope_; }

  double g(double s) const {
    if (s < 0) throw std::invalid_argument("growth argument must be >= 0");
    switch (family_) {
      case GrowthFamily::Constant: return a_;
      case GrowthFamily::AffinePlus: return a_ + b_ * s;
      case GrowthFamily::Rational1: return 1.0 / (1.0 + s) + shift_;
      case GrowthFamily::Rational2: return 1.0 / (1.0 + s * s) + shift_;
      case GrowthFamily::HingePlus: return std::max(0.0, s - a_);
      case GrowthFamily::Trapezoid:
        if (s <= a_) return a_ - s;
        if (s <= b_) return 0.0;
        return s - b_;
      case GrowthFamily::PiecewiseLinear: return pwl_value(s);
    }
    return 0.0;
  }

  double G(double s) const {
    if (s < 0) throw std::invalid_argument("growth argument must be >= 0");
    switch (family_) {
      case GrowthFamily::Constant: return a_ * s;
      case GrowthFamily::AffinePlus: return a_ * s + 0.5 * b_ * s * s;
      case GrowthFamily::Rational1: return std::log1p(s) + shift_ * s;
      case GrowthFamily::Rational2: return std::atan(s) + shift_ * s;
      case GrowthFamily::HingePlus: {
        const double x = std::max(0.0, s - a_);
        return 0.5 * x * x;
      }
      case GrowthFamily::Trapezoid:
        if (s <= a_) return a_ * s - 0.5 * s * s;
        if (s <= b_) return 0.5 * a_ * a_;
        return 0.5 * a_ * a_ + 0.5 * (s - b_) * (s - b_);
      case GrowthFamily::PiecewiseLinear: return pwl_primitive(s);
    }
    return 0.0;
  }

  double G_infinity() const {
    switch (family_) {
      case GrowthFamily::Constant: return a_ > 0 ? kInf : 0.0;
      case GrowthFamily::AffinePlus: return (a_ > 0 || b_ > 0) ? kInf : 0.0;
      case GrowthFamily::Rational1: return kInf;
      case GrowthFamily::Rational2: return shift_ > 0 ? kInf : 0.5 * M_PI;
      case GrowthFamily::HingePlus: return kInf;
      case GrowthFamily::Trapezoid: return kInf;
      case GrowthFamily::PiecewiseLinear: {
        const auto& last = knots_.back();
        if (tail_slope_ > 0 || last.v > 0) return kInf;
        return pwl_G_.back();
      }
    }
    return kInf;
  }

  // Finite G_infinity attained at a finite argument (G eventually flat),
  // as opposed to a strictly increasing asymptote like arctan.
  bool attains_G_infinity() const {
    if (family_ == GrowthFamily::PiecewiseLinear)
      return !(tail_slope_ > 0 || knots_.back().v > 0);
    if (family_ == GrowthFamily::Constant) return a_ == 0;
    if (family_ == GrowthFamily::AffinePlus) return a_ == 0 && b_ == 0;
    return false;
  }

  // Maximal intervals (lo, hi) with g == 0 on [lo, hi]; hi may be +inf.
  std::vector<std::pair<double, double>> zero_intervals() const {
    std::vector<std::pair<double, double>> out;
    switch (family_) {
      case GrowthFamily::Constant:
        if (a_ == 0) out.emplace_back(0.0, kInf);
        break;
      case GrowthFamily::AffinePlus:
        if (a_ == 0 && b_ == 0) out.emplace_back(0.0, kInf);
        break;
      case GrowthFamily::Rational1:
      case GrowthFamily::Rational2:
        break;
      case GrowthFamily::HingePlus:
        if (a_ > 0) out.emplace_back(0.0, a_);
        break;
      case GrowthFamily::Trapezoid:
        if (b_ > a_) out.emplace_back(a_, b_);
        break;
      case GrowthFamily::PiecewiseLinear: {
        std::size_t i = 0;
        const std::size_t n = knots_.size();
        while (i < n) {
          if (knots_[i].v != 0.0) {
            ++i;
            continue;
          }
          std::size_t j = i;
          while (j + 1 < n && knots_[j + 1].v == 0.0) ++j;
          double hi = knots_[j].s;
          if (j + 1 == n && tail_slope_ == 0.0) hi = kInf;
          if (hi > knots_[i].s) out.emplace_back(knots_[i].s, hi);
          i = j + 1;
        }
        break;
      }
    }
    return out;
  }

  // Flat levels of G: (level, s_lo, s_hi) per zero interval of g.
  struct FlatLevel {
    double level;
    double s_lo;
    double s_hi;
  };
  std::vector<FlatLevel> flat_levels() const {
    std::vector<FlatLevel> out;
    for (const auto& [lo, hi] : zero_intervals())
      out.push_back({G(lo), lo, hi});
    return out;
  }

  InverseResult inverse_G(double t) const {
    if (t < 0) throw std::invalid_argument("level must be >= 0");
    const double ginf = G_infinity();
    if (t > ginf || (t == ginf && std::isfinite(ginf) && !attains_G_infinity()))
      throw std::domain_error("level above range of G");
    switch (family_) {
      case GrowthFamily::Constant:
        if (a_ == 0) return {0.0, kInf};  // G == 0, t == 0 here
        return point(t / a_);
      case GrowthFamily::AffinePlus: {
        if (a_ == 0 && b_ == 0) return {0.0, kInf};
        if (b_ == 0) return point(t / a_);
        return point((std::sqrt(a_ * a_ + 2.0 * b_ * t) - a_) / b_);
      }
      case GrowthFamily::Rational1:
        if (shift_ == 0) return point(std::expm1(t));
        return point(invert_increasing(t));
      case GrowthFamily::Rational2:
        if (shift_ == 0) return point(std::tan(t));
        return point(invert_increasing(t));
      case GrowthFamily::HingePlus:
        if (t == 0) return {0.0, a_};
        return point(a_ + std::sqrt(2.0 * t));
      case GrowthFamily::Trapezoid: {
        const double top = 0.5 * a_ * a_;
        if (t < top) return point(a_ - std::sqrt(a_ * a_ - 2.0 * t));
        if (t == top) return {a_, b_};
        return point(b_ + std::sqrt(2.0 * (t - top)));
      }
      case GrowthFamily::PiecewiseLinear: return pwl_inverse(t);
    }
    return {0.0, 0.0};
  }

  GrowthClass classify() const {
    GrowthClass out{GrowthTag::StandardBounded};
    out.G_infinity = G_infinity();
    out.integrable = std::isfinite(out.G_infinity);
    const auto zeros = zero_intervals();
    out.inf_g = infimum_g();
    if (!zeros.empty() && zeros.front().first == 0.0) {
      out.tag = GrowthTag::VanishesNearZero;
      out.interval_lo = 0.0;
      out.interval_hi = zeros.front().second;
      out.nonuniqueness_warning = true;
      return out;
    }
    if (!zeros.empty()) {
      out.tag = GrowthTag::VanishesOnInterval;
      out.interval_lo = zeros.front().first;
      out.interval_hi = zeros.front().second;
      return out;
    }
    if (out.integrable) {
      out.tag = GrowthTag::Integrable;
      return out;
    }
    if (tail_limit_g() == 0.0) {
      out.tag = GrowthTag::VanishesAtInfinityNonIntegrable;
      return out;
    }
    if (out.inf_g == 0.0) {
      out.tag = GrowthTag::TouchesAxisNonIntegrable;
      return out;
    }
    out.tag = std::isfinite(supremum_g()) ? GrowthTag::StandardBounded
                                          : GrowthTag::StandardUnbounded;
    return out;
  }

  double infimum_g() const {
    switch (family_) {
      case GrowthFamily::Constant: return a_;
      case GrowthFamily::AffinePlus: return a_;
      case GrowthFamily::Rational1: return shift_;  // limit at infinity
      case GrowthFamily::Rational2: return shift_;
      case GrowthFamily::HingePlus: return 0.0;
      case GrowthFamily::Trapezoid: return 0.0;
      case GrowthFamily::PiecewiseLinear: {
        double m = knots_.back().v;  // tail slope >= 0, so the tail min
        for (const auto& k : knots_) m = std::min(m, k.v);
        return m;
      }
    }
    return 0.0;
  }

  double supremum_g() const {
    switch (family_) {
      case GrowthFamily::Constant: return a_;
      case GrowthFamily::AffinePlus: return b_ > 0 ? kInf : a_;
      case GrowthFamily::Rational1: return 1.0 + shift_;
      case GrowthFamily::Rational2: return 1.0 + shift_;
      case GrowthFamily::HingePlus: return kInf;
      case GrowthFamily::Trapezoid: return kInf;
      case GrowthFamily::PiecewiseLinear: {
        if (tail_slope_ > 0) return kInf;
        double m = 0;
        for (const auto& k : knots_) m = std::max(m, k.v);
        return m;
      }
    }
    return kInf;
  }

  // Pointwise g + eps, exact within the family system.
  GrowthSpec shifted(double eps) const {
    if (eps < 0) throw std::invalid_argument("shift must be >= 0");
    if (eps == 0) return *this;
    switch (family_) {
      case GrowthFamily::Constant: return constant(a_ + eps);
      case GrowthFamily::AffinePlus: return affine_plus(a_ + eps, b_);
      case GrowthFamily::Rational1: return rational1(shift_ + eps);
      case GrowthFamily::Rational2: return rational2(shift_ + eps);
      case GrowthFamily::HingePlus:
        if (a_ > 0) return piecewise_linear({{0.0, eps}, {a_, eps}}, 1.0);
        return piecewise_linear({{0.0, eps}}, 1.0);
      case GrowthFamily::Trapezoid:
        return piecewise_linear({{0.0, a_ + eps}, {a_, eps}, {b_, eps}}, 1.0);
      case GrowthFamily::PiecewiseLinear: {
        std::vector<PwlKnot> k = knots_;
        for (auto& kn : k) kn.v += eps;
        return piecewise_linear(std::move(k), tail_slope_);
      }
    }
    throw std::logic_error("unreachable");
  }

  // Pointwise min(g, k), exact within the family system; throws for the
  // rational families when the cap actually bites (not representable).
  GrowthSpec truncated(double k) const {
    if (!(k > 0)) throw std::invalid_argument("truncation level must be > 0");
    if (k >= supremum_g()) return *this;
    switch (family_) {
      case GrowthFamily::Constant: return constant(std::min(a_, k));
      case GrowthFamily::AffinePlus: {
        if (k <= a_) return constant(k);
        const double sc = (k - a_) / b_;
        return piecewise_linear({{0.0, a_}, {sc, k}}, 0.0);
      }
      case GrowthFamily::Rational1:
      case GrowthFamily::Rational2:
        throw std::invalid_argument(
            "truncation below the supremum is not representable for this "
            "growth family");
      case GrowthFamily::HingePlus:
        return piecewise_linear({{0.0, 0.0}, {a_, 0.0}, {a_ + k, k}}, 0.0);
      case GrowthFamily::Trapezoid: {
        std::vector<PwlKnot> kn;
        if (k < a_) {
          kn = {{0.0, k}, {a_ - k, k}, {a_, 0.0}, {b_, 0.0}, {b_ + k, k}};
        } else {
          kn = {{0.0, a_}, {a_, 0.0}, {b_, 0.0}, {b_ + k, k}};
        }
        return piecewise_linear(std::move(kn), 0.0);
      }
      case GrowthFamily::PiecewiseLinear: {
        std::vector<PwlKnot> out;
        auto push = [&](double s, double v) {
          if (!out.empty() && out.back().s == s) return;
          out.push_back({s, std::min(v, k)});
        };
        for (std::size_t i = 0; i < knots_.size(); ++i) {
          push(knots_[i].s, knots_[i].v);
          if (i + 1 < knots_.size()) {
            // insert crossings of the cap inside the segment
            const double s0 = knots_[i].s, s1 = knots_[i + 1].s;
            const double v0 = knots_[i].v, v1 = knots_[i + 1].v;
            if ((v0 - k) * (v1 - k) < 0) {
              const double sc = s0 + (k - v0) / (v1 - v0) * (s1 - s0);
              push(sc, k);
            }
          }
        }
        double ts = std::min(tail_slope_, 0.0);
        if (tail_slope_ > 0 && knots_.back().v < k) {
          const double sc =
              knots_.back().s + (k - knots_.back().v) / tail_slope_;
          push(sc, k);
          ts = 0.0;
        } else if (tail_slope_ > 0) {
          ts = 0.0;  // already at/above the cap: flat tail at k
        }
        return piecewise_linear(std::move(out), std::max(ts, 0.0));
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  GrowthSpec(GrowthFamily fam, double a, double b) : family_(fam), a_(a), b_(b) {
    if (fam == GrowthFamily::Constant && a < 0)
      throw std::invalid_argument("constant growth must be >= 0");
  }

  InverseResult point(double s) const { return {s, s}; }

  double pwl_value(double s) const {
    const auto& k = knots_;
    if (s >= k.back().s)
      return k.back().v + tail_slope_ * (s - k.back().s);
    auto it = std::upper_bound(
        k.begin(), k.end(), s,
        [](double x, const PwlKnot& kn) { return x < kn.s; });
    const std::size_t i = std::size_t(it - k.begin()) - 1;
    const double w = (s - k[i].s) / (k[i + 1].s - k[i].s);
    return k[i].v + w * (k[i + 1].v - k[i].v);
  }

  double pwl_primitive(double s) const {
    const auto& k = knots_;
    if (s >= k.back().s) {
      const double x = s - k.back().s;
      return pwl_G_.back() + k.back().v * x + 0.5 * tail_slope_ * x * x;
    }
    auto it = std::upper_bound(
        k.begin(), k.end(), s,
        [](double x, const PwlKnot& kn) { return x < kn.s; });
    const std::size_t i = std::size_t(it - k.begin()) - 1;
    const double x = s - k[i].s;
    const double slope = (k[i + 1].v - k[i].v) / (k[i + 1].s - k[i].s);
    return pwl_G_[i] + k[i].v * x + 0.5 * slope * x * x;
  }

  InverseResult pwl_inverse(double t) const {
    const auto& k = knots_;
    // lo: first s with G(s) >= t; hi: last s with G(s) <= t.
    auto solve_on = [&](std::size_t i, double t_) {
      const double ds = k[i + 1].s - k[i].s;
      const double slope = (k[i + 1].v - k[i].v) / ds;
      const double tau = t_ - pwl_G_[i];
      double x;
      if (std::abs(slope) < 1e-300) {
        x = tau / k[i].v;
      } else {
        x = (std::sqrt(std::max(0.0, k[i].v * k[i].v + 2.0 * slope * tau)) -
             k[i].v) /
            slope;
      }
      return k[i].s + std::clamp(x, 0.0, ds);
    };
    double lo = 0.0, hi = 0.0;
    bool lo_set = false;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (!lo_set && pwl_G_[i + 1] >= t) {
        lo = pwl_G_[i] >= t ? k[i].s : solve_on(i, t);
        lo_set = true;
      }
      if (pwl_G_[i + 1] <= t) hi = k[i + 1].s;
    }
    if (!lo_set || t > pwl_G_.back()) {
      // tail segment: k.back().v > 0 or tail_slope_ > 0 (range checked already)
      const double x = t - pwl_G_.back();
      const double v = k.back().v;
      double s;
      if (tail_slope_ > 0)
        s = k.back().s +
            (std::sqrt(v * v + 2.0 * tail_slope_ * x) - v) / tail_slope_;
      else
        s = k.back().s + x / v;
      return point(s);
    }
    if (pwl_G_.back() == t && k.back().v == 0.0 && tail_slope_ == 0.0)
      hi = kInf;
    // Extend hi through any flat run at exactly level t.
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
      if (pwl_G_[i] == t && pwl_G_[i + 1] == t) hi = std::max(hi, k[i + 1].s);
    hi = std::max(hi, lo);
    return {lo, hi};
  }

  double tail_limit_g() const {
    switch (family_) {
      case GrowthFamily::Constant: return a_;
      case GrowthFamily::AffinePlus: return b_ > 0 ? kInf : a_;
      case GrowthFamily::Rational1: return shift_;
      case GrowthFamily::Rational2: return shift_;
      case GrowthFamily::HingePlus: return kInf;
      case GrowthFamily::Trapezoid: return kInf;
      case GrowthFamily::PiecewiseLinear:
        return tail_slope_ > 0 ? kInf : knots_.back().v;
    }
    return kInf;
  }

  // Smallest s with G(s) == t for strictly increasing G (shifted rationals).
  double invert_increasing(double t) const {
    if (t == 0) return 0.0;
    double hi = 1.0;
    while (G(hi) < t) hi *= 2.0;
    return bisect([&](double s) { return G(s) - t; }, 0.0, hi, 1e-15);
  }

  void build_pwl_cache() {
    pwl_G_.assign(knots_.size(), 0.0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      const double ds = knots_[i].s - knots_[i - 1].s;
      pwl_G_[i] = pwl_G_[i - 1] + 0.5 * (knots_[i].v + knots_[i - 1].v) * ds;
    }
  }

  GrowthFamily family_;
  double a_ = 0.0;
  double b_ = 0.0;
  double shift_ = 0.0;
  std::vector<PwlKnot> knots_;
  double tail_slope_ = 0.0;
  std::vector<double> pwl_G_;
};

}  // namespace l1tv
