#pragma once

// Radial data f(r) = sum_i c_i r^{-q_i} 1_{[a_i,b_i)}(r) on a ball B_R in
// R^N.  With c_i >= 0 and q_i in [0,1] every such datum lies in the weak
// Lebesgue space L^{N,inf}(B_R).  All moment integrals have closed forms.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1tv/numerics.hpp"

namespace l1tv {

// Lebesgue measure of the unit ball in R^N.
inline double ball_volume(int dim) {
  return std::pow(M_PI, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

struct PowerTerm {
  double coef;      // c >= 0
  double exponent;  // q in [0,1]; the term is c * r^{-q}
  double lo;        // support [lo, hi)
  double hi;
};

class RadialDatum {
 public:
  RadialDatum(int dim, double radius, std::vector<PowerTerm> terms)
      : dim_(dim), radius_(radius), terms_(std::move(terms)) {
    if (dim_ < 2) throw std::invalid_argument("dimension must be >= 2");
    if (!(radius_ > 0)) throw std::invalid_argument("radius must be positive");
    for (const auto& t : terms_) {
      if (t.coef < 0)
        throw std::invalid_argument("coefficient must be nonnegative");
      if (t.exponent < 0 || t.exponent > 1)
        throw std::invalid_argument("exponent must lie in [0,1]");
      if (!(t.lo >= 0 && t.lo < t.hi && t.hi <= radius_ * (1 + 1e-12)))
        throw std::invalid_argument("term support must satisfy 0 <= a < b <= R");
    }
    rebuild_pieces();
  }

  int dim() const { return dim_; }
  double radius() const { return radius_; }
  const std::vector<PowerTerm>& terms() const { return terms_; }
  double unit_ball_volume() const { return ball_volume(dim_); }
  double domain_measure() const {
    return ball_volume(dim_) * std::pow(radius_, dim_);
  }

  double operator()(double r) const {
    double v = 0.0;
    for (const auto& t : terms_)
      if (r >= t.lo && r < t.hi) v += t.coef * std::pow(r, -t.exponent);
    return v;
  }

  // Maximal intervals on which the active term set is constant.  On each
  // piece f is continuous and nonincreasing.
  const std::vector<double>& breakpoints() const { return breaks_; }

  // ---- closed-form moment integrals ---------------------------------

  // int_lo^hi f(r) dr  (the 1d integral used by the potential Psi).
  double integral(double lo, double hi) const {
    return moment_integral(lo, hi, 0.0);
  }

  // int_lo^hi f(r) r^{N-1} dr  (mass integrals for fields; the full-space
  // integral of f over a shell is N*C_N times this).
  double weighted_integral(double lo, double hi) const {
    return moment_integral(lo, hi, double(dim_ - 1));
  }

  // int_{lo<|x|<hi} f dx.
  double shell_mass(double lo, double hi) const {
    return dim_ * ball_volume(dim_) * weighted_integral(lo, hi);
  }

  double total_mass() const { return shell_mass(0.0, radius_); }

  // True when some term with support touching r=0 has a genuine
  // singularity there; `singular_exponent` is the strongest such q.
  bool singular_at_origin() const { return singular_q_ > 0; }
  double singular_exponent() const { return singular_q_; }
  // Sum of coefficients of the q = 1 terms active at the origin; the 1d
  // integral of f diverges at 0 exactly when this is positive, with this
  // logarithmic rate.
  double origin_log_rate() const { return origin_log_rate_; }

 private:
  void rebuild_pieces() {
    breaks_ = {0.0, radius_};
    for (const auto& t : terms_) {
      breaks_.push_back(t.lo);
      if (t.hi < radius_) breaks_.push_back(t.hi);
    }
    std::sort(breaks_.begin(), breaks_.end());
    breaks_.erase(std::unique(breaks_.begin(), breaks_.end(),
                              [](double a, double b) {
                                return std::abs(a - b) < 1e-15;
                              }),
                  breaks_.end());
    singular_q_ = 0.0;
    origin_log_rate_ = 0.0;
    for (const auto& t : terms_) {
      if (t.lo == 0.0 && t.coef > 0) {
        singular_q_ = std::max(singular_q_, t.exponent);
        if (t.exponent == 1.0) origin_log_rate_ += t.coef;
      }
    }
  }

  // int_lo^hi f(r) r^p dr with p >= 0; antiderivative of c r^{p-q} is a
  // power or a log depending on the exponent.
  double moment_integral(double lo, double hi, double p) const {
    if (!(hi > lo)) return 0.0;
    double total = 0.0;
    for (const auto& t : terms_) {
      const double a = std::max(lo, t.lo);
      const double b = std::min(hi, t.hi);
      if (b <= a || t.coef == 0.0) continue;
      const double e = p - t.exponent + 1.0;
      if (std::abs(e) < 1e-14) {
        total += t.coef * std::log(b / a);  // only reachable with a > 0
      } else {
        total += t.coef * (std::pow(b, e) - std::pow(a, e)) / e;
      }
    }
    return total;
  }

  int dim_;
  double radius_;
  std::vector<PowerTerm> terms_;
  std::vector<double> breaks_;
  double singular_q_ = 0.0;
  double origin_log_rate_ = 0.0;
};

}  // namespace l1tv
