#pragma once

// Small numerical toolbox: adaptive Gauss-Kronrod quadrature, tanh-sinh
// quadrature for endpoint singularities, bracketed root finding and
// golden-section maximization.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace l1tv {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
inline constexpr double gk_nodes[8] = {
    0.000000000000000000000000000000000e+00,
    2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01,
    5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01,
    8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01,
    9.914553711208126392068546975263285e-01};
inline constexpr double gk_wk[8] = {
    2.094821410847278280129991748917143e-01,
    2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01,
    1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01,
    1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02,
    2.293532201052922496373200805896959e-02};
inline constexpr double gk_wg[4] = {
    4.179591836734693877551020408163265e-01,
    3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01,
    1.294849661688696932706114326790820e-01};

struct GKResult {
  double value;
  double error;
};

template <class F>
GKResult gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(c);
  double resk = gk_wk[0] * f0;
  double resg = gk_wg[0] * f0;
  for (int j = 1; j < 8; ++j) {
    const double x = h * gk_nodes[j];
    const double fsum = f(c - x) + f(c + x);
    resk += gk_wk[j] * fsum;
    if (j % 2 == 0) resg += gk_wg[j / 2] * fsum;
  }
  const double value = resk * h;
  const double d = std::abs(resk - resg);
  const double err = std::abs(h) * std::min(d, std::pow(200.0 * d, 1.5));
  return {value, err};
}

template <class F>
void adaptive_rec(const F& f, double a, double b, double tol, int depth,
                  double& acc) {
  const auto r = gk15(f, a, b);
  if (depth <= 0 || r.error <= tol || (b - a) < 1e-15 * (std::abs(a) + 1.0)) {
    acc += r.value;
    return;
  }
  const double m = 0.5 * (a + b);
  adaptive_rec(f, a, m, 0.5 * tol, depth - 1, acc);
  adaptive_rec(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. `tol` is an absolute target;
// the estimate is typically far more accurate for smooth integrands.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  double acc = 0.0;
  detail::adaptive_rec(f, a, b, tol, 48, acc);
  return acc;
}

// Tanh-sinh quadrature on (a,b); tolerates integrable algebraic or
// logarithmic singularities at either endpoint.
template <class F>
double integrate_singular(const F& f, double a, double b, double tol = 1e-12) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double tmax = 6.5;  // exp(-pi/2*sinh(6.5)) underflows long before this
  double prev = 0.0;
  double result = 0.0;
  for (int level = 2; level <= 12; ++level) {
    const std::size_t n = std::size_t(1) << level;
    const double h = tmax / double(n);
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double t = h * double(i);
      const double u = 0.5 * M_PI * std::sinh(t);
      const double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(u), 2);
      if (w < 1e-320) break;
      const double x = std::tanh(u);
      const double xp = mid + half * x;
      const double xm = mid - half * x;
      double term = 0.0;
      if (i == 0) {
        term = w * f(mid);
      } else {
        if (xp < b) term += w * f(xp);
        if (xm > a) term += w * f(xm);
      }
      if (std::isfinite(term)) sum += term;
    }
    result = sum * h * half;
    if (level >= 5 && std::abs(result - prev) <= tol * (1.0 + std::abs(result)))
      return result;
    prev = result;
  }
  return result;
}

// Root of a monotone (or at least sign-changing) function on [lo, hi].
// Requires f(lo) and f(hi) of opposite (weak) sign.
template <class F>
double bisect(const F& f, double lo, double hi, double xtol = 1e-15) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect: no sign change in bracket");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= xtol * (1.0 + std::abs(mid))) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section maximization on [a,b]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(const F& f, double a, double b,
                                     double xtol = 1e-12) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol * (1.0 + std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (f1 >= f2 && f1 >= fm) return {x1, f1};
  if (f2 >= f1 && f2 >= fm) return {x2, f2};
  return {xm, fm};
}

}  // namespace l1tv
