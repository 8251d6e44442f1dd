#pragma once

// Bessel functions of the first kind, orders 0 and 1.
//
// Below the crossover the ascending power series is summed in extended
// precision; the largest term near the crossover is ~1e6, so the cancellation
// loss stays under 1e-12 absolute with a 64-bit mantissa. Above it the Hankel
// asymptotic expansion is summed until its terms stop decreasing, whose
// truncation error is of order e^{-2t}.

#include <cmath>
#include <limits>
#include <numbers>

#include "submig/errors.hpp"

namespace submig {

class BesselEvaluator {
 public:
  static constexpr double kDefaultCrossover = 17.0;

  explicit BesselEvaluator(double crossover = kDefaultCrossover) : crossover_(crossover) {
    if (!(std::isfinite(crossover) && crossover > 0.0))
      throw InvalidArgument("BesselEvaluator: crossover must be > 0");
  }

  double crossover() const { return crossover_; }

  double j0(double t) const {
    check(t);
    t = std::abs(t);
    return t < crossover_ ? series(0, t) : asymptotic(0, t);
  }

  double j1(double t) const {
    check(t);
    const double sign = t < 0.0 ? -1.0 : 1.0;
    t = std::abs(t);
    return sign * (t < crossover_ ? series(1, t) : asymptotic(1, t));
  }

 private:
  static void check(double t) {
    if (!std::isfinite(t)) throw InvalidArgument("bessel: argument must be finite");
  }

  // J_n(t) = (t/2)^n sum_k (-1)^k (t^2/4)^k / (k! (k+n)!)
  static double series(int order, double t) {
    using Ext = long double;
    const Ext q = static_cast<Ext>(t) * t / 4;
    Ext term = order == 0 ? Ext{1} : static_cast<Ext>(t) / 2;
    Ext sum = term;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (static_cast<Ext>(k) * (k + order));
      sum += term;
      if (k > t && std::abs(term) < std::numeric_limits<Ext>::epsilon() * 1e-3L) break;
    }
    return static_cast<double>(sum);
  }

  // J_n(t) ~ sqrt(2/(pi t)) (P cos chi - Q sin chi), chi = t - (n/2 + 1/4) pi
  static double asymptotic(int order, double t) {
    const double mu = 4.0 * order * order;
    const double eight_t = 8.0 * t;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (k * eight_t);
      const double mag = std::abs(term);
      if (mag >= last) break;  // asymptotic series started diverging
      last = mag;
      // a_k enters P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}
      const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
      if (k % 2 == 0)
        p += signed_term;
      else
        q += signed_term;
      if (mag < 1e-17) break;
    }
    const double c = std::cos(t);
    const double s = std::sin(t);
    double cos_chi;
    double sin_chi;
    if (order == 0) {
      cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
      sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
    } else {
      cos_chi = (s - c) * std::numbers::sqrt2 / 2.0;
      sin_chi = -(s + c) * std::numbers::sqrt2 / 2.0;
    }
    return std::sqrt(2.0 / (std::numbers::pi * t)) * (p * cos_chi - q * sin_chi);
  }

  double crossover_;
};

inline double bessel_j0(double t) { return BesselEvaluator{}.j0(t); }
inline double bessel_j1(double t) { return BesselEvaluator{}.j1(t); }

}  // namespace submig
