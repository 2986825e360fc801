#pragma once

// Test-only reference computations. Everything here is deliberately naive:
// direct power-series summation in 100-digit arithmetic, brute-force grid
// maximisation, plain composite rules. None of it shares code with the
// library routines it checks.

#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;

/// E_alpha(-x) by direct summation of sum (-x)^k / Gamma(alpha k + 1).
/// 100 decimal digits absorb the cancellation for x^(1/alpha) up to ~150.
inline double mittag_leffler_series(double alpha, double x) {
  big sum = 0, xk = 1;
  const big mx = -big(x);
  for (int k = 0; k < 20000; ++k) {
    const big term = xk / boost::math::tgamma(big(alpha) * k + 1);
    sum += term;
    if (k > 10 && abs(term) < big("1e-60") && abs(term) < abs(sum) * big("1e-40")) break;
    xk *= mx;
  }
  return static_cast<double>(sum);
}

/// M_alpha(s) by direct summation of sum (-s)^n / (n! Gamma(1 - alpha - alpha n)).
inline double wright_series(double alpha, double s) {
  big sum = 0, sn = 1, fact = 1;
  const big ms = -big(s);
  for (int n = 0; n < 20000; ++n) {
    if (n > 0) fact *= n;
    const big z = 1 - big(alpha) - big(alpha) * n;
    big rg = 0;
    if (!(z <= 0 && z == floor(z))) rg = 1 / boost::math::tgamma(z);
    const big term = sn / fact * rg;
    sum += term;
    if (n > 10 && rg != 0 && abs(term) < big("1e-60") && abs(term) < abs(sum) * big("1e-40") + big("1e-80")) break;
    sn *= ms;
  }
  return static_cast<double>(sum);
}

inline double gamma_big(double x) { return static_cast<double>(boost::math::tgamma(big(x))); }

/// Brute-force max of f over a log grid on [lo, hi] with n points.
inline double grid_max(const std::function<double(double)>& f, double lo, double hi, int n,
                       double* argmax = nullptr) {
  double best = -INFINITY, arg = lo;
  for (int i = 0; i < n; ++i) {
    const double s = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    const double v = f(s);
    if (v > best) {
      best = v;
      arg = s;
    }
  }
  if (argmax) *argmax = arg;
  return best;
}

inline std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return v;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace oracle
