#pragma once

// Small numerical building blocks shared by the modules: Gauss-Legendre
// rules of runtime order, log-grid supremum search and log-log fits.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/minima.hpp>

#include "frac_heat/errors.hpp"

namespace frac_heat {

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n) {
    detail::require(n >= 1, "Gauss-Legendre order must be >= 1");
    // legendre_p_zeros returns the non-negative zeros in increasing order.
    const auto zeros = boost::math::legendre_p_zeros<double>(n);
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) push(-*it, n);
    for (double z : zeros)
      if (z != 0.0) push(z, n);
  }

  /// Map the rule to [lo, hi] and append to (s, w).
  void append(double lo, double hi, std::vector<double>& s, std::vector<double>& w) const {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      s.push_back(mid + half * nodes[i]);
      w.push_back(half * weights[i]);
    }
  }

 private:
  void push(double x, int n) {
    const double dp = boost::math::legendre_p_prime(n, x);
    nodes.push_back(x);
    weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
};

inline std::vector<double> logspace(double lo, double hi, int n) {
  detail::require(lo > 0.0 && hi > lo && n >= 2, "logspace needs 0 < lo < hi and n >= 2");
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = std::exp(a + (b - a) * i / (n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

struct SupremumResult {
  double value = 0.0;   // +inf when divergent
  double argmax = 0.0;
  bool divergent = false;
  std::string diagnostic;
};

struct SupremumOptions {
  double lo = 1e-8;
  double hi = 1e8;
  int points = 400;
  // Relative growth over the last grid decade above which the function is
  // declared unbounded rather than saturating.
  double divergence_growth = 1e-3;
};

/// sup of f over s in [lo, hi]: log-grid scan followed by Brent refinement
/// (golden section with parabolic steps) between the neighbours of the grid
/// argmax.
inline SupremumResult log_grid_supremum(const std::function<double(double)>& f,
                                        const SupremumOptions& opt = {}) {
  detail::require(opt.lo > 0.0 && opt.hi > opt.lo && opt.points >= 3, "invalid supremum grid");
  const std::vector<double> grid = logspace(opt.lo, opt.hi, opt.points);
  std::vector<double> vals(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = f(grid[i]);
    if (!std::isfinite(vals[i])) throw ConvergenceError("supremum search: non-finite value at s=" + std::to_string(grid[i]));
    if (vals[i] > vals[best]) best = i;
  }

  const double per_decade = (opt.points - 1) / std::log10(opt.hi / opt.lo);
  const std::size_t back = std::min<std::size_t>(grid.size() - 1, std::max<std::size_t>(1, std::lround(per_decade)));
  const double last = vals.back(), earlier = vals[grid.size() - 1 - back];
  if (best == grid.size() - 1 && last > 0.0 && (last - earlier) > opt.divergence_growth * std::abs(last)) {
    return {std::numeric_limits<double>::infinity(), grid.back(), true,
            "still increasing at the grid edge s=" + std::to_string(grid.back()) + " (growth " +
                std::to_string((last - earlier) / std::abs(last)) + " over the last decade)"};
  }

  if (best == 0 || best == grid.size() - 1) return {vals[best], grid[best], false, "maximum at grid edge"};

  auto neg = [&](double v) { return -f(std::exp(v)); };
  const auto r = boost::math::tools::brent_find_minima(neg, std::log(grid[best - 1]), std::log(grid[best + 1]),
                                                       std::numeric_limits<double>::digits / 2);
  const double refined = -r.second;
  if (refined >= vals[best]) return {refined, std::exp(r.first), false, {}};
  return {vals[best], grid[best], false, {}};
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double max_residual = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope x + intercept.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("fit_line: x and y differ in length");
  if (x.size() < 2) throw InsufficientDataError("fit_line: need at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = x.size();
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace frac_heat
