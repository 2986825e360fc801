#pragma once

// Integrals of the Wright function M_alpha(s) over s in (0, inf): the scalar
// subordination formula E_alpha(-x) = int M_alpha(s) e^(-s x) ds, the moments
// int s^gamma M_alpha(s) ds, and the logarithmic divergence at gamma = -1.
//
// Quadrature layout on (0, inf):
//   [0, a]      termwise integration of the power series of M_alpha(s) e^(-s x)
//               (a <= 1e-3 and a x <= 1e-3, so a handful of terms suffice),
//   [a, 0.5]    Gauss-Legendre on geometric panels (ratio 2),
//   [0.5, 1.5]  uniform panels of width ~ 4 (1 - alpha), resolving the spike
//               M_alpha develops near s = 1 as alpha -> 1,
//   [1.5, S]    `panels` uniform panels,
//   [S, inf)    tail, extrapolated from the local decay rate of the integrand
//               or bounded and neglected.
// Each refinement level halves every panel (geometric ratio 2 -> sqrt 2 ...).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "frac_heat/errors.hpp"
#include "frac_heat/numerics.hpp"
#include "frac_heat/special_functions.hpp"

namespace frac_heat {

enum class TailPolicy { neglect_with_bound, exponential_extrapolation };

inline std::string_view to_string(TailPolicy p) {
  return p == TailPolicy::neglect_with_bound ? "neglect_with_bound" : "exponential_extrapolation";
}

inline TailPolicy parse_tail_policy(std::string_view s) {
  if (s == "neglect_with_bound") return TailPolicy::neglect_with_bound;
  if (s == "exponential_extrapolation") return TailPolicy::exponential_extrapolation;
  throw DomainError("unknown tail policy '" + std::string(s) + "'");
}

struct QuadratureSpec {
  double upper_cut = 30.0;  // S
  int panels = 16;          // uniform panels on [1.5, S] at level 0
  int nodes_per_panel = 20;
  TailPolicy tail_policy = TailPolicy::exponential_extrapolation;
  double target_tol = 1e-10;  // absolute, scaled by max(1, |value|)
  int max_doublings = 3;
  EvalPolicy eval{};  // used for the M_alpha samples

  void validate() const {
    detail::require(upper_cut > 1.0, "QuadratureSpec: upper cut S must exceed 1");
    detail::require(panels > 0, "QuadratureSpec: panels must be positive");
    detail::require(nodes_per_panel >= 2, "QuadratureSpec: nodes_per_panel must be >= 2");
    detail::require(target_tol > 0.0, "QuadratureSpec: target_tol must be positive");
    detail::require(max_doublings >= 1, "QuadratureSpec: max_doublings must be >= 1");
    eval.validate();
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // refinement difference plus tail uncertainty
  double tail = 0.0;            // contribution beyond S (added or neglected)
  bool reliable = true;         // false if any M_alpha sample was unreliable
  int panels = 0;               // uniform panels on [1.5, S] of the accepted rule
};

/// Gauss-Legendre nodes on (lower, S] with M_alpha sampled once, so one rule
/// serves any number of integrands (all Fourier modes of a PDE solve, all
/// x of a scalar sweep).
class SubordinationRule {
 public:
  static constexpr double kSmallCut = 1e-3;
  static constexpr double kZoneLo = 0.5;
  static constexpr double kZoneHi = 1.5;

  /// lower = 0 integrates from the origin (power-series piece on [0, a]);
  /// lower > 0 starts the geometric panels there. x_max bounds the decay
  /// rates used with power_exp.
  SubordinationRule(Alpha alpha, const QuadratureSpec& spec, double lower = 0.0, double x_max = 0.0,
                    int level = 0)
      : alpha_(alpha), spec_(spec), lower_(lower), x_max_(x_max), level_(level) {
    spec.validate();
    alpha.require_fractional("SubordinationRule");
    detail::require(lower >= 0.0 && lower < kZoneHi, "SubordinationRule: lower limit must lie in [0, 1.5)");
    detail::require(x_max >= 0.0 && std::isfinite(x_max), "SubordinationRule: x_max must be finite and >= 0");
    detail::require(level >= 0 && level <= 10, "SubordinationRule: refinement level out of range");

    const GaussLegendre gl(spec.nodes_per_panel);
    const double S = spec.upper_cut;
    std::vector<double> w;
    if (lower == 0.0) {
      a_ = std::min(kSmallCut, kSmallCut / std::max(1.0, x_max));
      gl.append(0.0, a_, s0_, w0_);
      init_series();
    } else {
      a_ = lower;
    }
    const double ratio = std::pow(2.0, std::ldexp(1.0, -level));
    const double zone_lo = std::max(a_, kZoneLo);
    for (double lo = a_; lo < zone_lo;) {
      const double hi = (lo * ratio * ratio > zone_lo) ? zone_lo : lo * ratio;
      gl.append(lo, hi, s_, w);
      lo = hi;
    }
    // As alpha -> 1 the mass of M_alpha gathers in a spike of width ~ (1 - alpha)
    // just above s = 1.
    const double width = std::min(0.5, 4.0 * (1.0 - alpha.value()));
    const int zone = static_cast<int>(std::ceil((kZoneHi - zone_lo) / width)) << level;
    for (int k = 0; k < zone; ++k)
      gl.append(zone_lo + (kZoneHi - zone_lo) * k / zone, zone_lo + (kZoneHi - zone_lo) * (k + 1) / zone, s_, w);
    const int uniform = spec.panels << level;
    for (int k = 0; k < uniform; ++k)
      gl.append(kZoneHi + (S - kZoneHi) * k / uniform, kZoneHi + (S - kZoneHi) * (k + 1) / uniform, s_, w);

    wm_.resize(s_.size());
    for (std::size_t i = 0; i < s_.size(); ++i) wm_[i] = w[i] * sample(s_[i]);
    for (std::size_t i = 0; i < s0_.size(); ++i) w0_[i] *= sample(s0_[i]);

    // Local decay rate of M at S from a backward difference (rate at S - h/2,
    // which is below the rate further out, so the tail estimate is an upper bound).
    m_cut_ = sample(S);
    if (m_cut_ > 0.0) {
      const double h = 1e-3 * S;
      const double m_before = sample(S - h);
      kappa_ = (std::log(m_before) - std::log(m_cut_)) / h;
    }
  }

  Alpha alpha() const { return alpha_; }
  const QuadratureSpec& spec() const { return spec_; }
  double lower() const { return lower_; }
  double x_max() const { return x_max_; }
  int level() const { return level_; }
  bool reliable() const { return reliable_; }
  std::size_t size() const { return s_.size() + s0_.size(); }
  int uniform_panels() const { return spec_.panels << level_; }

  /// int_{lower}^inf s^gamma e^(-s x) M_alpha(s) ds.
  QuadratureResult power_exp(double gamma, double x) const {
    detail::require(gamma > -1.0 || lower_ > 0.0, "power_exp: gamma must exceed -1 when integrating from 0");
    detail::require(x >= 0.0 && x <= x_max_ * (1.0 + 1e-12), "power_exp: x outside [0, x_max] of this rule");
    double sum = 0.0, comp = 0.0;
    auto add = [&](double term) {
      const double t = sum + term;
      comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    };
    if (lower_ == 0.0) add(small_piece(gamma, x));
    for (std::size_t i = 0; i < s_.size(); ++i) {
      const double s = s_[i];
      const double g = (gamma == 0.0 ? 1.0 : std::pow(s, gamma)) * (x == 0.0 ? 1.0 : std::exp(-s * x));
      add(g * wm_[i]);
    }
    const double S = spec_.upper_cut;
    const double g_cut = std::pow(S, gamma) * std::exp(-S * x) * m_cut_;
    return finish(sum + comp, g_cut, kappa_ + x - gamma / S);
  }

  /// int_{lower}^inf f(s) M_alpha(s) ds for a smooth f. Near 0 the rule is
  /// plain Gauss-Legendre, so f must be bounded there.
  QuadratureResult integrate(const std::function<double(double)>& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < s0_.size(); ++i) sum += f(s0_[i]) * w0_[i];
    for (std::size_t i = 0; i < s_.size(); ++i) sum += f(s_[i]) * wm_[i];
    return finish(sum, f(spec_.upper_cut) * m_cut_, kappa_);
  }

 private:
  double sample(double s) {
    const WrightValue v = wright_m(alpha_, s, spec_.eval);
    if (!v.reliable || !std::isfinite(v.value)) {
      reliable_ = false;
      return 0.0;
    }
    return v.value;
  }

  // Scaled series coefficients of M_alpha on [0, a]: c_n a^n.
  void init_series() {
    const double al = alpha_.value();
    double log_fact = 0.0;
    for (int n = 0; n < kSeriesTerms; ++n) {
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      const double rg = reciprocal_gamma(1.0 - al - al * n);
      const double mag = std::exp(n * std::log(a_) - log_fact);
      series_.push_back(((n % 2 == 0) ? 1.0 : -1.0) * rg * mag);
    }
  }

  // int_0^a s^gamma e^(-s x) M(s) ds by multiplying the two power series and
  // integrating termwise.
  double small_piece(double gamma, double x) const {
    const double xa = x * a_;
    std::vector<double> e(kSeriesTerms);  // (-x a)^m / m!
    e[0] = 1.0;
    for (int m = 1; m < kSeriesTerms; ++m) e[m] = e[m - 1] * (-xa) / m;
    double total = 0.0;
    for (int j = 0; j < kSeriesTerms; ++j) {
      double d = 0.0;
      for (int n = 0; n <= j; ++n) d += series_[n] * e[j - n];
      const double term = d / (j + gamma + 1.0);
      total += term;
      if (j >= 3 && std::abs(term) <= 1e-18 * std::abs(total)) break;
    }
    return total * std::pow(a_, gamma + 1.0);
  }

  QuadratureResult finish(double body, double g_cut, double rate) const {
    QuadratureResult r;
    r.reliable = reliable_;
    r.panels = uniform_panels();
    if (g_cut != 0.0) {
      if (!(rate > 0.0))
        throw ConvergenceError("subordination quadrature: integrand not decaying at S=" +
                               std::to_string(spec_.upper_cut) + "; increase the upper cut");
      r.tail = g_cut / rate;
    }
    if (spec_.tail_policy == TailPolicy::exponential_extrapolation) {
      r.value = body + r.tail;
      r.error_estimate = 0.5 * std::abs(r.tail);
    } else {
      r.value = body;
      r.error_estimate = std::abs(r.tail);
    }
    return r;
  }

  static constexpr int kSeriesTerms = 40;

  Alpha alpha_;
  QuadratureSpec spec_;
  double lower_;
  double x_max_;
  int level_;
  bool reliable_ = true;
  double a_ = 0.0;
  std::vector<double> s0_, w0_;  // [0, a] panel, weights times M
  std::vector<double> s_, wm_;   // [a, S] panels, weights times M
  std::vector<double> series_;
  double m_cut_ = 0.0;
  double kappa_ = 0.0;
};

namespace detail {

/// Evaluate at increasing refinement until two successive levels agree to
/// target_tol * max(1, |value|).
template <class Compute>
QuadratureResult refine(const QuadratureSpec& spec, Compute&& compute, const std::string& what) {
  QuadratureResult prev = compute(0);
  for (int level = 1; level <= spec.max_doublings; ++level) {
    QuadratureResult cur = compute(level);
    const double diff = std::abs(cur.value - prev.value);
    cur.error_estimate += diff;
    if (cur.error_estimate <= spec.target_tol * std::max(1.0, std::abs(cur.value))) return cur;
    prev = cur;
  }
  throw ConvergenceError(what + ": no agreement to " + std::to_string(spec.target_tol) + " after " +
                         std::to_string(spec.max_doublings) + " panel doublings (last change " +
                         std::to_string(prev.error_estimate) + ")");
}

}  // namespace detail

/// A rule for power_exp with x in [0, x_max] whose accuracy has been checked
/// against the next refinement level on a probe set of x. Returns the finer
/// rule of the first agreeing pair.
inline SubordinationRule make_subordination_rule(Alpha alpha, const QuadratureSpec& spec, double x_max) {
  spec.validate();
  std::vector<double> probes{0.0};
  if (x_max > 1e-3) {
    for (double x : logspace(1e-3, x_max, 12)) probes.push_back(x);
  } else if (x_max > 0.0) {
    probes.push_back(x_max);
  }
  SubordinationRule coarse(alpha, spec, 0.0, x_max, 0);
  double last = 0.0;
  for (int level = 1; level <= spec.max_doublings; ++level) {
    SubordinationRule fine(alpha, spec, 0.0, x_max, level);
    double worst = 0.0;
    for (double x : probes) {
      const QuadratureResult a = coarse.power_exp(0.0, x), b = fine.power_exp(0.0, x);
      worst = std::max(worst, std::abs(a.value - b.value) + b.error_estimate);
    }
    if (worst <= spec.target_tol) return fine;
    last = worst;
    coarse = std::move(fine);
  }
  throw ConvergenceError("make_subordination_rule: no agreement to " + std::to_string(spec.target_tol) +
                         " after " + std::to_string(spec.max_doublings) + " panel doublings (last change " +
                         std::to_string(last) + ")");
}

/// int_0^inf M_alpha(s) e^(-s x) ds, which equals E_alpha(-x).
inline QuadratureResult subordinate_scalar(Alpha alpha, double x, const QuadratureSpec& quad = {}) {
  quad.validate();
  detail::require(x >= 0.0 && std::isfinite(x), "subordinate_scalar: x must be finite and >= 0");
  return detail::refine(
      quad, [&](int level) { return SubordinationRule(alpha, quad, 0.0, x, level).power_exp(0.0, x); },
      "subordinate_scalar");
}

/// Gamma(gamma + 1) / Gamma(gamma alpha + 1), the closed form of the moments.
inline double wright_moment_closed_form(Alpha alpha, double gamma) {
  detail::require(gamma > -1.0, "wright moment: gamma must exceed -1");
  return std::exp(std::lgamma(gamma + 1.0) - std::lgamma(gamma * alpha.value() + 1.0));
}

/// int_0^inf s^gamma M_alpha(s) ds for gamma > -1.
inline QuadratureResult wright_moment(Alpha alpha, double gamma, const QuadratureSpec& quad = {}) {
  quad.validate();
  if (!(gamma > -1.0))
    throw DomainError("wright_moment: gamma must exceed -1 (the integral diverges at s = 0 for gamma <= -1), got " +
                      std::to_string(gamma));
  return detail::refine(
      quad, [&](int level) { return SubordinationRule(alpha, quad, 0.0, 0.0, level).power_exp(gamma, 0.0); },
      "wright_moment");
}

/// int_0^inf M_alpha(s) s^-beta ds = Gamma(1 - beta) / Gamma(1 - alpha beta),
/// the constant of the subordinated decay estimate with beta = lambda (1/p - 1/q).
inline QuadratureResult subordination_constant(Alpha alpha, double beta, const QuadratureSpec& quad = {}) {
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("subordination_constant: beta must lie in (0, 1); beta >= 1 is the endpoint "
                      "1/lambda <= 1/p - 1/q where the integral diverges, got " + std::to_string(beta));
  return wright_moment(alpha, -beta, quad);
}

struct EndpointProfile {
  std::vector<double> eps;
  std::vector<double> integral;  // I(eps) = int_eps^inf M_alpha(s) / s ds
  std::vector<bool> reliable;
  double slope = 0.0;            // dI / d ln(1/eps), least squares
  double reference = 0.0;        // M_alpha(0) = 1 / Gamma(1 - alpha)
};

/// I(eps) over eps_list and the slope of I against ln(1/eps).
inline EndpointProfile endpoint_divergence_profile(Alpha alpha, const std::vector<double>& eps_list,
                                                   const QuadratureSpec& quad = {}) {
  quad.validate();
  alpha.require_fractional("endpoint_divergence_profile");
  if (eps_list.size() < 2) throw InsufficientDataError("endpoint_divergence_profile: need at least 2 eps values");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    detail::require(eps_list[i] > 0.0 && eps_list[i] < 1.0, "endpoint_divergence_profile: eps must lie in (0, 1)");
    if (i > 0)
      detail::require(eps_list[i] < eps_list[i - 1], "endpoint_divergence_profile: eps values must decrease");
  }
  EndpointProfile out;
  out.reference = reciprocal_gamma(1.0 - alpha.value());
  std::vector<double> lx;
  for (double e : eps_list) {
    const auto r = detail::refine(
        quad, [&](int level) { return SubordinationRule(alpha, quad, e, 0.0, level).power_exp(-1.0, 0.0); },
        "endpoint_divergence_profile");
    out.eps.push_back(e);
    out.integral.push_back(r.value);
    out.reliable.push_back(r.reliable);
    lx.push_back(std::log(1.0 / e));
  }
  out.slope = fit_line(lx, out.integral).slope;
  return out;
}

struct DiracRow {
  double alpha = 0.0;
  double value = 0.0;   // int M_alpha(s) f(s) ds
  double target = 0.0;  // f(1)
  double error = 0.0;   // |value - target|
  bool reliable = true;
};

struct DiracReport {
  std::string name;
  std::vector<DiracRow> rows;
  bool monotone = true;  // error non-increasing along the (increasing) alpha list
};

inline constexpr double kDiracAlphaCap = 0.995;

/// int M_alpha(s) f(s) ds against f(1) for alpha increasing towards 1.
inline DiracReport dirac_limit_check(const std::vector<double>& alphas, const std::string& name,
                                     const std::function<double(double)>& f, const QuadratureSpec& quad = {}) {
  quad.validate();
  if (alphas.empty()) throw InsufficientDataError("dirac_limit_check: empty alpha list");
  DiracReport rep;
  rep.name = name;
  const double target = f(1.0);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    detail::require(a > 0.0 && a < 1.0, "dirac_limit_check: alpha must lie in (0, 1)");
    if (a > kDiracAlphaCap)
      throw DomainError("dirac_limit_check: alpha above " + std::to_string(kDiracAlphaCap) +
                        " is not supported (Wright series conditioning)");
    if (i > 0) detail::require(a > alphas[i - 1], "dirac_limit_check: alphas must increase");
    const auto r = detail::refine(
        quad, [&](int level) { return SubordinationRule(Alpha(a), quad, 0.0, 0.0, level).integrate(f); },
        "dirac_limit_check");
    DiracRow row{a, r.value, target, std::abs(r.value - target), r.reliable};
    if (!rep.rows.empty() && row.error > rep.rows.back().error) rep.monotone = false;
    rep.rows.push_back(row);
  }
  return rep;
}

/// The fixed test functions e^-s, cos s and s^2.
inline std::vector<DiracReport> dirac_limit_suite(const std::vector<double>& alphas, const QuadratureSpec& quad = {}) {
  return {dirac_limit_check(alphas, "exp(-s)", [](double s) { return std::exp(-s); }, quad),
          dirac_limit_check(alphas, "cos(s)", [](double s) { return std::cos(s); }, quad),
          dirac_limit_check(alphas, "s^2", [](double s) { return s * s; }, quad)};
}

}  // namespace frac_heat
