#pragma once

// Suprema behind the L^p-L^q decay estimates, decay-exponent fits and the
// comparison of the direct Mittag-Leffler route with the subordination
// route as the exponent beta = lambda delta approaches the endpoint 1.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "frac_heat/errors.hpp"
#include "frac_heat/numerics.hpp"
#include "frac_heat/spectral_models.hpp"
#include "frac_heat/special_functions.hpp"
#include "frac_heat/subordination.hpp"

namespace frac_heat {

/// sup_s s^beta e^(-t s) = (beta / t)^beta e^(-beta).
inline double sup_heat_closed_form(double beta, double t) {
  detail::require(beta > 0.0 && std::isfinite(beta), "sup_heat_closed_form: beta must be positive");
  detail::require(t > 0.0 && std::isfinite(t), "sup_heat_closed_form: t must be positive");
  return std::exp(beta * (std::log(beta / t) - 1.0));
}

/// Grid-search counterpart of sup_heat_closed_form.
inline SupremumResult sup_heat_numeric(double beta, double t, const SupremumOptions& opt = {}) {
  detail::require(beta > 0.0 && t > 0.0, "sup_heat_numeric: beta and t must be positive");
  return log_grid_supremum([&](double s) { return std::exp(beta * std::log(s) - t * s); }, opt);
}

/// Stationary point of s^beta / (1 + t^alpha s) for beta < 1.
inline double bound_kernel_argmax(Alpha alpha, double beta, double t) {
  detail::require(beta > 0.0 && beta < 1.0, "bound_kernel_argmax: beta must lie in (0, 1)");
  detail::require(t > 0.0, "bound_kernel_argmax: t must be positive");
  return beta / (std::pow(t, alpha.value()) * (1.0 - beta));
}

/// sup_s s^beta / (1 + t^alpha s): (1 - beta) (beta / (1 - beta))^beta t^(-alpha beta)
/// for beta < 1, and t^(-alpha) (approached as s -> inf) for beta = 1.
inline double bound_kernel_supremum(Alpha alpha, double beta, double t) {
  detail::require(beta > 0.0 && beta <= 1.0, "bound_kernel_supremum: beta must lie in (0, 1]");
  detail::require(t > 0.0, "bound_kernel_supremum: t must be positive");
  const double a = alpha.value();
  if (beta == 1.0) return std::pow(t, -a);
  return (1.0 - beta) * std::pow(beta / (1.0 - beta), beta) * std::pow(t, -a * beta);
}

/// The attainment point as printed in the source of the decay estimate,
/// s = lambda t^(-alpha) / (delta - lambda). Kept only for comparison: it is
/// negative whenever lambda > delta, i.e. for every admissible case with
/// lambda delta < 1 and lambda >= 1.
inline double printed_stationary_point(Alpha alpha, double lambda, double delta, double t) {
  return lambda * std::pow(t, -alpha.value()) / (delta - lambda);
}

/// sup_s s^beta E_alpha(-t^alpha s) (exact kernel) or sup_s s^beta / (1 + t^alpha s)
/// (bound kernel) by grid search. For beta > 1 both are unbounded and the
/// result comes back flagged divergent.
inline SupremumResult sup_ml_numeric(Alpha alpha, double beta, double t, bool exact_kernel,
                                     const SupremumOptions& opt = {}, const EvalPolicy& policy = {}) {
  detail::require(beta > 0.0 && std::isfinite(beta), "sup_ml_numeric: beta must be positive");
  detail::require(t > 0.0 && std::isfinite(t), "sup_ml_numeric: t must be positive");
  const double ta = std::pow(t, alpha.value());
  if (exact_kernel)
    return log_grid_supremum([&](double s) { return std::pow(s, beta) * mittag_leffler_neg(alpha, ta * s, policy); },
                             opt);
  return log_grid_supremum([&](double s) { return std::pow(s, beta) / (1.0 + ta * s); }, opt);
}

/// OLS slope of log y against log t.
inline LineFit fit_decay_exponent(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw DomainError("fit_decay_exponent: t and y differ in length");
  if (t.size() < 5) throw InsufficientDataError("fit_decay_exponent: need at least 5 points");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    detail::require(t[i] > 0.0 && std::isfinite(t[i]), "fit_decay_exponent: t values must be positive");
    if (!(y[i] > 0.0) || !std::isfinite(y[i]))
      throw DomainError("fit_decay_exponent: y values must be positive and finite");
    lo = std::min(lo, t[i]);
    hi = std::max(hi, t[i]);
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(y[i]));
  }
  if (hi / lo < 100.0 * (1.0 - 1e-12))
    throw InsufficientDataError("fit_decay_exponent: t values must span at least 2 decades");
  return fit_line(lx, ly);
}

enum class Representation { direct_ml, subordination };

inline std::string_view to_string(Representation r) {
  return r == Representation::direct_ml ? "direct" : "subordination";
}

inline Representation parse_representation(std::string_view s) {
  if (s == "direct" || s == "direct_ml") return Representation::direct_ml;
  if (s == "subordination") return Representation::subordination;
  throw DomainError("unknown representation '" + std::string(s) + "' (expected direct or subordination)");
}

/// Compensated constant of the direct route,
/// sup_t t^(alpha beta) sup_s s^beta E_alpha(-t^alpha s) = sup_u u^beta E_alpha(-u),
/// which does not depend on t.
inline SupremumResult direct_route_constant(Alpha alpha, double beta, const SupremumOptions& opt = {},
                                            const EvalPolicy& policy = {}) {
  return sup_ml_numeric(alpha, beta, 1.0, true, opt, policy);
}

/// Gamma(1 - beta) / Gamma(1 - alpha beta); +inf at beta = 1.
inline double subordination_constant_closed_form(Alpha alpha, double beta) {
  detail::require(beta > 0.0 && beta <= 1.0, "subordination constant: beta must lie in (0, 1]");
  if (beta == 1.0) return std::numeric_limits<double>::infinity();
  return std::exp(std::lgamma(1.0 - beta) - std::lgamma(1.0 - alpha.value() * beta));
}

struct ComparisonRow {
  double eps = 0.0;
  double delta = 0.0;  // 1/lambda - eps
  double beta = 0.0;   // lambda delta
  double direct_constant = 0.0;
  bool direct_finite = true;
  double subordination_constant = 0.0;  // quadrature value, +inf at the endpoint
  double subordination_closed_form = 0.0;
  bool subordination_divergent = false;
};

struct ComparisonReport {
  double alpha = 0.0;
  double lambda = 0.0;
  double uniform_bound = 0.0;  // C_hat(alpha), bound for the direct constant
  std::vector<ComparisonRow> rows;
  bool subordination_increasing = true;
  double direct_max_relative_change = 0.0;  // max |C_k / C_first - 1|
  std::string verdict;
};

/// Both constants along delta_k = 1/lambda - eps_k.
inline ComparisonReport compare_representations(Alpha alpha, double lambda, const std::vector<double>& eps_list,
                                                const QuadratureSpec& quad = {}, const SupremumOptions& opt = {}) {
  alpha.require_fractional("compare_representations");
  detail::require(lambda > 0.0 && std::isfinite(lambda), "compare_representations: lambda must be positive");
  if (eps_list.empty()) throw InsufficientDataError("compare_representations: empty eps list");
  ComparisonReport rep;
  rep.alpha = alpha.value();
  rep.lambda = lambda;
  rep.uniform_bound = uniform_bound_constant(alpha, 1e6, 2000, quad.eval);
  for (double eps : eps_list) {
    if (!(eps >= 0.0))
      throw DomainError("compare_representations: eps must be >= 0 (lambda delta > 1 lies outside both estimates)");
    detail::require(eps < 1.0 / lambda, "compare_representations: eps must be below 1/lambda so that delta > 0");
    ComparisonRow row;
    row.eps = eps;
    row.delta = 1.0 / lambda - eps;
    row.beta = lambda * row.delta;
    const SupremumResult d = direct_route_constant(alpha, row.beta, opt, quad.eval);
    row.direct_constant = d.value;
    row.direct_finite = !d.divergent;
    row.subordination_closed_form = subordination_constant_closed_form(alpha, row.beta);
    if (row.beta < 1.0) {
      row.subordination_constant = subordination_constant(alpha, row.beta, quad).value;
    } else {
      row.subordination_constant = std::numeric_limits<double>::infinity();
      row.subordination_divergent = true;
    }
    if (!rep.rows.empty()) {
      if (!(row.subordination_constant > rep.rows.back().subordination_constant)) rep.subordination_increasing = false;
      rep.direct_max_relative_change =
          std::max(rep.direct_max_relative_change, std::abs(row.direct_constant / rep.rows.front().direct_constant - 1.0));
    }
    rep.rows.push_back(row);
  }
  bool endpoint = false, direct_ok = true;
  for (const auto& r : rep.rows) {
    if (r.beta == 1.0) endpoint = true;
    direct_ok = direct_ok && r.direct_finite;
  }
  if (endpoint)
    rep.verdict = direct_ok ? "direct representation admits the endpoint 1/lambda = 1/p - 1/q; "
                              "subordination constant diverges there"
                            : "direct constant not finite at the endpoint";
  else
    rep.verdict = rep.subordination_increasing ? "subordination constant grows as delta approaches 1/lambda; "
                                                 "direct constant stays bounded"
                                               : "subordination constants not increasing";
  return rep;
}

/// One decay-rate experiment for a power-law trace tau(s) = s^lambda: the
/// bound on ||w(t)||_q / ||w0||_p produced by each representation, its
/// fitted exponent in t and the constant t^(alpha lambda delta) * bound.
class DecayExperiment {
 public:
  DecayExperiment(Alpha alpha, double lambda_exp, double p, double q, Representation rep,
                  std::vector<double> t_grid)
      : alpha_(alpha), lambda_(lambda_exp), p_(p), q_(q), rep_(rep), t_(std::move(t_grid)) {
    alpha.require_fractional("DecayExperiment");
    detail::require(lambda_exp > 0.0, "DecayExperiment: lambda must be positive");
    delta_ = lebesgue_gap(p, q);
    const double beta = lambda_ * delta_;
    if (rep == Representation::subordination && !(beta < 1.0))
      throw DomainError("DecayExperiment: the subordination estimate needs 1/lambda > 1/p - 1/q (lambda delta = " +
                        std::to_string(beta) + ")");
    if (rep == Representation::direct_ml && !(beta <= 1.0))
      throw DomainError("DecayExperiment: the decay estimate needs 1/lambda >= 1/p - 1/q (lambda delta = " +
                        std::to_string(beta) + ")");
    if (t_.size() < 5) throw InsufficientDataError("DecayExperiment: need at least 5 times");
    for (std::size_t i = 0; i < t_.size(); ++i) {
      detail::require(t_[i] > 0.0, "DecayExperiment: times must be positive");
      if (i > 0) detail::require(t_[i] > t_[i - 1], "DecayExperiment: times must increase");
    }
  }

  double alpha() const { return alpha_.value(); }
  double lambda() const { return lambda_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double delta() const { return delta_; }
  double beta() const { return lambda_ * delta_; }
  Representation representation() const { return rep_; }
  const std::vector<double>& t_grid() const { return t_; }
  const std::vector<double>& values() const { return values_; }
  double fitted_exponent() const { return fitted_exponent_; }
  double constant_estimate() const { return constant_estimate_; }

  /// direct: sup_s s^beta E_alpha(-t^alpha s).
  /// subordination: int M_alpha(s) sup_r r^beta e^(-s t^alpha r) ds
  ///              = (beta/e)^beta t^(-alpha beta) int M_alpha(s) s^-beta ds.
  void run(const QuadratureSpec& quad = {}, const SupremumOptions& opt = {}) {
    values_.clear();
    const double b = beta();
    double sub = 0.0;
    if (rep_ == Representation::subordination) sub = subordination_constant(alpha_, b, quad).value;
    for (double t : t_) {
      if (rep_ == Representation::direct_ml) {
        const SupremumResult r = sup_ml_numeric(alpha_, b, t, true, opt, quad.eval);
        if (r.divergent) throw ConvergenceError("DecayExperiment: supremum diverged: " + r.diagnostic);
        values_.push_back(r.value);
      } else {
        values_.push_back(sup_heat_closed_form(b, std::pow(t, alpha_.value())) * sub);
      }
    }
    fitted_exponent_ = fit_decay_exponent(t_, values_).slope;
    constant_estimate_ = 0.0;
    for (std::size_t i = 0; i < t_.size(); ++i)
      constant_estimate_ = std::max(constant_estimate_, values_[i] * std::pow(t_[i], alpha_.value() * b));
  }

 private:
  Alpha alpha_;
  double lambda_, p_, q_;
  Representation rep_;
  std::vector<double> t_;
  double delta_ = 0.0;
  std::vector<double> values_;
  double fitted_exponent_ = 0.0;
  double constant_estimate_ = 0.0;
};

}  // namespace frac_heat
