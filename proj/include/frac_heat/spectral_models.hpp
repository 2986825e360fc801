#pragma once

// Surrogates for a positive operator L described only through its spectrum:
// either discrete eigenvalues with multiplicities or a power-law counting
// function tau(s) = c s^lambda. Provides the trace growth check, a numerical
// sectoriality constant and the suprema sup_s tau(s)^delta K(t, s).

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "frac_heat/errors.hpp"
#include "frac_heat/numerics.hpp"
#include "frac_heat/special_functions.hpp"

namespace frac_heat {

struct DiscreteSpectrum {
  std::vector<double> eigenvalues;  // strictly positive, ascending
  std::vector<long> multiplicities;  // positive
};

struct PowerLawSpectrum {
  double c = 1.0;
  double lambda_exp = 1.0;
};

class SpectralModel {
 public:
  SpectralModel(std::string label, DiscreteSpectrum d) : label_(std::move(label)), variant_(std::move(d)) {
    const auto& ds = std::get<DiscreteSpectrum>(variant_);
    detail::require(ds.eigenvalues.size() == ds.multiplicities.size(),
                    "discrete model '" + label_ + "': eigenvalue and multiplicity lists differ in length");
    detail::require(!ds.eigenvalues.empty(), "discrete model '" + label_ + "': no eigenvalues");
    for (std::size_t i = 0; i < ds.eigenvalues.size(); ++i) {
      detail::require(ds.eigenvalues[i] > 0.0 && std::isfinite(ds.eigenvalues[i]),
                      "discrete model '" + label_ + "': eigenvalues must be positive");
      detail::require(ds.multiplicities[i] > 0, "discrete model '" + label_ + "': multiplicities must be positive");
      if (i > 0)
        detail::require(ds.eigenvalues[i] > ds.eigenvalues[i - 1],
                        "discrete model '" + label_ + "': eigenvalues must be strictly ascending");
    }
    cumulative_.reserve(ds.multiplicities.size());
    long total = 0;
    for (long m : ds.multiplicities) cumulative_.push_back(static_cast<double>(total += m));
  }

  SpectralModel(std::string label, PowerLawSpectrum p) : label_(std::move(label)), variant_(p) {
    detail::require(p.c > 0.0 && std::isfinite(p.c), "power-law model '" + label_ + "': c must be positive");
    detail::require(p.lambda_exp > 0.0 && std::isfinite(p.lambda_exp),
                    "power-law model '" + label_ + "': lambda must be positive");
  }

  const std::string& label() const { return label_; }
  bool is_discrete() const { return std::holds_alternative<DiscreteSpectrum>(variant_); }
  const DiscreteSpectrum& discrete() const { return std::get<DiscreteSpectrum>(variant_); }
  const PowerLawSpectrum& power_law() const { return std::get<PowerLawSpectrum>(variant_); }

  /// tau(E_(0,s)(L)): multiplicities of the eigenvalues strictly below s, or c s^lambda.
  double trace_counting(double s) const {
    detail::require(s > 0.0, "trace_counting: s must be positive");
    if (const auto* p = std::get_if<PowerLawSpectrum>(&variant_)) return p->c * std::pow(s, p->lambda_exp);
    const auto& ev = discrete().eigenvalues;
    const auto n = std::lower_bound(ev.begin(), ev.end(), s) - ev.begin();
    return n == 0 ? 0.0 : cumulative_[n - 1];
  }

 private:
  std::string label_;
  std::variant<DiscreteSpectrum, PowerLawSpectrum> variant_;
  std::vector<double> cumulative_;
};

inline double trace_counting(const SpectralModel& model, double s) { return model.trace_counting(s); }

/// -d^2/dx^2 on the 2 pi periodic circle (dim 1) or square (dim 2) without
/// the zero mode: eigenvalues |k|^2 for integer vectors 0 < |k_i| <= modes.
inline SpectralModel torus_laplacian(int dim, int modes) {
  detail::require(dim == 1 || dim == 2, "torus_laplacian: dim must be 1 or 2");
  detail::require(modes >= 1, "torus_laplacian: modes must be >= 1");
  std::map<long, long> count;
  if (dim == 1) {
    for (long k = 1; k <= modes; ++k) count[k * k] += 2;
  } else {
    for (long j = -modes; j <= modes; ++j)
      for (long k = -modes; k <= modes; ++k)
        if (j != 0 || k != 0) ++count[j * j + k * k];
  }
  DiscreteSpectrum d;
  for (const auto& [mu, m] : count) {
    d.eigenvalues.push_back(static_cast<double>(mu));
    d.multiplicities.push_back(m);
  }
  return SpectralModel("torus-laplacian-" + std::to_string(dim) + "d", std::move(d));
}

struct TraceCatalogEntry {
  std::string name;
  double lambda_exp = 0.0;
  std::string provenance;
  SpectralModel model() const { return SpectralModel(name, PowerLawSpectrum{1.0, lambda_exp}); }
};

/// Trace exponents of the standard examples: lambda = n/2 for the Laplacian
/// on R^n, Q/2 for a sub-Laplacian on a compact Lie group of local dimension
/// Q, n + 1 for the sub-Laplacian on the Heisenberg group H^n, Q/nu for a
/// Rockland operator of homogeneous degree nu on a graded group of
/// homogeneous dimension Q.
inline std::vector<TraceCatalogEntry> builtin_catalog() {
  return {
      {"euclidean-laplacian-R1", 0.5, "Laplacian on R^n, lambda = n/2 with n = 1"},
      {"euclidean-laplacian-R2", 1.0, "Laplacian on R^n, lambda = n/2 with n = 2"},
      {"euclidean-laplacian-R3", 1.5, "Laplacian on R^n, lambda = n/2 with n = 3"},
      {"compact-lie-sublaplacian-SU2", 2.0, "sub-Laplacian on SU(2), local dimension Q = 4, lambda = Q/2"},
      {"heisenberg-sublaplacian-H1", 2.0, "sub-Laplacian on H^1, lambda = n + 1 with n = 1"},
      {"heisenberg-sublaplacian-H2", 3.0, "sub-Laplacian on H^2, lambda = n + 1 with n = 2"},
      {"rockland-H1-degree4", 1.0, "Rockland operator of degree nu = 4 on H^1 (Q = 4), lambda = Q/nu"},
  };
}

/// Parse one catalog record {label, variant, parameters}.
inline SpectralModel model_from_json(const nlohmann::json& j) {
  try {
    const std::string label = j.at("label").get<std::string>();
    const std::string variant = j.at("variant").get<std::string>();
    const auto& p = j.at("parameters");
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "label" && it.key() != "variant" && it.key() != "parameters")
        throw DomainError("catalog record '" + label + "': unknown key '" + it.key() + "'");
    auto check_keys = [&](std::initializer_list<std::string_view> allowed) {
      for (auto it = p.begin(); it != p.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
          throw DomainError("catalog record '" + label + "': unknown parameter '" + it.key() + "'");
    };
    if (variant == "power_law") {
      check_keys({"c", "lambda"});
      return SpectralModel(label, PowerLawSpectrum{p.value("c", 1.0), p.at("lambda").get<double>()});
    }
    if (variant == "discrete") {
      check_keys({"eigenvalues", "multiplicities"});
      DiscreteSpectrum d{p.at("eigenvalues").get<std::vector<double>>(), {}};
      if (p.contains("multiplicities"))
        d.multiplicities = p.at("multiplicities").get<std::vector<long>>();
      else
        d.multiplicities.assign(d.eigenvalues.size(), 1);
      return SpectralModel(label, std::move(d));
    }
    if (variant == "torus") {
      check_keys({"dim", "modes"});
      const SpectralModel m = torus_laplacian(p.at("dim").get<int>(), p.at("modes").get<int>());
      return SpectralModel(label, DiscreteSpectrum(m.discrete()));
    }
    throw DomainError("catalog record '" + label + "': unknown variant '" + variant + "'");
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed catalog record: ") + e.what());
  }
}

/// A catalog document is a JSON array of records.
inline std::vector<SpectralModel> load_catalog(const nlohmann::json& doc) {
  if (!doc.is_array()) throw DomainError("catalog document must be a JSON array");
  std::vector<SpectralModel> out;
  for (const auto& rec : doc) out.push_back(model_from_json(rec));
  return out;
}

inline std::vector<SpectralModel> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open catalog file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("catalog file '" + path + "': " + e.what());
  }
  return load_catalog(doc);
}

struct TraceFit {
  double slope = 0.0;
  double lambda_claim = 0.0;
  double relative_error = 0.0;  // |slope - claim| / claim
  bool within_tolerance = false;
  std::size_t points = 0;
  double rms_residual = 0.0;
};

/// Least-squares slope of log tau against log s over [s_lo, s_hi].
inline TraceFit verify_trace_growth(const SpectralModel& model, double lambda_claim, double s_lo, double s_hi,
                                    int samples = 60, double tolerance = 0.1) {
  detail::require(lambda_claim > 0.0, "verify_trace_growth: lambda_claim must be positive");
  detail::require(s_lo > 0.0 && s_hi / s_lo >= 1e3 * (1.0 - 1e-12),
                  "verify_trace_growth: the s range must span at least 3 decades");
  std::vector<double> lx, ly;
  for (double s : logspace(s_lo, s_hi, samples)) {
    const double tau = model.trace_counting(s);
    if (tau > 0.0) {
      lx.push_back(std::log(s));
      ly.push_back(std::log(tau));
    }
  }
  if (lx.size() < 5)
    throw InsufficientDataError("verify_trace_growth: only " + std::to_string(lx.size()) +
                                " nonzero counting values in range");
  const LineFit f = fit_line(lx, ly);
  TraceFit r;
  r.slope = f.slope;
  r.lambda_claim = lambda_claim;
  r.relative_error = std::abs(f.slope - lambda_claim) / lambda_claim;
  r.within_tolerance = r.relative_error <= tolerance;
  r.points = lx.size();
  r.rms_residual = f.rms_residual;
  return r;
}

/// sup of |z| / dist(z, spectrum) over z on the rays arg z = +-phi and the
/// negative real axis; at least 1 since the ratio tends to 1 as |z| -> inf.
inline double verify_sectorial(const SpectralModel& model, double phi, int grid_points = 4000) {
  detail::require(model.is_discrete(), "verify_sectorial: needs a discrete spectrum");
  detail::require(phi > 0.0 && phi < std::numbers::pi / 2, "verify_sectorial: phi must lie in (0, pi/2)");
  detail::require(grid_points >= 100, "verify_sectorial: grid_points must be >= 100");
  const auto& ev = model.discrete().eigenvalues;

  auto ratio = [&](std::complex<double> z) {
    // Nearest eigenvalue to a point off the positive axis: the one nearest to Re z.
    const auto it = std::lower_bound(ev.begin(), ev.end(), z.real());
    double d = std::numeric_limits<double>::infinity();
    if (it != ev.end()) d = std::min(d, std::abs(z - *it));
    if (it != ev.begin()) d = std::min(d, std::abs(z - *std::prev(it)));
    if (!(d > 0.0)) throw DomainError("verify_sectorial: grid point coincides with an eigenvalue");
    return std::abs(z) / d;
  };

  SupremumOptions opt;
  opt.lo = ev.front() * 1e-4;
  opt.hi = ev.back() * 1e4;
  opt.points = grid_points;
  double best = 1.0;
  for (double angle : {phi, -phi, std::numbers::pi}) {
    const std::complex<double> dir = std::polar(1.0, angle);
    const auto r = log_grid_supremum([&](double rad) { return ratio(rad * dir); }, opt);
    best = std::max(best, r.value);
  }
  return best;
}

enum class Kernel { direct_ml, heat };

inline std::string_view to_string(Kernel k) { return k == Kernel::direct_ml ? "direct_ml" : "heat"; }

/// delta = 1/p - 1/q for 1 < p <= 2 <= q < inf with p < q.
inline double lebesgue_gap(double p, double q) {
  detail::require(p > 1.0 && p <= 2.0, "p must satisfy 1 < p <= 2, got " + std::to_string(p));
  detail::require(q >= 2.0 && std::isfinite(q), "q must satisfy 2 <= q < inf, got " + std::to_string(q));
  const double delta = 1.0 / p - 1.0 / q;
  detail::require(delta > 0.0, "1/p - 1/q must be positive (p = q = 2 is excluded)");
  return delta;
}

/// sup_s tau(s)^delta K(t, s) with K = E_alpha(-t^alpha s) or e^(-t s).
inline SupremumResult condition_supremum_delta(const SpectralModel& model, double delta, Alpha alpha, double t,
                                               Kernel kernel, const SupremumOptions& opt = {},
                                               const EvalPolicy& policy = {}) {
  detail::require(delta > 0.0 && std::isfinite(delta), "condition_supremum: delta must be positive");
  detail::require(t > 0.0 && std::isfinite(t), "condition_supremum: t must be positive");
  const double ta = std::pow(t, alpha.value());
  auto f = [&](double s) {
    const double tau = model.trace_counting(s);
    if (tau == 0.0) return 0.0;
    const double k = kernel == Kernel::heat ? std::exp(-t * s) : mittag_leffler_neg(alpha, ta * s, policy);
    return std::pow(tau, delta) * k;
  };
  return log_grid_supremum(f, opt);
}

inline SupremumResult condition_supremum(const SpectralModel& model, double p, double q, Alpha alpha, double t,
                                         Kernel kernel, const SupremumOptions& opt = {},
                                         const EvalPolicy& policy = {}) {
  return condition_supremum_delta(model, lebesgue_gap(p, q), alpha, t, kernel, opt, policy);
}

}  // namespace frac_heat
