#pragma once

// Spectral solver for the time-fractional heat equation
//   D_t^alpha w = Delta w,  w(0) = w0
// on a periodic box [-L/2, L/2)^dim. Each Fourier mode xi is multiplied by
// E_alpha(-t^alpha |xi|^2), evaluated directly or through the subordination
// integral over M_alpha.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <fftw3.h>

#include "json.hpp"

#include "frac_heat/decay_analysis.hpp"
#include "frac_heat/errors.hpp"
#include "frac_heat/io.hpp"
#include "frac_heat/numerics.hpp"
#include "frac_heat/special_functions.hpp"
#include "frac_heat/subordination.hpp"

namespace frac_heat {

struct PeriodicGrid {
  int dim = 1;
  double L = 200.0;
  int N = 4096;

  void validate() const {
    detail::require(dim == 1 || dim == 2, "PeriodicGrid: dim must be 1 or 2");
    detail::require(L > 0.0 && std::isfinite(L), "PeriodicGrid: L must be positive");
    detail::require(N >= 64 && (N & (N - 1)) == 0, "PeriodicGrid: N must be a power of two >= 64");
  }
  std::size_t size() const { return dim == 1 ? std::size_t(N) : std::size_t(N) * N; }
  double dx() const { return L / N; }
  double cell_volume() const { return std::pow(dx(), dim); }
  double coordinate(int i) const { return -0.5 * L + i * dx(); }
  /// Fourier mode index of the i-th transform slot, in [-N/2, N/2).
  int wavenumber(int i) const { return i < N / 2 ? i : i - N; }
  double xi_unit() const { return 2.0 * std::numbers::pi / L; }
  bool operator==(const PeriodicGrid&) const = default;
};

struct Field {
  PeriodicGrid grid;
  std::vector<double> samples;  // row-major

  Field() = default;
  Field(PeriodicGrid g, std::vector<double> s) : grid(g), samples(std::move(s)) { validate(); }
  void validate() const {
    grid.validate();
    detail::require(samples.size() == grid.size(), "Field: sample count does not match the grid");
    for (double v : samples)
      if (!std::isfinite(v)) throw DomainError("Field: non-finite sample");
  }
};

inline double max_norm(const Field& f) {
  double m = 0.0;
  for (double v : f.samples) m = std::max(m, std::abs(v));
  return m;
}

/// Riemann-sum L^p norm, 1 <= p < inf.
inline double lp_norm(const Field& f, double p) {
  detail::require(p >= 1.0 && std::isfinite(p), "lp_norm: p must lie in [1, inf)");
  double s = 0.0;
  for (double v : f.samples) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

inline double mean(const Field& f) {
  double s = 0.0;
  for (double v : f.samples) s += v;
  return s / static_cast<double>(f.samples.size());
}

/// exp(-|x|^2 / (2 sigma2)) centred in the box.
inline Field gaussian_field(const PeriodicGrid& g, double sigma2 = 0.1) {
  g.validate();
  detail::require(sigma2 > 0.0, "gaussian_field: sigma2 must be positive");
  std::vector<double> v(g.size());
  if (g.dim == 1) {
    for (int i = 0; i < g.N; ++i) v[i] = std::exp(-g.coordinate(i) * g.coordinate(i) / (2.0 * sigma2));
  } else {
    for (int i = 0; i < g.N; ++i)
      for (int j = 0; j < g.N; ++j) {
        const double r2 = g.coordinate(i) * g.coordinate(i) + g.coordinate(j) * g.coordinate(j);
        v[std::size_t(i) * g.N + j] = std::exp(-r2 / (2.0 * sigma2));
      }
  }
  return Field(g, std::move(v));
}

/// Sum of cos(2 pi k . x / L) terms, band-limited by construction.
inline Field cosine_field(const PeriodicGrid& g, const std::vector<std::pair<int, int>>& modes,
                          const std::vector<double>& amplitudes) {
  g.validate();
  detail::require(modes.size() == amplitudes.size(), "cosine_field: modes and amplitudes differ in length");
  std::vector<double> v(g.size(), 0.0);
  const double u = g.xi_unit();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const auto [k1, k2] = modes[m];
    if (g.dim == 1) {
      for (int i = 0; i < g.N; ++i) v[i] += amplitudes[m] * std::cos(u * k1 * g.coordinate(i));
    } else {
      for (int i = 0; i < g.N; ++i)
        for (int j = 0; j < g.N; ++j)
          v[std::size_t(i) * g.N + j] +=
              amplitudes[m] * std::cos(u * (k1 * g.coordinate(i) + k2 * g.coordinate(j)));
    }
  }
  return Field(g, std::move(v));
}

namespace detail {

// The FFTW planner is not thread-safe; executing a finished plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Real-to-complex transform pair on a grid with an owned complex buffer.
class SpectralBuffer {
 public:
  explicit SpectralBuffer(const PeriodicGrid& g) : grid_(g) {
    const std::size_t n = g.size();
    half_ = g.N / 2 + 1;
    complex_size_ = (g.dim == 1) ? half_ : std::size_t(g.N) * half_;
    real_ = fftw_alloc_real(n);
    spec_ = fftw_alloc_complex(complex_size_);
    if (!real_ || !spec_) throw Error("FFTW allocation failed");
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (g.dim == 1) {
      forward_ = fftw_plan_dft_r2c_1d(g.N, real_, spec_, FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r_1d(g.N, spec_, real_, FFTW_ESTIMATE);
    } else {
      forward_ = fftw_plan_dft_r2c_2d(g.N, g.N, real_, spec_, FFTW_ESTIMATE);
      backward_ = fftw_plan_dft_c2r_2d(g.N, g.N, spec_, real_, FFTW_ESTIMATE);
    }
    if (!forward_ || !backward_) throw Error("FFTW planning failed");
  }
  ~SpectralBuffer() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    if (forward_) fftw_destroy_plan(forward_);
    if (backward_) fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spec_);
  }
  SpectralBuffer(const SpectralBuffer&) = delete;
  SpectralBuffer& operator=(const SpectralBuffer&) = delete;

  void forward(const std::vector<double>& in) {
    std::memcpy(real_, in.data(), in.size() * sizeof(double));
    fftw_execute(forward_);
  }
  /// Inverse transform, normalised so that backward(forward(x)) = x.
  std::vector<double> backward() {
    fftw_execute(backward_);
    const double scale = 1.0 / static_cast<double>(grid_.size());
    std::vector<double> out(real_, real_ + grid_.size());
    for (double& v : out) v *= scale;
    for (double v : out)
      if (!std::isfinite(v)) throw Error("non-finite value after inverse transform");
    return out;
  }

  std::size_t complex_size() const { return complex_size_; }
  std::complex<double>& coef(std::size_t i) { return reinterpret_cast<std::complex<double>*>(spec_)[i]; }
  /// k1^2 + k2^2 of complex slot i (k2 only in 2D).
  long squared_wavenumber(std::size_t i) const {
    if (grid_.dim == 1) {
      const long k = static_cast<long>(i);
      return k * k;
    }
    const long k1 = grid_.wavenumber(static_cast<int>(i / half_));
    const long k2 = static_cast<long>(i % half_);
    return k1 * k1 + k2 * k2;
  }
  /// max(|k1|, |k2|) of complex slot i.
  long max_abs_wavenumber(std::size_t i) const {
    if (grid_.dim == 1) return static_cast<long>(i);
    return std::max<long>(std::abs(grid_.wavenumber(static_cast<int>(i / half_))), static_cast<long>(i % half_));
  }

 private:
  PeriodicGrid grid_;
  std::size_t half_ = 0, complex_size_ = 0;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr, backward_ = nullptr;
};

}  // namespace detail

struct SolverConfig {
  Alpha alpha{0.5};
  Representation representation = Representation::direct_ml;
  QuadratureSpec quad{};      // used by the subordination representation
  std::vector<double> time_points{};  // ascending; the largest sets the rule's x range
  EvalPolicy eval{};
  int workers = 1;  // threads for the multiplier stage; results do not depend on it

  void validate() const {
    detail::require(workers >= 1, "SolverConfig: workers must be >= 1");
    for (std::size_t i = 0; i < time_points.size(); ++i) {
      detail::require(time_points[i] >= 0.0 && std::isfinite(time_points[i]),
                      "SolverConfig: time points must be finite and >= 0");
      if (i > 0)
        detail::require(time_points[i] >= time_points[i - 1], "SolverConfig: time points must be sorted ascending");
    }
    quad.validate();
    eval.validate();
  }
};

/// Propagator multipliers for one grid, cached per distinct |k|^2. Builds the
/// subordination rule once for the largest time it will be asked about.
class Propagator {
 public:
  Propagator(const PeriodicGrid& grid, SolverConfig cfg) : grid_(grid), cfg_(std::move(cfg)) {
    grid.validate();
    cfg_.validate();
    const long kmax = grid.N / 2;
    max_k2_ = grid.dim == 1 ? kmax * kmax : 2 * kmax * kmax;
    if (cfg_.representation == Representation::subordination && !cfg_.alpha.is_one()) {
      const double t_max = cfg_.time_points.empty() ? 1.0 : cfg_.time_points.back();
      const double x_max = std::pow(t_max, cfg_.alpha.value()) * grid.xi_unit() * grid.xi_unit() * max_k2_;
      QuadratureSpec q = cfg_.quad;
      q.eval = cfg_.eval;
      rule_.emplace(make_subordination_rule(cfg_.alpha, q, std::max(x_max, 1e-300)));
    }
  }

  const SolverConfig& config() const { return cfg_; }
  bool reliable() const { return !rule_ || rule_->reliable(); }

  /// Multiplier for every distinct k^2 present on the grid at time t.
  std::map<long, double> multipliers(double t, const std::vector<long>& k2_values) const {
    detail::require(t >= 0.0 && std::isfinite(t), "spectral_solve: t must be finite and >= 0");
    std::vector<double> out(k2_values.size());
    const double ta = std::pow(t, cfg_.alpha.value());
    const double u2 = grid_.xi_unit() * grid_.xi_unit();
    if (rule_) detail::require(ta * u2 * max_k2_ <= rule_->x_max() * (1.0 + 1e-12),
                               "spectral_solve: t beyond the largest configured time point");
    auto work = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double x = ta * u2 * static_cast<double>(k2_values[i]);
        if (x == 0.0) {
          out[i] = 1.0;
        } else if (cfg_.alpha.is_one()) {
          out[i] = std::exp(-x);
        } else if (rule_) {
          out[i] = rule_->power_exp(0.0, x).value;
        } else {
          out[i] = mittag_leffler_neg(cfg_.alpha, x, cfg_.eval);
        }
      }
    };
    // Each worker fills a disjoint slice, so the result is independent of the split.
    const std::size_t n = k2_values.size();
    const std::size_t w = std::min<std::size_t>(cfg_.workers, std::max<std::size_t>(1, n));
    if (w <= 1) {
      work(0, n);
    } else {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(w);
      for (std::size_t k = 0; k < w; ++k)
        threads.emplace_back([&, k] {
          try {
            work(n * k / w, n * (k + 1) / w);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        });
      for (auto& th : threads) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    std::map<long, double> m;
    for (std::size_t i = 0; i < n; ++i) m.emplace(k2_values[i], out[i]);
    return m;
  }

  Field solve(const Field& w0, double t) const {
    w0.validate();
    detail::require(w0.grid == grid_, "spectral_solve: field grid differs from the propagator grid");
    detail::SpectralBuffer buf(grid_);
    buf.forward(w0.samples);
    std::vector<long> k2;
    for (std::size_t i = 0; i < buf.complex_size(); ++i) k2.push_back(buf.squared_wavenumber(i));
    std::sort(k2.begin(), k2.end());
    k2.erase(std::unique(k2.begin(), k2.end()), k2.end());
    const auto mult = multipliers(t, k2);
    for (std::size_t i = 0; i < buf.complex_size(); ++i) buf.coef(i) *= mult.at(buf.squared_wavenumber(i));
    return Field(grid_, buf.backward());
  }

 private:
  PeriodicGrid grid_;
  SolverConfig cfg_;
  long max_k2_ = 0;
  std::optional<SubordinationRule> rule_;
};

/// w(t) = E_alpha(-t^alpha L) w0 with L = -Laplacian on the periodic box.
inline Field spectral_solve(const Field& w0, const SolverConfig& cfg, double t) {
  SolverConfig c = cfg;
  if (c.time_points.empty() || c.time_points.back() < t) c.time_points.push_back(t);
  return Propagator(w0.grid, c).solve(w0, t);
}

/// Multiply by |xi|^2 in Fourier space (the periodic -Laplacian).
inline Field apply_laplacian(const Field& f) {
  detail::SpectralBuffer buf(f.grid);
  buf.forward(f.samples);
  const double u2 = f.grid.xi_unit() * f.grid.xi_unit();
  for (std::size_t i = 0; i < buf.complex_size(); ++i) buf.coef(i) *= u2 * static_cast<double>(buf.squared_wavenumber(i));
  return Field(f.grid, buf.backward());
}

/// max |L P w0 - P L w0| / ||w0||_inf for the propagator P at time t.
inline double commutation_check(const Field& w0, const SolverConfig& cfg, double t) {
  w0.validate();
  {
    detail::SpectralBuffer buf(w0.grid);
    buf.forward(w0.samples);
    double top = 0.0, all = 0.0;
    for (std::size_t i = 0; i < buf.complex_size(); ++i) {
      const double a = std::abs(buf.coef(i));
      all = std::max(all, a);
      if (3 * buf.max_abs_wavenumber(i) > w0.grid.N) top = std::max(top, a);
    }
    if (top > 1e-10 * all)
      throw DomainError("commutation_check: field is not band-limited (top third of the spectrum is nonzero)");
  }
  SolverConfig c = cfg;
  if (c.time_points.empty() || c.time_points.back() < t) c.time_points.push_back(t);
  const Propagator prop(w0.grid, c);
  const Field a = apply_laplacian(prop.solve(w0, t));
  const Field b = prop.solve(apply_laplacian(w0), t);
  double dev = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) dev = std::max(dev, std::abs(a.samples[i] - b.samples[i]));
  const double scale = max_norm(w0);
  return scale > 0.0 ? dev / scale : dev;
}

struct CaputoResidual {
  double dt = 0.0;
  double max_residual = 0.0;     // over all steps t_j > 0
  double window_residual = 0.0;  // over steps with t_j >= window_start
  double window_start = 1.0;
};

/// L1 discretisation of the Caputo derivative applied to u(t) = E_alpha(-mu t^alpha)
/// on t_j = j dt, j <= steps, and the residual D u_j + mu u_j. The first steps
/// carry an O(1) defect from the t^alpha behaviour at 0, so the residual is
/// also reported on t >= window_start, where the scheme shows its order.
/// alpha = 1 uses backward differences.
inline CaputoResidual caputo_residual_l1(Alpha alpha, double mu, double T, int steps, double window_start = 1.0,
                                         const EvalPolicy& policy = {}) {
  detail::require(mu >= 0.0 && std::isfinite(mu), "caputo_residual_l1: mu must be >= 0");
  detail::require(T >= 1.0 && std::isfinite(T), "caputo_residual_l1: T must be >= 1");
  detail::require(steps >= 2, "caputo_residual_l1: need at least 2 steps");
  detail::require(window_start >= 0.0 && window_start <= T, "caputo_residual_l1: window start must lie in [0, T]");
  const double a = alpha.value();
  const double dt = T / steps;
  std::vector<double> u(steps + 1);
  for (int j = 0; j <= steps; ++j) u[j] = mittag_leffler_neg(alpha, mu * std::pow(j * dt, a), policy);

  CaputoResidual r;
  r.dt = dt;
  r.window_start = window_start;
  std::vector<double> b(steps);
  for (int k = 0; k < steps; ++k) b[k] = std::pow(k + 1.0, 1.0 - a) - std::pow(double(k), 1.0 - a);
  const double pre = alpha.is_one() ? 1.0 / dt : std::pow(dt, -a) / std::tgamma(2.0 - a);
  for (int j = 1; j <= steps; ++j) {
    double d = 0.0;
    if (alpha.is_one()) {
      d = u[j] - u[j - 1];
    } else {
      for (int k = 0; k < j; ++k) d += b[k] * (u[j - k] - u[j - k - 1]);
    }
    const double res = std::abs(pre * d + mu * u[j]);
    r.max_residual = std::max(r.max_residual, res);
    if (j * dt >= window_start * (1.0 - 1e-12)) r.window_residual = std::max(r.window_residual, res);
  }
  return r;
}

struct RefinementStudy {
  std::vector<CaputoResidual> levels;
  std::vector<double> orders;         // log2 ratio of successive windowed residuals
  std::vector<double> orders_full;    // same for the full maximum
  double min_order = 0.0;
};

/// Residuals for steps, 2 steps, 4 steps, ... (dt halving).
inline RefinementStudy caputo_refinement(Alpha alpha, double mu, double T, int base_steps, int halvings,
                                         double window_start = 1.0, const EvalPolicy& policy = {}) {
  detail::require(halvings >= 1, "caputo_refinement: need at least one halving");
  RefinementStudy s;
  for (int h = 0; h <= halvings; ++h)
    s.levels.push_back(caputo_residual_l1(alpha, mu, T, base_steps << h, window_start, policy));
  s.min_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < s.levels.size(); ++i) {
    s.orders.push_back(std::log2(s.levels[i - 1].window_residual / s.levels[i].window_residual));
    s.orders_full.push_back(std::log2(s.levels[i - 1].max_residual / s.levels[i].max_residual));
    s.min_order = std::min(s.min_order, s.orders.back());
  }
  return s;
}

struct NormRow {
  double t = 0.0;
  double norm_p0 = 0.0;      // ||w0||_p
  double norm_q = 0.0;       // ||w(t)||_q
  double ratio = 0.0;        // norm_q / norm_p0
  double bound_check = 0.0;  // t^(alpha lambda delta) * ratio, bounded under the decay estimate
  double boundary_mass = 0.0;  // share of the L^1 mass within 0.05 L of the box edge
};

struct DecayMeasurement {
  std::vector<NormRow> rows;  // rows inside the wraparound-free window
  std::size_t truncated = 0;  // times dropped for wraparound
  double slope = 0.0;         // log-log slope of ratio against t
  double lambda = 0.0;        // dim / 2
  double delta = 0.0;         // 1/p - 1/q
  bool non_increasing = true; // bound_check non-increasing over the rows with t > 0
  bool reliable = true;       // multiplier quadrature passed its checks
  std::vector<std::string> warnings;
};

inline constexpr double kWraparoundTolerance = 1e-6;

/// Share of sum |w| carried by points with some |x_i| > 0.45 L.
inline double boundary_mass(const Field& f) {
  const auto& g = f.grid;
  const double edge = 0.45 * g.L;
  double total = 0.0, outer = 0.0;
  for (std::size_t idx = 0; idx < f.samples.size(); ++idx) {
    const double v = std::abs(f.samples[idx]);
    total += v;
    bool out = false;
    if (g.dim == 1) {
      out = std::abs(g.coordinate(static_cast<int>(idx))) > edge;
    } else {
      out = std::abs(g.coordinate(static_cast<int>(idx / g.N))) > edge ||
            std::abs(g.coordinate(static_cast<int>(idx % g.N))) > edge;
    }
    if (out) outer += v;
  }
  return total > 0.0 ? outer / total : 0.0;
}

/// ||w(t)||_q / ||w0||_p over t_list with the wraparound guard applied.
/// `on_field` sees every accepted solution. Rows with t = 0 are kept in the
/// table but take no part in the fit or the monotonicity check.
inline DecayMeasurement decay_measurement(const Field& w0, const SolverConfig& cfg, double p, double q,
                                          const std::vector<double>& t_list, double rel_tol = 1e-9,
                                          const std::function<void(double, const Field&)>& on_field = {}) {
  detail::require(p > 1.0 && p <= 2.0 && q >= 2.0 && std::isfinite(q) && p < q,
                  "decay_measurement: need 1 < p <= 2 <= q < inf with p < q");
  detail::require(!t_list.empty(), "decay_measurement: empty time list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    detail::require(t_list[i] >= 0.0 && std::isfinite(t_list[i]), "decay_measurement: times must be finite and >= 0");
    if (i > 0) detail::require(t_list[i] > t_list[i - 1], "decay_measurement: times must increase");
  }
  SolverConfig c = cfg;
  c.time_points = t_list;
  const Propagator prop(w0.grid, c);
  DecayMeasurement m;
  m.reliable = prop.reliable();
  m.lambda = 0.5 * w0.grid.dim;
  m.delta = 1.0 / p - 1.0 / q;
  const double a = cfg.alpha.value();
  const double np = lp_norm(w0, p);
  for (double t : t_list) {
    const Field w = prop.solve(w0, t);
    const double bm = boundary_mass(w);
    if (bm > kWraparoundTolerance) {
      ++m.truncated;
      m.warnings.push_back("wraparound at t=" + std::to_string(t) + " (boundary mass " + std::to_string(bm) +
                           "); window truncated");
      break;
    }
    NormRow row;
    row.t = t;
    row.norm_p0 = np;
    row.norm_q = lp_norm(w, q);
    row.ratio = row.norm_q / np;
    row.bound_check = std::pow(t, a * m.lambda * m.delta) * row.ratio;
    row.boundary_mass = bm;
    m.rows.push_back(row);
    if (on_field) on_field(t, w);
  }
  m.truncated = t_list.size() - m.rows.size();
  std::vector<double> lx, ly, bc;
  for (const auto& r : m.rows) {
    if (r.t == 0.0) continue;
    lx.push_back(std::log(r.t));
    ly.push_back(std::log(r.ratio));
    bc.push_back(r.bound_check);
  }
  for (std::size_t i = 1; i < bc.size(); ++i)
    if (bc[i] > bc[i - 1] * (1.0 + rel_tol)) m.non_increasing = false;
  if (lx.size() >= 2) m.slope = fit_line(lx, ly).slope;
  return m;
}

/// Raw samples to `path` (row-major float64, native byte order) and the
/// sidecar `path`.json with {dim, L, N, time}.
inline void write_field(const std::string& path, const Field& f, double time) {
  f.validate();
  atomic_write(path, std::string_view(reinterpret_cast<const char*>(f.samples.data()),
                                      f.samples.size() * sizeof(double)));
  const nlohmann::json side{{"dim", f.grid.dim}, {"L", f.grid.L}, {"N", f.grid.N}, {"time", time}};
  atomic_write(path + ".json", side.dump(2) + "\n");
}

struct StoredField {
  Field field;
  double time = 0.0;
};

inline StoredField read_field(const std::string& path) {
  nlohmann::json side;
  try {
    side = nlohmann::json::parse(read_file(path + ".json"));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("field sidecar '" + path + ".json': " + e.what());
  }
  PeriodicGrid g;
  double time = 0.0;
  try {
    g.dim = side.at("dim").get<int>();
    g.L = side.at("L").get<double>();
    g.N = side.at("N").get<int>();
    time = side.at("time").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("field sidecar '" + path + ".json': " + e.what());
  }
  g.validate();
  const std::string raw = read_file(path);
  if (raw.size() != g.size() * sizeof(double))
    throw DomainError("field file '" + path + "' has " + std::to_string(raw.size()) + " bytes, expected " +
                      std::to_string(g.size() * sizeof(double)));
  std::vector<double> v(g.size());
  std::memcpy(v.data(), raw.data(), raw.size());
  return {Field(g, std::move(v)), time};
}

}  // namespace frac_heat
