#pragma once

// Command-line front end. run_cli() parses flags (and an optional flat
// key=value config file that flags override), validates them for the chosen
// command, dispatches to the library and writes a report.
//
// Exit codes: 0 success, 1 internal or I/O error, 2 invalid input,
// 3 numerical quality failure (unreliable values or a failed check).

#include <charconv>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "frac_heat/decay_analysis.hpp"
#include "frac_heat/errors.hpp"
#include "frac_heat/io.hpp"
#include "frac_heat/numerics.hpp"
#include "frac_heat/pde_solver.hpp"
#include "frac_heat/report.hpp"
#include "frac_heat/special_functions.hpp"
#include "frac_heat/subordination.hpp"

namespace frac_heat::cli {

enum ExitCode : int { ok = 0, internal = 1, validation = 2, quality = 3 };

/// Raised by commands that produced output but failed a numerical check.
class QualityFailure : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"eval-ml",   "eval-wright", "verify-subordination", "verify-moments",
                                          "verify-special", "decay-sup", "decay-compare", "solve", "report"};
  return c;
}

// Keys each command accepts, besides out, format and config.
inline const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> m{
      {"eval-ml", {"alpha", "x", "tol"}},
      {"eval-wright", {"alpha", "s"}},
      {"verify-subordination", {"alpha", "x", "tol"}},
      {"verify-moments", {"alpha", "gamma", "tol"}},
      {"verify-special", {"alpha", "tol"}},
      {"decay-sup", {"alpha", "lambda", "p", "q", "t-min", "t-max", "t-points", "rep"}},
      {"decay-compare", {"alpha", "lambda", "eps"}},
      {"solve",
       {"alpha", "rep", "dim", "L", "N", "t", "t-min", "t-max", "t-points", "p", "q", "sigma2", "workers", "field-out",
        "norm-table"}},
      {"report", {"in"}},
  };
  return m;
}

/// Parameters as given on the command line or in the config file.
class Params {
 public:
  explicit Params(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

  bool has(const std::string& k) const { return raw_.count(k) > 0; }
  const std::map<std::string, std::string>& raw() const { return raw_; }

  std::string text(const std::string& k, const std::string& def = "") const {
    const auto it = raw_.find(k);
    return it == raw_.end() ? def : it->second;
  }

  double real(const std::string& k, double def) const { return has(k) ? parse_real(k, raw_.at(k)) : def; }
  double real(const std::string& k) const {
    if (!has(k)) throw DomainError("missing required --" + k);
    return parse_real(k, raw_.at(k));
  }
  int integer(const std::string& k, int def) const {
    if (!has(k)) return def;
    const std::string& s = raw_.at(k);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError("--" + k + ": not an integer: '" + s + "'");
    return v;
  }
  std::vector<double> reals(const std::string& k, std::vector<double> def = {}) const {
    if (!has(k)) return def;
    std::vector<double> out;
    for (const auto& item : split(raw_.at(k))) out.push_back(parse_real(k, item));
    if (out.empty()) throw DomainError("--" + k + ": empty list");
    return out;
  }
  std::vector<std::string> texts(const std::string& k) const { return has(k) ? split(raw_.at(k)) : std::vector<std::string>{}; }

  static double parse_real(const std::string& k, const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      throw DomainError("--" + k + ": not a finite number: '" + s + "'");
    return v;
  }

 private:
  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',' || c == '\n') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (c != ' ' && c != '"') {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
  }

  std::map<std::string, std::string> raw_;
};

struct RunConfig {
  std::string command;
  Params params{{}};
  std::string output_path;  // empty: stdout
  ReportFormat format = ReportFormat::json;
};

struct Outcome {
  std::vector<Record> records;
  std::vector<std::string> quality_issues;
  std::vector<std::string> warnings;
};

namespace detail {

inline EvalPolicy policy(const Params& p, bool tol_sets_series) {
  EvalPolicy e = EvalPolicy::from_environment();
  if (tol_sets_series && p.has("tol")) e.series_tol = p.real("tol");
  e.validate();
  return e;
}

inline QuadratureSpec quadrature(const EvalPolicy& e) {
  QuadratureSpec q;
  q.eval = e;
  q.validate();
  return q;
}

inline std::vector<double> time_grid(const Params& p, double t_min, double t_max, int points) {
  if (p.has("t")) return p.reals("t");
  const double lo = p.real("t-min", t_min), hi = p.real("t-max", t_max);
  const int n = p.integer("t-points", points);
  if (!(lo > 0.0 && hi > lo)) throw DomainError("need 0 < t-min < t-max");
  if (n < 2) throw DomainError("t-points must be >= 2");
  return logspace(lo, hi, n);
}

inline std::vector<double> alphas(const Params& p, std::vector<double> def) { return p.reals("alpha", std::move(def)); }

inline void cmd_eval_ml(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, true);
  const Alpha a(p.real("alpha"));
  for (double x : p.reals("x", {}))
    if (!(x >= 0.0)) throw DomainError("--x must be >= 0");
  if (!p.has("x")) throw DomainError("missing required --x");
  for (double x : p.reals("x")) {
    const MlValue v = mittag_leffler_neg_eval(a, x, e);
    Record r;
    r.command = "eval-ml";
    r.alpha = a.value();
    r.add("x", x, "input").add("E", v.value, std::string(to_string(v.method)));
    r.add("error_estimate", v.error_estimate, std::string(to_string(v.method)));
    r.info["precision"] = std::string(to_string(e.working_precision));
    out.records.push_back(std::move(r));
  }
}

inline void cmd_eval_wright(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  const Alpha a(p.real("alpha"));
  a.require_fractional("eval-wright");
  if (!p.has("s")) throw DomainError("missing required --s");
  const auto ss = p.reals("s");
  for (double s : ss)
    if (!(s >= 0.0)) throw DomainError("--s must be >= 0");
  for (double s : ss) {
    const WrightValue v = wright_m(a, s, e);
    Record r;
    r.command = "eval-wright";
    r.alpha = a.value();
    r.add("s", s, "input").add("M", v.value, std::string(to_string(v.method)));
    r.add("amplification", v.cancellation_ratio, std::string(to_string(v.method)));
    r.reliable = v.reliable;
    if (!v.reliable) out.quality_issues.push_back("M(" + std::to_string(s) + ") unreliable");
    out.records.push_back(std::move(r));
  }
}

inline void cmd_verify_subordination(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  const QuadratureSpec quad = quadrature(e);
  const double tol = p.real("tol", 1e-8);
  if (!(tol > 0.0)) throw DomainError("--tol must be positive");
  const auto xs = p.reals("x", logspace(1e-3, 1e2, 30));
  for (double x : xs)
    if (!(x >= 0.0)) throw DomainError("--x must be >= 0");
  for (double av : alphas(p, {0.25, 0.5, 0.75})) {
    const Alpha a(av);
    a.require_fractional("verify-subordination");
    for (double x : xs) {
      const QuadratureResult q = subordinate_scalar(a, x, quad);
      const MlValue ml = mittag_leffler_neg_eval(a, x, e);
      const double err = std::abs(q.value - ml.value);
      Record r;
      r.command = "verify-subordination";
      r.alpha = av;
      r.add("x", x, "input").add("integral", q.value, "quadrature");
      r.add("mittag_leffler", ml.value, std::string(to_string(ml.method)));
      r.add("abs_error", err, "quadrature").add("error_estimate", q.error_estimate, "quadrature");
      r.reliable = q.reliable && err <= tol;
      if (!r.reliable)
        out.quality_issues.push_back("alpha=" + std::to_string(av) + " x=" + std::to_string(x) + " error " +
                                     std::to_string(err));
      out.records.push_back(std::move(r));
    }
  }
}

inline void cmd_verify_moments(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  const QuadratureSpec quad = quadrature(e);
  const double tol = p.real("tol", 1e-6);
  if (!(tol > 0.0)) throw DomainError("--tol must be positive");
  const auto gammas = p.reals("gamma", {-0.5, 0.0, 0.5, 1.0, 2.0, 3.0});
  for (double g : gammas)
    if (!(g > -1.0)) throw DomainError("--gamma must exceed -1");
  for (double av : alphas(p, {0.25, 0.5, 0.75})) {
    const Alpha a(av);
    a.require_fractional("verify-moments");
    for (double g : gammas) {
      const QuadratureResult q = wright_moment(a, g, quad);
      const double exact = wright_moment_closed_form(a, g);
      const double rel = std::abs(q.value - exact) / std::abs(exact);
      Record r;
      r.command = "verify-moments";
      r.alpha = av;
      r.add("gamma", g, "input").add("moment", q.value, "quadrature").add("closed_form", exact, "closed_form");
      r.add("rel_error", rel, "quadrature");
      r.reliable = q.reliable && rel <= tol;
      if (!r.reliable)
        out.quality_issues.push_back("alpha=" + std::to_string(av) + " gamma=" + std::to_string(g) +
                                     " relative error " + std::to_string(rel));
      out.records.push_back(std::move(r));
    }
  }
}

inline void cmd_verify_special(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  const double tol = p.real("tol", 1e-10);
  if (!(tol > 0.0)) throw DomainError("--tol must be positive");
  auto check = [&](double alpha, const std::string& name, double value, const std::string& method, bool pass) {
    Record r;
    r.command = "verify-special";
    r.alpha = alpha;
    r.add(name, value, method);
    r.info["check"] = name;
    r.info["pass"] = pass;
    r.reliable = pass;
    if (!pass) out.quality_issues.push_back(name + " failed at alpha=" + std::to_string(alpha));
    out.records.push_back(std::move(r));
  };
  for (double av : alphas(p, {0.25, 0.5, 0.75})) {
    const Alpha a(av);
    a.require_fractional("verify-special");
    const double cm = std::min(monotonicity_defect(a, 0.0, 0.05, 200, 4, e), monotonicity_defect(a, 0.0, 0.5, 200, 4, e));
    check(av, "monotonicity_defect", cm, "finite_difference", cm >= -1e-9);
    double dev = 0.0;
    for (double x : logspace(1e-2, 1e2, 25))
      dev = std::max(dev, std::abs(mittag_leffler_contour(a, x, e) - mittag_leffler_neg(a, x, e)));
    check(av, "contour_deviation", dev, "contour", dev <= std::max(tol, 10 * e.series_tol));
    const double c = uniform_bound_constant(a, 1e6, 2000, e);
    check(av, "uniform_bound_constant", c, "grid_search", std::isfinite(c) && c >= 1.0);
  }
  double dev1 = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const double x = 0.1 * i;
    dev1 = std::max(dev1, std::abs(mittag_leffler_neg(Alpha(1.0), x, e) - std::exp(-x)));
  }
  check(1.0, "exponential_reduction", dev1, "exponential", dev1 <= 1e-12);
  double devw = 0.0;
  for (int i = 0; i <= 160; ++i) {
    const double s = 0.05 * i;
    const WrightValue w = wright_m(Alpha(0.5), s, e);
    devw = std::max(devw, w.reliable ? std::abs(w.value - std::exp(-s * s / 4) / std::sqrt(std::numbers::pi))
                                     : std::numeric_limits<double>::infinity());
  }
  check(0.5, "wright_gaussian_identity", devw, "series", devw <= tol);
}

inline void cmd_decay_sup(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  const QuadratureSpec quad = quadrature(e);
  const Alpha a(p.real("alpha", 0.5));
  const double lambda = p.real("lambda", 1.0);
  const double pp = p.real("p", 4.0 / 3.0), qq = p.real("q", 4.0);
  const Representation rep = parse_representation(p.text("rep", "direct"));
  DecayExperiment ex(a, lambda, pp, qq, rep, time_grid(p, 10.0, 1e4, 13));
  ex.run(quad);
  const std::string method = rep == Representation::direct_ml ? "grid_search" : "closed_form*quadrature";
  for (std::size_t i = 0; i < ex.t_grid().size(); ++i) {
    Record r;
    r.command = "decay-sup";
    r.alpha = a.value();
    r.lambda = lambda;
    r.p = pp;
    r.q = qq;
    r.t = ex.t_grid()[i];
    r.add("bound", ex.values()[i], method);
    r.info["representation"] = std::string(to_string(rep));
    out.records.push_back(std::move(r));
  }
  Record s;
  s.command = "decay-sup";
  s.alpha = a.value();
  s.lambda = lambda;
  s.p = pp;
  s.q = qq;
  s.add("delta", ex.delta(), "closed_form").add("slope", ex.fitted_exponent(), "least_squares");
  s.add("expected_slope", -a.value() * ex.beta(), "closed_form").add("constant", ex.constant_estimate(), method);
  s.info["representation"] = std::string(to_string(rep));
  out.records.push_back(std::move(s));
}

inline void cmd_decay_compare(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  const QuadratureSpec quad = quadrature(e);
  const Alpha a(p.real("alpha", 0.5));
  const double lambda = p.real("lambda", 1.0);
  const ComparisonReport rep = compare_representations(a, lambda, p.reals("eps", {0.2, 0.1, 0.05, 0.0}), quad);
  for (const auto& row : rep.rows) {
    for (Representation which : {Representation::direct_ml, Representation::subordination}) {
      Record r;
      r.command = "decay-compare";
      r.alpha = a.value();
      r.lambda = lambda;
      const bool direct = which == Representation::direct_ml;
      r.add("eps", row.eps, "input").add("delta", row.delta, "closed_form");
      r.add("constant", direct ? row.direct_constant : row.subordination_constant,
            direct ? "grid_search" : (row.subordination_divergent ? "closed_form" : "quadrature"));
      r.add("slope", -a.value() * row.beta, "closed_form");
      r.info["representation"] = std::string(to_string(which));
      r.info["verdict"] = direct ? (row.direct_finite ? "finite" : "divergent")
                                 : (row.subordination_divergent ? "divergent" : "finite");
      out.records.push_back(std::move(r));
    }
  }
  Record s;
  s.command = "decay-compare";
  s.alpha = a.value();
  s.lambda = lambda;
  s.add("uniform_bound", rep.uniform_bound, "grid_search");
  s.add("direct_max_relative_change", rep.direct_max_relative_change, "grid_search");
  s.info["subordination_increasing"] = rep.subordination_increasing;
  s.info["verdict"] = rep.verdict;
  out.records.push_back(std::move(s));
}

inline void cmd_solve(const Params& p, Outcome& out) {
  const EvalPolicy e = policy(p, false);
  PeriodicGrid g;
  g.dim = p.integer("dim", 1);
  g.L = p.real("L", 200.0);
  g.N = p.integer("N", g.dim == 1 ? 4096 : 256);
  g.validate();
  SolverConfig cfg;
  cfg.alpha = Alpha(p.real("alpha", 0.5));
  cfg.representation = parse_representation(p.text("rep", "direct"));
  cfg.quad = quadrature(e);
  cfg.eval = e;
  cfg.workers = p.integer("workers", 1);
  const double pp = p.real("p", 4.0 / 3.0), qq = p.real("q", 4.0);
  const auto ts = time_grid(p, 1.0, 100.0, 9);
  const Field w0 = gaussian_field(g, p.real("sigma2", 0.1));
  const std::string prefix = p.text("field-out");
  int index = 0;
  auto save = [&](double t, const Field& w) {
    if (!prefix.empty()) write_field(prefix + "_" + std::to_string(index) + ".bin", w, t);
    ++index;
  };
  const DecayMeasurement m = decay_measurement(w0, cfg, pp, qq, ts, 1e-9, save);
  const std::string method = std::string("spectral_") + std::string(to_string(cfg.representation));
  for (const auto& row : m.rows) {
    Record r;
    r.command = "solve";
    r.alpha = cfg.alpha.value();
    r.lambda = m.lambda;
    r.p = pp;
    r.q = qq;
    r.t = row.t;
    r.add("norm_p0", row.norm_p0, method).add("norm_q", row.norm_q, method).add("ratio", row.ratio, method);
    r.add("bound_check", row.bound_check, method).add("boundary_mass", row.boundary_mass, method);
    r.reliable = m.reliable;
    out.records.push_back(std::move(r));
  }
  Record s;
  s.command = "solve";
  s.alpha = cfg.alpha.value();
  s.lambda = m.lambda;
  s.p = pp;
  s.q = qq;
  s.add("delta", m.delta, "closed_form").add("slope", m.slope, "least_squares");
  s.info["non_increasing"] = m.non_increasing;
  s.info["truncated_times"] = m.truncated;
  s.info["grid"] = {{"dim", g.dim}, {"L", g.L}, {"N", g.N}};
  s.reliable = m.reliable;
  out.records.push_back(std::move(s));
  for (const auto& w : m.warnings) out.warnings.push_back(w);
  if (!m.reliable) out.quality_issues.push_back("subordination quadrature flagged unreliable");
  if (p.has("norm-table")) {
    std::string csv = "t,norm_p0,norm_q,ratio,bound_check\n";
    for (const auto& row : m.rows)
      csv += frac_heat::detail::csv_number(row.t) + "," + frac_heat::detail::csv_number(row.norm_p0) + "," +
             frac_heat::detail::csv_number(row.norm_q) + "," + frac_heat::detail::csv_number(row.ratio) + "," +
             frac_heat::detail::csv_number(row.bound_check) + "\n";
    atomic_write(p.text("norm-table"), csv);
  }
}

inline void cmd_report(const Params& p, Outcome& out) {
  const auto inputs = p.texts("in");
  if (inputs.empty()) throw DomainError("report: give one or more --in report files");
  for (const auto& path : inputs) {
    std::string text;
    try {
      text = read_file(path);
    } catch (const IoError& e) {
      throw DomainError(e.what());
    }
    for (auto& r : parse_report(text)) {
      if (!r.reliable) out.quality_issues.push_back("input record from " + path + " is flagged unreliable");
      out.records.push_back(std::move(r));
    }
  }
}

inline std::string json_escape(const std::string& s) { return nlohmann::json(s).dump(); }

inline void error_record(std::ostream& err, int code, const std::string& kind, const std::string& command,
                         const std::string& message) {
  nlohmann::ordered_json j;
  j["level"] = code == ok ? "warning" : "error";
  j["exit_code"] = code;
  j["kind"] = kind;
  j["command"] = command;
  j["message"] = message;
  err << j.dump() << "\n";
}

}  // namespace detail

/// Dispatch a validated configuration. Returns the records without writing.
inline Outcome execute(const RunConfig& cfg) {
  const auto it = allowed_keys().find(cfg.command);
  if (it == allowed_keys().end()) throw DomainError("unknown command '" + cfg.command + "'");
  for (const auto& [k, v] : cfg.params.raw())
    if (!it->second.count(k)) throw DomainError("option --" + k + " is not accepted by " + cfg.command);
  Outcome out;
  const Params& p = cfg.params;
  if (cfg.command == "eval-ml") detail::cmd_eval_ml(p, out);
  else if (cfg.command == "eval-wright") detail::cmd_eval_wright(p, out);
  else if (cfg.command == "verify-subordination") detail::cmd_verify_subordination(p, out);
  else if (cfg.command == "verify-moments") detail::cmd_verify_moments(p, out);
  else if (cfg.command == "verify-special") detail::cmd_verify_special(p, out);
  else if (cfg.command == "decay-sup") detail::cmd_decay_sup(p, out);
  else if (cfg.command == "decay-compare") detail::cmd_decay_compare(p, out);
  else if (cfg.command == "solve") detail::cmd_solve(p, out);
  else detail::cmd_report(p, out);
  return out;
}

/// Execute, then write the report to cfg.output_path (atomically) or `out`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Outcome o = execute(cfg);
    const std::string doc = emit_report(o.records, cfg.format);
    if (cfg.output_path.empty()) out << doc;
    else atomic_write(cfg.output_path, doc);
    for (const auto& w : o.warnings) detail::error_record(err, ok, "warning", cfg.command, w);
    if (!o.quality_issues.empty()) {
      std::string msg = std::to_string(o.quality_issues.size()) + " quality issue(s); first: " + o.quality_issues.front();
      detail::error_record(err, quality, "numerical_quality", cfg.command, msg);
      return quality;
    }
    return ok;
  } catch (const IoError& e) {
    detail::error_record(err, internal, "io", cfg.command, e.what());
    return internal;
  } catch (const DomainError& e) {
    detail::error_record(err, validation, "validation", cfg.command, e.what());
    return validation;
  } catch (const InsufficientDataError& e) {
    detail::error_record(err, validation, "validation", cfg.command, e.what());
    return validation;
  } catch (const ConvergenceError& e) {
    detail::error_record(err, quality, "convergence", cfg.command, e.what());
    return quality;
  } catch (const OverflowError& e) {
    detail::error_record(err, quality, "overflow", cfg.command, e.what());
    return quality;
  } catch (const std::exception& e) {
    detail::error_record(err, internal, "internal", cfg.command, e.what());
    return internal;
  }
}

inline const std::vector<std::pair<std::string, std::string>>& flag_help() {
  static const std::vector<std::pair<std::string, std::string>> f{
      {"alpha", "fractional order(s), 0 < alpha <= 1; comma list where a command sweeps"},
      {"x", "argument(s) x >= 0 of E_alpha(-x)"},
      {"s", "argument(s) s >= 0 of M_alpha(s)"},
      {"gamma", "moment order(s) > -1"},
      {"lambda", "trace growth exponent"},
      {"p", "source Lebesgue exponent, 1 < p <= 2"},
      {"q", "target Lebesgue exponent, 2 <= q < inf"},
      {"t", "time(s), comma list"},
      {"t-min", "first time of a log-spaced grid"},
      {"t-max", "last time of a log-spaced grid"},
      {"t-points", "number of grid times"},
      {"rep", "propagator representation: direct | subordination"},
      {"dim", "space dimension of the periodic box: 1 | 2"},
      {"L", "box length"},
      {"N", "grid points per dimension (power of two >= 64)"},
      {"eps", "endpoint offsets 1/lambda - delta, comma list"},
      {"tol", "tolerance (series tolerance for eval-ml, check tolerance otherwise)"},
      {"sigma2", "variance of the Gaussian initial data (solve)"},
      {"workers", "threads for the multiplier stage (solve)"},
      {"field-out", "prefix for binary field snapshots <prefix>_<i>.bin + .json sidecar (solve)"},
      {"norm-table", "CSV path for the norm table t,norm_p0,norm_q,ratio,bound_check (solve)"},
      {"in", "report files to merge (report)"},
  };
  return f;
}

inline std::string command_help() {
  std::ostringstream s;
  s << "Commands and accepted options (plus --out, --format, --config):\n";
  for (const auto& c : commands()) {
    s << "  " << c << ":";
    for (const auto& k : allowed_keys().at(c)) s << " --" << k;
    s << "\n";
  }
  s << "\nEnvironment: FRAC_HEAT_PRECISION=standard|extended sets the default working precision.\n"
    << "Exit codes: 0 ok, 1 internal/I-O error, 2 invalid input, 3 numerical quality failure.\n";
  return s.str();
}

/// Parse argv and run. Help goes to `out`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-fractional heat propagator laboratory", "frac-heat"};
  app.footer(command_help());
  std::string command, output, format = "json";
  app.add_option("command", command, "command to run")->required()->check(CLI::IsMember(commands()));
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  for (const auto& [k, help] : flag_help())
    opts[k] = app.add_option("--" + k, values[k], help)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
  app.add_option("--out", output, "output path (written atomically); stdout when absent");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    detail::error_record(err, validation, "usage", command, e.what());
    return validation;
  }
  RunConfig cfg;
  cfg.command = command;
  std::map<std::string, std::string> given;
  for (const auto& [k, o] : opts) {
    if (o->count() == 0) continue;
    std::string v = values[k];
    for (char& c : v)
      if (c == '\n') c = ',';
    given[k] = v;
  }
  cfg.params = Params(std::move(given));
  cfg.output_path = output;
  cfg.format = format == "csv" ? ReportFormat::csv : ReportFormat::json;
  return run(cfg, out, err);
}

}  // namespace frac_heat::cli
