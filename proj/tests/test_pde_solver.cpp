#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "frac_heat/pde_solver.hpp"
#include "oracles.hpp"

using namespace frac_heat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double max_diff(const Field& a, const Field& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) d = std::max(d, std::abs(a.samples[i] - b.samples[i]));
  return d;
}

SolverConfig config(double alpha, Representation rep = Representation::direct_ml) {
  SolverConfig c;
  c.alpha = Alpha(alpha);
  c.representation = rep;
  return c;
}

}  // namespace

TEST_CASE("grid and field validation", "[grid]") {
  CHECK_THROWS_AS((PeriodicGrid{3, 1.0, 64}.validate()), DomainError);
  CHECK_THROWS_AS((PeriodicGrid{1, 1.0, 32}.validate()), DomainError);
  CHECK_THROWS_AS((PeriodicGrid{1, 1.0, 96}.validate()), DomainError);
  CHECK_THROWS_AS((PeriodicGrid{1, -1.0, 64}.validate()), DomainError);
  const PeriodicGrid g{1, 10.0, 64};
  CHECK_THROWS_AS(Field(g, std::vector<double>(63, 0.0)), DomainError);
  std::vector<double> bad(64, 0.0);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(Field(g, bad), DomainError);
  SolverConfig c;
  c.time_points = {1.0, 0.5};
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("zero time returns the data up to round-off", "[solve]") {
  const PeriodicGrid g{1, 200.0, 4096};
  const Field w0 = gaussian_field(g);
  for (double a : {0.25, 0.5, 1.0})
    for (auto rep : {Representation::direct_ml, Representation::subordination}) {
      if (a == 1.0 && rep == Representation::subordination) continue;
      CHECK(max_diff(spectral_solve(w0, config(a, rep), 0.0), w0) <= 1e-12);
    }
  CHECK_THROWS_AS(spectral_solve(w0, config(0.5), -1.0), DomainError);
}

TEST_CASE("alpha = 1 is the heat flow", "[solve]") {
  const PeriodicGrid g{1, 200.0, 4096};
  const double s2 = 0.1, t = 2.0;
  const Field w = spectral_solve(gaussian_field(g, s2), config(1.0), t);
  for (int i = 0; i < g.N; i += 37) {
    const double x = g.coordinate(i);
    const double exact = std::sqrt(s2 / (s2 + 2 * t)) * std::exp(-x * x / (2 * (s2 + 2 * t)));
    CHECK_THAT(w.samples[i], WithinAbs(exact, 1e-12));
  }
}

TEST_CASE("a single mode decays by the scalar multiplier", "[solve][oracle]") {
  const PeriodicGrid g{1, 2.0 * std::numbers::pi, 64};
  for (double a : {0.3, 0.7}) {
    for (int k : {1, 2}) {
      const Field w0 = cosine_field(g, {{k, 0}}, {1.0});
      const double t = 0.5;
      const double amp = oracle::mittag_leffler_series(a, std::pow(t, a) * k * k);
      for (auto rep : {Representation::direct_ml, Representation::subordination}) {
        const Field w = spectral_solve(w0, config(a, rep), t);
        for (std::size_t i = 0; i < w.samples.size(); ++i) CHECK_THAT(w.samples[i], WithinAbs(amp * w0.samples[i], 1e-9));
      }
    }
  }
}

TEST_CASE("representations agree on the Gaussian", "[solve]") {
  const PeriodicGrid g{1, 200.0, 4096};
  const Field w0 = gaussian_field(g);
  for (double a : {0.25, 0.5, 0.75}) {
    SolverConfig d = config(a), s = config(a, Representation::subordination);
    d.time_points = s.time_points = {0.1, 1.0, 10.0};
    const Propagator pd(g, d), ps(g, s);
    CHECK(ps.reliable());
    for (double t : d.time_points) {
      const Field u = pd.solve(w0, t), v = ps.solve(w0, t);
      CHECK(max_diff(u, v) <= 1e-7 * max_norm(w0));
    }
    CHECK_THROWS_AS(ps.solve(w0, 20.0), DomainError);
  }
}

TEST_CASE("propagator properties", "[solve][property]") {
  const PeriodicGrid g{2, 20.0, 64};
  const Field w0 = gaussian_field(g, 0.5);
  for (double a : {0.25, 0.75, 1.0})
    for (double t : {0.1, 1.0, 10.0}) {
      const Field w = spectral_solve(w0, config(a), t);
      CHECK(lp_norm(w, 2.0) <= lp_norm(w0, 2.0) * (1 + 1e-12));
      CHECK_THAT(mean(w), WithinAbs(mean(w0), 1e-14));
    }
  // multipliers decrease with |xi|^2
  SolverConfig c = config(0.4);
  c.time_points = {3.0};
  const Propagator p(g, c);
  std::vector<long> k2;
  for (long k = 0; k <= 2 * 32 * 32; k += 7) k2.push_back(k);
  const auto m = p.multipliers(3.0, k2);
  double prev = 2.0;
  for (long k : k2) {
    CHECK(m.at(k) < prev);
    CHECK(m.at(k) > 0.0);
    prev = m.at(k);
  }
}

TEST_CASE("worker count does not change the output bits", "[solve][concurrency]") {
  const PeriodicGrid g{2, 20.0, 128};
  const Field w0 = gaussian_field(g, 0.5);
  SolverConfig one = config(0.6), four = config(0.6);
  four.workers = 4;
  const Field a = spectral_solve(w0, one, 2.0), b = spectral_solve(w0, four, 2.0);
  CHECK(a.samples == b.samples);
  one.representation = four.representation = Representation::subordination;
  CHECK(spectral_solve(w0, one, 2.0).samples == spectral_solve(w0, four, 2.0).samples);
}

TEST_CASE("Laplacian commutes with the propagator", "[commute]") {
  const PeriodicGrid g{2, 20.0, 64};
  const Field w0 = cosine_field(g, {{1, 0}, {2, 3}}, {1.0, 0.5});
  CHECK(commutation_check(w0, config(0.5), 1.0) <= 1e-10);
  CHECK(commutation_check(w0, config(1.0), 1.0) <= 1e-10);
  CHECK(commutation_check(w0, config(0.5, Representation::subordination), 1.0) <= 1e-10);
  const PeriodicGrid g1{1, 10.0, 64};
  std::vector<double> spike(64, 0.0);
  spike[10] = 1.0;
  CHECK_THROWS_AS(commutation_check(Field(g1, spike), config(0.5), 1.0), DomainError);
}

TEST_CASE("Caputo residual of the L1 scheme", "[caputo]") {
  // backward Euler defect of e^-t is O(dt)
  const CaputoResidual r1 = caputo_residual_l1(Alpha(1.0), 1.0, 2.0, 256);
  const CaputoResidual r2 = caputo_residual_l1(Alpha(1.0), 1.0, 2.0, 512);
  CHECK_THAT(r1.max_residual / r2.max_residual, WithinRel(2.0, 0.05));
  CHECK(caputo_residual_l1(Alpha(0.5), 0.0, 2.0, 128).max_residual <= 1e-14);
  const CaputoResidual a = caputo_residual_l1(Alpha(0.5), 1.0, 1.0, 256);
  const CaputoResidual b = caputo_residual_l1(Alpha(0.5), 1.0, 1.0, 512);
  CHECK(a.window_residual / b.window_residual >= 2.0);
  for (double al : {0.3, 0.5, 0.7})
    for (double mu : {0.5, 1.0, 4.0}) {
      const RefinementStudy s = caputo_refinement(Alpha(al), mu, 2.0, 64, 3);
      INFO("alpha " << al << " mu " << mu);
      CHECK(s.min_order >= 1.0);
    }
  CHECK_THROWS_AS(caputo_residual_l1(Alpha(0.5), 1.0, 0.5, 64), DomainError);
  CHECK_THROWS_AS(caputo_residual_l1(Alpha(0.5), -1.0, 2.0, 64), DomainError);
}

TEST_CASE("decay measurement", "[decay]") {
  const PeriodicGrid g{1, 200.0, 4096};
  const Field w0 = gaussian_field(g);
  const auto t = oracle::logspace(1.0, 100.0, 11);
  const DecayMeasurement heat = decay_measurement(w0, config(1.0), 1.5, 2.0, t);
  CHECK(heat.truncated == 0);
  CHECK_THAT(heat.slope, WithinRel(-0.25, 0.1));
  const DecayMeasurement half = decay_measurement(w0, config(0.5), 1.5, 2.0, t);
  CHECK_THAT(half.slope, WithinRel(-0.125, 0.1));
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    const DecayMeasurement m = decay_measurement(w0, config(a), 4.0 / 3.0, 4.0, t);
    CHECK(m.non_increasing);
    CHECK_THAT(m.delta, WithinRel(0.5, 1e-15));
    CHECK(m.lambda == 0.5);
  }
  CHECK_THROWS_AS(decay_measurement(w0, config(0.5), 1.0, 4.0, t), DomainError);
  CHECK_THROWS_AS(decay_measurement(w0, config(0.5), 1.5, 1.8, t), DomainError);
}

TEST_CASE("wraparound truncates the window", "[decay]") {
  const PeriodicGrid g{1, 20.0, 256};
  const DecayMeasurement m = decay_measurement(gaussian_field(g), config(1.0), 1.5, 2.0, {0.1, 1.0, 10.0, 100.0});
  CHECK(m.truncated >= 1);
  CHECK_FALSE(m.warnings.empty());
  CHECK(m.rows.size() + m.truncated == 4);
}

TEST_CASE("field files round-trip", "[io]") {
  const PeriodicGrid g{2, 5.0, 64};
  const Field f = gaussian_field(g, 0.3);
  const auto dir = std::filesystem::temp_directory_path() / "frac_heat_field_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "w.bin").string();
  write_field(path, f, 2.5);
  const StoredField back = read_field(path);
  CHECK(back.time == 2.5);
  CHECK(back.field.grid == g);
  CHECK(back.field.samples == f.samples);
  CHECK(std::filesystem::file_size(path) == g.size() * sizeof(double));
  std::filesystem::resize_file(path, 10);
  CHECK_THROWS_AS(read_field(path), DomainError);
  std::filesystem::remove_all(dir);
}
