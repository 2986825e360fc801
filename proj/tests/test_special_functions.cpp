#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <thread>

#include "frac_heat/special_functions.hpp"
#include "oracles.hpp"

using namespace frac_heat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gamma and reciprocal gamma", "[gamma]") {
  CHECK(gamma_fn(1.0) == 1.0);
  CHECK_THAT(gamma_fn(0.5), WithinRel(std::sqrt(std::numbers::pi), 1e-15));
  CHECK(reciprocal_gamma(-1.0) == 0.0);
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-7.0) == 0.0);
  for (double x : {-3.7, -0.5, 0.3, 2.5, 10.25, 55.5, 150.1, 170.5})
    CHECK_THAT(gamma_fn(x), WithinRel(oracle::gamma_big(x), 1e-13));
  CHECK_THAT(reciprocal_gamma(-2.5), WithinRel(1.0 / oracle::gamma_big(-2.5), 1e-13));
  CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(200.0), OverflowError);
  CHECK(reciprocal_gamma(200.0) == 0.0);
}

TEST_CASE("alpha validation", "[alpha]") {
  CHECK_THROWS_AS(Alpha(0.0), DomainError);
  CHECK_THROWS_AS(Alpha(1.2), DomainError);
  CHECK_THROWS_AS(Alpha(std::nan("")), DomainError);
  CHECK_NOTHROW(Alpha(1.0));
  CHECK_THROWS_AS(Alpha(1.0).require_fractional("x"), DomainError);
}

TEST_CASE("policy validation", "[policy]") {
  EvalPolicy p;
  p.contour_nodes = 8;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.series_tol = 1e-17;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.working_precision = Precision::extended;
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(parse_precision("double"), DomainError);
}

TEST_CASE("Mittag-Leffler reference values", "[ml]") {
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.99, 1.0}) CHECK(mittag_leffler_neg(Alpha(a), 0.0) == 1.0);
  CHECK_THAT(mittag_leffler_neg(Alpha(1.0), 1.0), WithinRel(0.36787944117144233, 1e-15));
  CHECK_THAT(mittag_leffler_neg(Alpha(0.5), 1.0), WithinRel(0.427583576155807, 1e-14));
  CHECK_THAT(mittag_leffler_neg(Alpha(0.5), 1.0), WithinRel(std::exp(1.0) * std::erfc(1.0), 1e-14));
  CHECK_THAT(mittag_leffler_neg(Alpha(0.75), 10.0), WithinRel(0.030643250976059636, 1e-13));
  CHECK_THAT(mittag_leffler_neg(Alpha(0.9), 0.1), WithinRel(0.90175694244985938, 1e-14));
  CHECK_THAT(mittag_leffler_neg(Alpha(0.25), 2.0), WithinRel(0.29810179369365758, 1e-14));
  CHECK_THROWS_AS(mittag_leffler_neg(Alpha(0.5), -1.0), DomainError);
}

TEST_CASE("Mittag-Leffler against high-precision series", "[ml][oracle]") {
  double worst = 0.0;
  for (double a : {0.2, 0.35, 0.5, 0.65, 0.8, 0.95}) {
    for (double x : oracle::logspace(1e-3, 60.0, 23)) {
      if (std::pow(x, 1.0 / a) > 120.0) continue;
      const double ref = oracle::mittag_leffler_series(a, x);
      const double got = mittag_leffler_neg(Alpha(a), x);
      worst = std::max(worst, std::abs(got - ref) / ref);
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("Mittag-Leffler reduces to the exponential at alpha = 1", "[ml]") {
  for (int i = 0; i <= 300; ++i) {
    const double x = 0.1 * i;
    CHECK_THAT(mittag_leffler_neg(Alpha(1.0), x), WithinAbs(std::exp(-x), 1e-12));
  }
}

TEST_CASE("Mittag-Leffler is bounded, decreasing and completely monotone", "[ml][property]") {
  for (double a : {0.25, 0.5, 0.75}) {
    const Alpha al(a);
    double prev = 1.0;
    for (double x : oracle::logspace(1e-4, 1e5, 200)) {
      const double v = mittag_leffler_neg(al, x);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(monotonicity_defect(al, 0.0, 0.05, 200, 4) >= -1e-9);
    CHECK(monotonicity_defect(al, 0.0, 0.5, 200, 4) >= -1e-9);
    CHECK(monotonicity_defect(al, 3.0, 0.01, 400, 4) >= -1e-9);
  }
}

TEST_CASE("contour quadrature agrees with the series", "[ml][contour]") {
  CHECK_THAT(mittag_leffler_contour(Alpha(0.5), 1.0), WithinAbs(mittag_leffler_neg(Alpha(0.5), 1.0), 1e-10));
  CHECK_THAT(mittag_leffler_contour(Alpha(0.75), 10.0), WithinAbs(mittag_leffler_neg(Alpha(0.75), 10.0), 1e-10));
  CHECK_THAT(mittag_leffler_contour(Alpha(0.9), 0.1), WithinAbs(mittag_leffler_neg(Alpha(0.9), 0.1), 1e-10));
  for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double x : oracle::logspace(1e-2, 1e3, 30))
      CHECK_THAT(mittag_leffler_contour(Alpha(a), x), WithinAbs(mittag_leffler_neg(Alpha(a), x), 1e-10));
  CHECK_THROWS_AS(mittag_leffler_contour(Alpha(1.0), 1.0), DomainError);
  CHECK_THROWS_AS(mittag_leffler_contour(Alpha(0.5), 0.0), DomainError);
}

TEST_CASE("method tags follow the evaluation route", "[ml]") {
  CHECK(mittag_leffler_neg_eval(Alpha(1.0), 2.0).method == MlMethod::exponential);
  CHECK(mittag_leffler_neg_eval(Alpha(0.5), 0.1).method == MlMethod::series);
  CHECK(mittag_leffler_neg_eval(Alpha(0.5), 500.0).method == MlMethod::asymptotic);
}

TEST_CASE("extended working precision gives the same values", "[ml][precision]") {
  EvalPolicy ext;
  ext.working_precision = Precision::extended;
  ext.series_tol = 1e-20;
  for (double a : {0.3, 0.6, 0.9})
    for (double x : {0.5, 3.0, 8.0})
      CHECK_THAT(mittag_leffler_neg(Alpha(a), x, ext), WithinRel(mittag_leffler_neg(Alpha(a), x), 1e-13));
}

TEST_CASE("uniform bound constant", "[ml][bound]") {
  CHECK_THAT(uniform_bound_constant(Alpha(1.0)), WithinAbs(1.0, 1e-12));
  const double c5 = uniform_bound_constant(Alpha(0.5), 1e6, 2000);
  CHECK(c5 >= 1.0);
  CHECK_THAT(uniform_bound_constant(Alpha(0.5), 1e6, 4000), WithinRel(c5, 0.01));
  const double c25 = uniform_bound_constant(Alpha(0.25), 1e6, 2000);
  CHECK(std::isfinite(c25));
  CHECK_THAT(uniform_bound_constant(Alpha(0.25), 2e6, 2000), WithinRel(c25, 0.01));
  for (double x : oracle::logspace(1e-3, 1e5, 60))
    CHECK((1.0 + x) * mittag_leffler_neg(Alpha(0.25), x) <= c25 * (1 + 1e-12));
  CHECK_THROWS_AS(uniform_bound_constant(Alpha(0.5), 10.0), DomainError);
  CHECK_THROWS_AS(uniform_bound_constant(Alpha(0.5), 1e6, 10), DomainError);
}

TEST_CASE("Wright function reference values", "[wright]") {
  CHECK_THAT(wright_m(Alpha(0.5), 0.0).value, WithinRel(1.0 / std::sqrt(std::numbers::pi), 1e-15));
  CHECK_THAT(wright_m(Alpha(0.3), 0.0).value, WithinRel(0.77038318386656601, 1e-14));
  CHECK_THAT(wright_m(Alpha(0.5), 2.0).value, WithinRel(0.20755374871029736, 1e-13));
  CHECK_THAT(wright_m(Alpha(0.25), 1.5).value, WithinRel(0.25172494403852652, 1e-13));
  CHECK_THAT(wright_m(Alpha(0.75), 1.0).value, WithinRel(0.60659854359027598, 1e-12));
  CHECK_THROWS_AS(wright_m(Alpha(0.5), -1.0), DomainError);
  CHECK_THROWS_AS(wright_m(Alpha(1.0), 1.0), DomainError);
}

TEST_CASE("Wright function matches the Gaussian at alpha = 1/2", "[wright]") {
  for (int i = 0; i <= 160; ++i) {
    const double s = 0.05 * i;
    const WrightValue w = wright_m(Alpha(0.5), s);
    REQUIRE(w.reliable);
    CHECK_THAT(w.value, WithinAbs(std::exp(-s * s / 4.0) / std::sqrt(std::numbers::pi), 1e-10));
  }
}

TEST_CASE("Wright function against high-precision series", "[wright][oracle]") {
  for (double a : {0.1, 0.25, 0.5, 0.6}) {
    for (double s : oracle::linspace(0.0, 6.0, 25)) {
      if (std::pow(s, 1.0 / (1.0 - a)) > 3000.0) continue;
      const WrightValue w = wright_m(Alpha(a), s);
      REQUIRE(w.reliable);
      CHECK_THAT(w.value, WithinAbs(oracle::wright_series(a, s), 1e-10));
    }
  }
}

TEST_CASE("Wright function is a nonnegative density over its reliable range", "[wright][property]") {
  for (double a : {0.25, 0.5, 0.75, 0.9}) {
    for (int i = 0; i <= 120; ++i) {
      const WrightValue w = wright_m(Alpha(a), 0.25 * i);
      if (!w.reliable) continue;
      CHECK(w.value >= -1e-12);
    }
  }
}

TEST_CASE("Wright evaluation in standard and extended precision agree", "[wright][precision]") {
  EvalPolicy ext;
  ext.working_precision = Precision::extended;
  for (double a : {0.25, 0.75})
    for (double s : {0.5, 2.0, 4.0}) {
      const WrightValue x = wright_m(Alpha(a), s, ext), d = wright_m(Alpha(a), s);
      REQUIRE(x.reliable);
      CHECK_THAT(x.value, WithinAbs(d.value, 1e-12));
    }
}

TEST_CASE("Wright series flags cancellation instead of returning garbage", "[wright]") {
  EvalPolicy p;
  p.wright_integral_fallback = false;
  const WrightValue w = wright_m(Alpha(0.9), 40.0, p);
  if (w.reliable) CHECK(std::abs(w.value) < 1e-10);
  else CHECK(std::isnan(w.value));
}

TEST_CASE("evaluation is safe from several threads", "[concurrency]") {
  std::vector<double> a(8), b(8);
  auto work = [](std::vector<double>& out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mittag_leffler_neg(Alpha(0.4), 0.7 * i + 0.1);
  };
  std::thread t1(work, std::ref(a)), t2(work, std::ref(b));
  t1.join();
  t2.join();
  CHECK(a == b);
}
