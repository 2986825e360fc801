#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "frac_heat/report.hpp"

using namespace frac_heat;

namespace {

Record make(std::string cmd, double alpha, double lambda, double t, double v) {
  Record r;
  r.command = std::move(cmd);
  r.alpha = alpha;
  r.lambda = lambda;
  r.t = t;
  r.add("v", v, "series");
  return r;
}

}  // namespace

TEST_CASE("empty result sets are rejected", "[report]") {
  CHECK_THROWS_AS(emit_report({}, ReportFormat::json), DomainError);
  CHECK_THROWS_AS(emit_report({}, ReportFormat::csv), DomainError);
}

TEST_CASE("records are sorted by experiment key", "[report]") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Record> rs{make("solve", 0.5, 0.5, 10.0, 1), make("eval-ml", 0.75, nan, nan, 2),
                         make("solve", 0.5, 0.5, 1.0, 3),  make("eval-ml", 0.25, nan, nan, 4),
                         make("solve", 0.5, 0.5, nan, 5),  make("decay-sup", 0.5, 1.0, 3.0, 6)};
  sort_records(rs);
  std::vector<double> order;
  for (const auto& r : rs) order.push_back(r.values[0].value);
  CHECK(order == std::vector<double>{6, 4, 2, 3, 1, 5});
}

TEST_CASE("emission is deterministic and round-trips", "[report]") {
  std::vector<Record> rs{make("eval-ml", 0.5, 1.0, 2.0, 0.1), make("eval-ml", 0.25, 1.0, 2.0, 1.0 / 3.0)};
  rs[0].add("inf", std::numeric_limits<double>::infinity(), "closed_form");
  rs[0].info["note"] = "x";
  rs[1].reliable = false;
  const std::string a = emit_report(rs, ReportFormat::json);
  CHECK(a == emit_report(rs, ReportFormat::json));
  const auto back = parse_report(a);
  REQUIRE(back.size() == 2);
  CHECK(back[0].alpha == 0.25);
  CHECK(back[0].values[0].value == 1.0 / 3.0);
  CHECK_FALSE(back[0].reliable);
  CHECK(std::isinf(back[1].values[1].value));
  CHECK(back[1].info["note"] == "x");
  CHECK(std::isnan(back[1].p));
  CHECK(emit_report(back, ReportFormat::json) == a);
  CHECK_THROWS_AS(parse_report("{\"schema\": \"other/9\", \"records\": []}"), DomainError);
  CHECK_THROWS_AS(parse_report("not json"), DomainError);
}

TEST_CASE("CSV has a header and one row per value", "[report]") {
  std::vector<Record> rs{make("eval-ml", 0.5, 1.0, 2.0, 0.1)};
  rs[0].add("w", 2.0, "contour");
  rs[0].info["a"] = "b,c";
  const std::string csv = emit_report(rs, ReportFormat::csv);
  CHECK(csv.rfind("command,alpha,lambda,p,q,t,name,value,method,reliable,info\n", 0) == 0);
  CHECK(csv.find("eval-ml,0.5,1,,,2,v,0.10000000000000001,series,1,") != std::string::npos);
  CHECK(csv.find(",w,2,contour,1,\"{\"\"a\"\":\"\"b,c\"\"}\"") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
