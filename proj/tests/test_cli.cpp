#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "frac_heat/cli.hpp"

using namespace frac_heat;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "frac-heat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "frac_heat_cli_test";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("eval-ml prints the value and its method", "[cli]") {
  const Run r = run({"eval-ml", "--alpha", "0.5", "--x", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.42758357615580") != std::string::npos);
  CHECK(r.out.find("\"method\": \"series") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("validation errors exit with 2 and a one-line record", "[cli]") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"eval-ml", "--alpha", "1.5", "--x", "1"},
           {"eval-ml", "--alpha", "0.5", "--x", "-1"},
           {"eval-ml", "--alpha", "0.5"},
           {"eval-ml", "--alpha", "0.5", "--x", "1", "--s", "2"},
           {"eval-ml", "--alpha", "abc", "--x", "1"},
           {"frobnicate"},
           {"solve", "--N", "100"},
           {"decay-sup", "--p", "1", "--q", "4"},
           {"report"},
       }) {
    const Run r = run(args);
    INFO(args[0]);
    CHECK(r.code == 2);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j["exit_code"] == 2);
  }
}

TEST_CASE("verify-moments table", "[cli]") {
  const Run r = run({"verify-moments", "--alpha", "0.5", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1 + 6 * 4);
  CHECK(r.out.find("rel_error") != std::string::npos);
}

TEST_CASE("a failed check exits with 3", "[cli]") {
  const Run r = run({"verify-moments", "--alpha", "0.5", "--gamma", "1", "--tol", "1e-30"});
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.err)["kind"] == "numerical_quality");
}

TEST_CASE("decay-compare reports increasing subordination constants", "[cli]") {
  const fs::path out = scratch() / "cmp.json";
  const Run r = run({"decay-compare", "--alpha", "0.5", "--lambda", "1", "--eps", "0.2,0.1,0.05", "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto recs = parse_report(slurp(out));
  std::vector<double> sub;
  for (const auto& rec : recs)
    if (rec.info.value("representation", "") == "subordination")
      for (const auto& v : rec.values)
        if (v.name == "constant") sub.push_back(v.value);
  REQUIRE(sub.size() == 3);
  CHECK(sub[0] < sub[1]);
  CHECK(sub[1] < sub[2]);
}

TEST_CASE("identical runs give byte-identical files", "[cli]") {
  const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv";
  for (const auto& p : {a, b})
    REQUIRE(run({"decay-sup", "--alpha", "0.5", "--t-points", "6", "--format", "csv", "--out", p.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("config file with flag override", "[cli]") {
  const fs::path cfg = scratch() / "run.cfg";
  std::ofstream(cfg) << "alpha=0.5\nx=0.5,1\n";
  const Run r = run({"eval-ml", "--config", cfg.string(), "--alpha", "1", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("eval-ml,1,") != std::string::npos);
  CHECK(r.out.find(",x,0.5,") != std::string::npos);
  std::ofstream(cfg) << "alpha=0.5\nunknown_key=3\n";
  CHECK(run({"eval-ml", "--config", cfg.string(), "--x", "1"}).code == 2);
}

TEST_CASE("solve writes fields, a norm table and a report", "[cli]") {
  const fs::path d = scratch();
  const Run r = run({"solve", "--alpha", "0.5", "--N", "1024", "--L", "100", "--t", "1,10", "--field-out",
                     (d / "w").string(), "--norm-table", (d / "norms.csv").string(), "--out", (d / "solve.json").string()});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(d / "w_0.bin"));
  CHECK(fs::exists(d / "w_1.bin.json"));
  const StoredField f = read_field((d / "w_1.bin").string());
  CHECK(f.time == 10.0);
  CHECK(f.field.grid.N == 1024);
  const std::string table = slurp(d / "norms.csv");
  CHECK(table.rfind("t,norm_p0,norm_q,ratio,bound_check\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
}

TEST_CASE("report merges and re-sorts", "[cli]") {
  const fs::path d = scratch();
  REQUIRE(run({"eval-ml", "--alpha", "0.75", "--x", "1", "--out", (d / "r1.json").string()}).code == 0);
  REQUIRE(run({"eval-ml", "--alpha", "0.25", "--x", "1", "--out", (d / "r2.json").string()}).code == 0);
  const Run r = run({"report", "--in", (d / "r1.json").string() + "," + (d / "r2.json").string()});
  REQUIRE(r.code == 0);
  const auto recs = parse_report(r.out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].alpha == 0.25);
}

TEST_CASE("unwritable output exits with 1", "[cli]") {
  const Run r = run({"eval-ml", "--alpha", "0.5", "--x", "1", "--out", "/nonexistent-dir/x.json"});
  CHECK(r.code == 1);
}

TEST_CASE("precision from the environment", "[cli]") {
  ::setenv("FRAC_HEAT_PRECISION", "extended", 1);
  const Run r = run({"eval-ml", "--alpha", "0.5", "--x", "1"});
  ::unsetenv("FRAC_HEAT_PRECISION");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"precision\": \"extended\"") != std::string::npos);
  ::setenv("FRAC_HEAT_PRECISION", "quad", 1);
  CHECK(run({"eval-ml", "--alpha", "0.5", "--x", "1"}).code == 2);
  ::unsetenv("FRAC_HEAT_PRECISION");
}

TEST_CASE("installed binary honours the exit-code contract", "[cli][process]") {
  auto status = [](const std::string& args) {
    const int s = std::system((std::string(FRAC_HEAT_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  CHECK(status("eval-ml --alpha 0.5 --x 1") == 0);
  CHECK(status("eval-ml --alpha 2 --x 1") == 2);
  CHECK(status("--help") == 0);
  CHECK(status("") == 2);
}
