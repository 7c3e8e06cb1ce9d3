// End-to-end checks of the command-line tool: output schemas, exit codes,
// determinism across reruns and worker counts, and JSON round-tripping.
// The binary path and the sample config directory come in as compile
// definitions so the tests run against the freshly built tool.
#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "jig/jig.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(JIG_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  REQUIRE(WIFEXITED(status));
  res.exit_code = WEXITSTATUS(status);
  return res;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "jig_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path path = scratch_dir() / name;
  std::ofstream f(path);
  f << body;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string config(const std::string& name) {
  return (fs::path(JIG_CONFIG_DIR) / name).string();
}

}  // namespace

TEST_CASE("eval-metric emits the closed-form rows for the sample configs") {
  SECTION("three-outcome simplex at (1,1,1)") {
    RunResult r = run_cli("eval-metric --config " + config("simplex_point.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "m_1,m_2,m_3,g_11,g_12,g_13,g_22,g_23,g_33,psd\n"
          "1,1,1,1,0,0,1,0,1,1\n");
  }

  SECTION("fully mixed qubit gives the identity metric") {
    const fs::path cfg = write_config("bloch_origin.json", R"({
      "model": {"kind": "bloch"},
      "grid": [
        {"min": 0.0, "max": 0.0, "steps": 1},
        {"min": 0.0, "max": 0.0, "steps": 1},
        {"min": 0.0, "max": 0.0, "steps": 1}
      ]
    })");
    RunResult r = run_cli("eval-metric --config " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "m_1,m_2,m_3,g_11,g_12,g_13,g_22,g_23,g_33,psd\n"
          "0,0,0,1,0,0,1,0,1,1\n");
  }

  SECTION("custom table reproduces the tabulated axis metric") {
    RunResult r = run_cli("eval-metric --config " + config("custom_interval.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "m_1,g_11,psd\n"
          "0,1,1\n"
          "0.25,1.0666666666666667,1\n"
          "0.5,1.3333333333333333,1\n");
  }
}

TEST_CASE("eval-metric exit codes follow the error taxonomy") {
  SECTION("malformed json is a config error") {
    const fs::path cfg = write_config("broken.json", "{ not json");
    CHECK(run_cli("eval-metric --config " + cfg.string()).exit_code == 2);
  }

  SECTION("missing config file is a config error") {
    CHECK(run_cli("eval-metric --config /nonexistent/nowhere.json").exit_code == 2);
  }

  SECTION("grid bounds outside the declared domain are a config error") {
    const fs::path cfg = write_config("outside.json", R"({
      "model": {"kind": "bloch"},
      "grid": [
        {"min": -0.5, "max": 1.0, "steps": 3},
        {"min": 0.0, "max": 0.0, "steps": 1},
        {"min": 0.0, "max": 0.0, "steps": 1}
      ]
    })");
    CHECK(run_cli("eval-metric --config " + cfg.string()).exit_code == 2);
  }

  SECTION("zero steps are a config error") {
    const fs::path cfg = write_config("zerosteps.json", R"({
      "model": {"kind": "classical", "family": "simplex", "outcomes": 2},
      "grid": [
        {"min": 0.5, "max": 0.5, "steps": 0},
        {"min": 0.5, "max": 0.5, "steps": 1}
      ]
    })");
    CHECK(run_cli("eval-metric --config " + cfg.string()).exit_code == 2);
  }

  SECTION("declared algebra must match the model") {
    const fs::path cfg = write_config("badshape.json", R"({
      "algebra": [3],
      "model": {"kind": "bloch"},
      "grid": [
        {"min": 0.0, "max": 0.0, "steps": 1},
        {"min": 0.0, "max": 0.0, "steps": 1},
        {"min": 0.0, "max": 0.0, "steps": 1}
      ]
    })");
    CHECK(run_cli("eval-metric --config " + cfg.string()).exit_code == 2);
  }

  SECTION("grid touching the simplex boundary is a regularity error") {
    const fs::path cfg = write_config("boundary.json", R"({
      "model": {"kind": "classical", "family": "simplex", "outcomes": 2},
      "grid": [
        {"min": 0.0, "max": 1.0, "steps": 3},
        {"min": 0.5, "max": 0.5, "steps": 1}
      ]
    })");
    CHECK(run_cli("eval-metric --config " + cfg.string()).exit_code == 3);
  }

  SECTION("points past the pure-state sphere are a regularity error") {
    const fs::path cfg = write_config("outside_ball.json", R"({
      "model": {"kind": "bloch"},
      "grid": [
        {"min": 0.99, "max": 0.99, "steps": 1},
        {"min": 0.99, "max": 0.99, "steps": 1},
        {"min": 0.0, "max": 0.0, "steps": 1}
      ]
    })");
    CHECK(run_cli("eval-metric --config " + cfg.string()).exit_code == 3);
  }
}

TEST_CASE("eval-metric output is deterministic and thread-count independent") {
  const std::string cfg = config("simplex_grid.json");
  const fs::path a = scratch_dir() / "grid_a.csv";
  const fs::path b = scratch_dir() / "grid_b.csv";
  const fs::path c = scratch_dir() / "grid_c.csv";
  CHECK(run_cli("eval-metric --config " + cfg + " --output " + a.string()).exit_code == 0);
  CHECK(run_cli("eval-metric --config " + cfg + " --output " + b.string()).exit_code == 0);
  CHECK(run_cli("eval-metric --config " + cfg + " --jobs 4 --output " + c.string()).exit_code ==
        0);
  const std::string text = read_file(a);
  CHECK(text == read_file(b));
  CHECK(text == read_file(c));
  CHECK(std::count(text.begin(), text.end(), '\n') == 8 * 8 * 8 + 1);
}

TEST_CASE("json records re-evaluate to the same metric") {
  const fs::path out = scratch_dir() / "bloch_line.json";
  RunResult r = run_cli("eval-metric --config " + config("bloch_line.json") +
                        " --format json --output " + out.string());
  REQUIRE(r.exit_code == 0);

  const nlohmann::json records = nlohmann::json::parse(read_file(out));
  REQUIRE(records.is_array());
  REQUIRE(records.size() == 9);

  jig::ParametricModel model = jig::make_bloch_model();
  for (const nlohmann::json& rec : records) {
    const auto params = rec.at("params").get<std::vector<double>>();
    Eigen::VectorXd m(3);
    for (int i = 0; i < 3; ++i) m(i) = params[static_cast<std::size_t>(i)];
    const jig::MetricMatrix g = jig::metric_tensor(model, m);
    const auto upper = rec.at("metric_upper").get<std::vector<double>>();
    std::size_t idx = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        CHECK(std::abs(upper.at(idx++) - g.entries(i, j)) <= 1e-12);
    CHECK(rec.at("psd").get<bool>() == g.is_psd());
  }
}

TEST_CASE("verify prints one report line per suite and honours overrides") {
  SECTION("quick config passes") {
    RunResult r = run_cli("verify --config " + config("verify_quick.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS] jordan-lie") != std::string::npos);
    CHECK(r.out.find("passed 7/7 suites") != std::string::npos);
  }

  SECTION("an unreachable tolerance turns into a verification failure") {
    const fs::path cfg = write_config("impossible.json", R"({
      "suites": ["jordan-lie"],
      "trials": {"jordan-lie": 50},
      "tolerances": {"jordan-lie": 1e-30}
    })");
    RunResult r = run_cli("verify --config " + cfg.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("[FAIL] jordan-lie") != std::string::npos);
  }

  SECTION("unknown suite names are config errors") {
    const fs::path cfg = write_config("badsuite.json", R"({"suites": ["no-such-suite"]})");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }

  SECTION("non-unital kraus family is rejected before any trial runs") {
    const fs::path cfg = write_config("badkraus.json", R"({
      "suites": ["monotonicity"],
      "channel": {
        "domain": 2,
        "codomain": 2,
        "kraus": [[[[0.5, 0.0], [0.0, 0.5]]]]
      }
    })");
    CHECK(run_cli("verify --config " + cfg.string()).exit_code == 2);
  }

  SECTION("fixed pinching channel keeps monotonicity tight") {
    RunResult r = run_cli("verify --config " + config("verify_pinching.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS] monotonicity") != std::string::npos);
  }

  SECTION("seeded runs repeat bit for bit") {
    const std::string cmd = "verify --config " + config("verify_quick.json") + " --seed 99";
    RunResult r1 = run_cli(cmd);
    RunResult r2 = run_cli(cmd);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
  }
}

TEST_CASE("oracle-compare maps comparison groups onto report lines") {
  SECTION("rank-one group runs both closed-form checks") {
    const fs::path cfg = write_config("cmp_rank_one.json", R"({"comparisons": ["rank-one"]})");
    RunResult r = run_cli("oracle-compare --config " + cfg.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[PASS] rank-one") != std::string::npos);
    CHECK(r.out.find("[PASS] fubini-study") != std::string::npos);
  }

  SECTION("unknown group is a config error") {
    const fs::path cfg = write_config("cmp_bad.json", R"({"comparisons": ["spectral"]})");
    CHECK(run_cli("oracle-compare --config " + cfg.string()).exit_code == 2);
  }

  SECTION("json report file carries the numbers behind the text lines") {
    const fs::path cfg = write_config("cmp_lift.json", R"({"comparisons": ["lift"]})");
    const fs::path out = scratch_dir() / "lift_report.json";
    RunResult r = run_cli("oracle-compare --config " + cfg.string() + " --format json --output " +
                          out.string());
    CHECK(r.exit_code == 0);
    const nlohmann::json report = nlohmann::json::parse(read_file(out));
    REQUIRE(report.is_array());
    REQUIRE(report.size() == 1);
    CHECK(report[0].at("suite") == "lift-agreement");
    CHECK(report[0].at("pass") == true);
    CHECK(report[0].at("max_abs_error").get<double>() <= 1e-9);
    CHECK(report[0].at("sample_count").get<long>() == 200);
  }
}

TEST_CASE("flag errors and missing subcommands are config errors") {
  CHECK(run_cli("eval-metric").exit_code == 2);
  CHECK(run_cli("no-such-verb --config x.json").exit_code == 2);
  CHECK(run_cli("verify --config " + config("verify_quick.json") + " --format yaml").exit_code ==
        2);
}
