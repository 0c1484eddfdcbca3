#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "waveharm/cli.hpp"
#include "waveharm/oracle.hpp"

using namespace waveharm;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "waveharm_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const json& doc, const std::string& name) {
  const fs::path path = scratch_dir() / name;
  std::ofstream(path) << doc.dump(2);
  return path;
}

json sphere_config(double k, int l_max) {
  return json{{"geometry", {{"type", "sphere"}, {"radius", 1.0}}},
              {"k", k},
              {"L", {{"l_max", l_max}}},
              {"boundary", {{"plane_wave", {{"direction", {0, 0, 1}}}}}}};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(WAVEHARM_CLI_PATH) + " " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json doc;
  in >> doc;
  return doc;
}

}  // namespace

TEST_CASE("parse_config resolves a full document") {
  const cli::JobConfig config = cli::parse_config(sphere_config(1.5, 6));
  CHECK(config.l_max == 6);
  CHECK(config.k == 1.5);
  CHECK_FALSE(config.is_sweep);
  CHECK(config.boundary == cli::BoundaryKind::PlaneWave);
  CHECK(config.surface->harmonic_degree() == 0);
  CHECK(config.resolved.contains("resolved"));
}

TEST_CASE("parse_config rejects malformed documents with named fields") {
  json doc = sphere_config(1.0, 4);
  doc["geometry"].erase("radius");
  CHECK_THROWS_WITH_AS(cli::parse_config(doc),
                       doctest::Contains("radius"), cli::ConfigError);

  doc = sphere_config(1.0, 4);
  doc["k"] = -2.0;
  CHECK_THROWS_AS(cli::parse_config(doc), cli::ConfigError);

  doc = sphere_config(1.0, 4);
  doc["boundary"]["plane_wave"]["direction"] = {0, 0, 2};
  CHECK_THROWS_AS(cli::parse_config(doc), cli::ConfigError);

  doc = sphere_config(1.0, 4);
  doc["boundary"] = {{"mode_trace", {{"l", 1}, {"m", 2}}}};
  CHECK_THROWS_AS(cli::parse_config(doc), cli::ConfigError);

  doc = sphere_config(1.0, 4);
  doc["k"] = {{"start", 1.0}, {"stop", 2.0}, {"count", 5},
              {"spacing", "cubic"}};
  CHECK_THROWS_AS(cli::parse_config(doc), cli::ConfigError);
}

TEST_CASE("sweep values honor the endpoints exactly in both spacings") {
  cli::SweepSpec linear{0.5, 2.0, 7, false};
  auto values = linear.values();
  REQUIRE(values.size() == 7);
  CHECK(values.front() == 0.5);
  CHECK(values.back() == 2.0);
  for (std::size_t i = 1; i < values.size(); ++i)
    CHECK(values[i] - values[i - 1] == doctest::Approx(1.5 / 6).epsilon(1e-13));

  cli::SweepSpec logarithmic{0.5, 2.0, 5, true};
  values = logarithmic.values();
  CHECK(values.front() == 0.5);
  CHECK(values.back() == 2.0);
  for (std::size_t i = 1; i < values.size(); ++i)
    CHECK(values[i] / values[i - 1] ==
          doctest::Approx(std::pow(4.0, 0.25)).epsilon(1e-13));
}

TEST_CASE("run_solve emits the cross-section report") {
  const fs::path out = scratch_dir() / "solve_out";
  const cli::JobConfig config = cli::parse_config(sphere_config(1.0, 8));
  CHECK(cli::run_solve(config, out.string()) == cli::kExitOk);
  const json result = read_json(out / "solve.json");
  CHECK(result["sigma_T"]["parseval"].get<double>() ==
        doctest::Approx(oracle::sphere_plane_wave_sigma(1.0, 1.0))
            .epsilon(1e-6));
  CHECK(result["sigma_T"]["discrepancy"].get<double>() < 1e-10);
  CHECK(result["A"].size() == 81);
  CHECK(result["lambda"].size() == 81);
  CHECK(result["config"].contains("resolved_quadrature"));
}

TEST_CASE("mode-trace solve yields the single delta amplitude") {
  json doc = sphere_config(1.3, 5);
  doc["boundary"] = {{"mode_trace", {{"l", 2}, {"m", 1}}}};
  const fs::path out = scratch_dir() / "mode_out";
  CHECK(cli::run_solve(cli::parse_config(doc), out.string()) == cli::kExitOk);
  const json result = read_json(out / "solve.json");
  for (const json& entry : result["A"]) {
    const bool hit = entry["l"] == 2 && entry["m"] == 1;
    const double expected = hit ? 1.0 / 1.3 : 0.0;
    CHECK(std::abs(entry["re"].get<double>() - expected) < 1e-8);
    CHECK(std::abs(entry["im"].get<double>()) < 1e-8);
  }
}

TEST_CASE("sweep matches per-point solves and avoids surface evaluations") {
  json doc = sphere_config(1.0, 4);
  doc["k"] = {{"start", 0.8}, {"stop", 1.6}, {"count", 5}};
  const cli::JobConfig config = cli::parse_config(doc);
  const fs::path out = scratch_dir() / "sweep_out";
  CHECK(cli::run_sweep(config, out.string()) == cli::kExitOk);

  const json report = read_json(out / "sweep.json");
  CHECK(report["surface_evals_after_moments"].get<std::uint64_t>() == 0);
  CHECK(report["errors"].empty());

  std::ifstream csv(out / "sweep.csv");
  std::string line;
  std::getline(csv, line);  // header
  int rows = 0;
  while (std::getline(csv, line)) {
    double k, sigma, transport, min_lambda;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &k, &sigma,
                        &transport, &min_lambda) == 4);
    json point = sphere_config(k, 4);
    const fs::path point_out = scratch_dir() / ("point_" + std::to_string(rows));
    REQUIRE(cli::run_solve(cli::parse_config(point), point_out.string()) ==
            cli::kExitOk);
    const json solve = read_json(point_out / "solve.json");
    CHECK(std::abs(sigma - solve["sigma_T"]["parseval"].get<double>()) <=
          1e-10 * (1.0 + sigma));
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("field command reproduces the sphere mode solution") {
  json doc = sphere_config(1.6, 5);
  doc["boundary"] = {{"mode_trace", {{"l", 3}, {"m", 2}}}};
  doc["field_points"] = {{1.5, 0.2, 0.9}, {0.0, 0.0, 3.0}, {0.1, 0.0, 0.1}};
  const fs::path out = scratch_dir() / "field_out";
  CHECK(cli::run_field(cli::parse_config(doc), out.string()) == cli::kExitOk);
  std::ifstream csv(out / "field.csv");
  std::string line;
  std::getline(csv, line);
  int ok_rows = 0, interior_rows = 0;
  while (std::getline(csv, line)) {
    double x, y, z, re, im;
    char status[32];
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%31s", &x, &y, &z,
                        &re, &im, status) == 6);
    if (std::string(status) == "interior") {
      ++interior_rows;
      continue;
    }
    ++ok_rows;
    const Complex exact =
        oracle::sphere_mode_solution(3, 2, 1.0, 1.6, {x, y, z});
    CHECK(std::abs(Complex(re, im) - exact) < 1e-9 * (1.0 + std::abs(exact)));
  }
  CHECK(ok_rows == 2);
  CHECK(interior_rows == 1);
}

TEST_CASE("validate passes on the default sphere and honors overrides") {
  json doc = sphere_config(1.0, 4);
  const fs::path out = scratch_dir() / "validate_out";
  CHECK(cli::run_validate(cli::parse_config(doc), out.string()) ==
        cli::kExitOk);
  json report = read_json(out / "validate.json");
  CHECK(report["all_pass"].get<bool>());

  // An impossible tolerance must flip the same checks to failure.
  doc["tolerances"] = {{"validate", 1e-30}};
  CHECK(cli::run_validate(cli::parse_config(doc), out.string()) ==
        cli::kExitNumerical);
  report = read_json(out / "validate.json");
  CHECK_FALSE(report["all_pass"].get<bool>());
  bool saw_tolerance = false;
  for (const json& check : report["checks"])
    if (check.contains("tolerance") &&
        check["tolerance"].get<double>() == 1e-30)
      saw_tolerance = true;
  CHECK(saw_tolerance);
}

TEST_CASE("validate flags broken geometry") {
  json doc = sphere_config(1.0, 3);
  doc["geometry"] = {{"type", "harmonic"},
                     {"N", 1},
                     {"coeffs",
                      json::array({{{"l", 0}, {"m", 0},
                                    {"re", 3.5449077018110318}, {"im", 0.0}},
                                   {{"l", 1}, {"m", 0},
                                    {"re", 10.0}, {"im", 0.0}}})}};
  const fs::path out = scratch_dir() / "broken_out";
  CHECK(cli::run_validate(cli::parse_config(doc), out.string()) ==
        cli::kExitNumerical);
  const json report = read_json(out / "validate.json");
  CHECK_FALSE(report["all_pass"].get<bool>());
  CHECK_FALSE(report["checks"][0]["pass"].get<bool>());
}

TEST_CASE("binary exit-code contract") {
  const fs::path good = write_config(sphere_config(1.0, 3), "good.json");
  const fs::path out = scratch_dir() / "bin_out";
  CHECK(run_binary("solve " + good.string() + " --out-dir " + out.string()) ==
        0);
  CHECK(fs::exists(out / "solve.json"));

  json broken = sphere_config(1.0, 3);
  broken["geometry"].erase("radius");
  const fs::path bad = write_config(broken, "bad.json");
  CHECK(run_binary("solve " + bad.string() + " --out-dir " + out.string()) ==
        2);
  CHECK(fs::exists(out / "error.json"));

  CHECK(run_binary("solve /nonexistent/config.json") == 2);
  CHECK(run_binary("bogus-subcommand " + good.string()) == 2);
  CHECK(run_binary("solve") == 2);  // missing config positional
}
