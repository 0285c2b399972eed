#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qres/error.hpp"
#include "qres/sweep.hpp"

using namespace qres;

namespace {

std::string rows_csv(const std::vector<PointResult>& r) {
  std::ostringstream os;
  write_rows_csv(os, r);
  return os.str();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

SweepConfig thermal_grid(std::size_t samples) {
  SweepConfig cfg;
  cfg.points = symmetric_grid({1e-5, 0.05, 0.2, 0.6}, {0.0});
  cfg.samples = samples;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SweepConfig cfg = thermal_grid(1);
  CHECK_THROWS_AS(sweep_serial(cfg), Error);
  cfg.samples = 8;
  cfg.t_max = 0.0;
  CHECK_THROWS_AS(sweep_serial(cfg), Error);
  cfg.t_max = 1.0;
  cfg.points.clear();
  CHECK_THROWS_AS(sweep_serial(cfg), Error);
  cfg = thermal_grid(8);
  CHECK_THROWS_AS(run_evolve(cfg), Error);
  cfg.c = {1, 1, 1};
  try {
    sweep_serial(cfg);
    FAIL("expected NotPositive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositive);
    CHECK(std::string(e.what()).find("grid point 0") != std::string::npos);
  }
}

TEST_CASE("identity limit at tiny horizon") {
  SweepConfig cfg;
  cfg.points = symmetric_grid({0.2}, {0.0});
  cfg.t_max = 1e-6;
  cfg.samples = 4;
  const auto rows = run_evolve(cfg);
  REQUIRE(rows.size() == 4);
  CHECK(rows.back().doe == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(rows.back().disturbance <= 1e-5);
  CHECK(rows.back().entropy <= 1e-4);
}

TEST_CASE("row and summary counts, file output") {
  const auto dir = std::filesystem::temp_directory_path() / "qres_test_sweep";
  std::filesystem::create_directories(dir);
  SweepConfig cfg = thermal_grid(256);
  cfg.output_path = (dir / "grid.csv").string();
  const auto results = run_sweep(cfg, true);
  CHECK(results.size() == 4);
  const std::string data = slurp(dir / "grid.csv");
  const std::string summary = slurp(dir / "grid.summary.csv");
  CHECK(count_lines(data) == 1 + 1024);
  CHECK(count_lines(summary) == 1 + 4);
  CHECK(data.rfind("t_scaled,n1,n2,m1,m2,theta1,theta2,c1,c2,c3,doe,disturbance,entropy,trace_defect,provenance\n",
                   0) == 0);
  CHECK(summary.rfind("grid_id,esd_time,disturbance_plateau_time,entropy_saturation_value\n", 0) == 0);
  for (const auto& r : results)
    for (const auto& row : r.rows) CHECK(row.trace_defect <= 1e-8);
  std::filesystem::remove_all(dir);
}

TEST_CASE("single point equals evolve") {
  SweepConfig cfg;
  cfg.points = symmetric_grid({0.2}, {0.5}, 0.3);
  cfg.samples = 32;
  const auto a = run_evolve(cfg);
  const auto b = sweep_parallel(cfg);
  REQUIRE(b.size() == 1);
  CHECK(rows_csv(b) == rows_csv({PointResult{a, b[0].summary}}));
}

TEST_CASE("serial and parallel agree byte for byte; runs are deterministic") {
  SweepConfig cfg;
  cfg.points = symmetric_grid({1e-5, 0.2, 0.6}, {0.0, 0.2}, 0.0, 1.0, 2.0);
  cfg.samples = 64;
  const std::string serial = rows_csv(sweep_serial(cfg));
  const std::string parallel = rows_csv(sweep_parallel(cfg));
  CHECK(serial == parallel);
  CHECK(rows_csv(sweep_parallel(cfg)) == parallel);
}

TEST_CASE("ESD time is stable across sampling") {
  std::vector<double> esd[3];
  const std::size_t counts[3] = {128, 256, 512};
  for (int i = 0; i < 3; ++i) {
    const auto res = sweep_parallel(thermal_grid(counts[i]));
    for (const auto& r : res) esd[i].push_back(r.summary.esd_time.value_or(-1.0));
  }
  // one bisection resolution of the coarsest grid
  const double resolution = 10.0 / 127.0 / 1024.0;
  for (std::size_t g = 0; g < esd[0].size(); ++g) {
    CHECK(std::abs(esd[0][g] - esd[1][g]) <= resolution);
    CHECK(std::abs(esd[0][g] - esd[2][g]) <= resolution);
  }
}

TEST_CASE("summary path") {
  CHECK(default_summary_path("out/ts.csv") == "out/ts.summary.csv");
  CHECK(default_summary_path("ts") == "ts.summary.csv");
  CHECK(default_summary_path("a.b/ts") == "a.b/ts.summary.csv");
}

TEST_CASE("unwritable output path") {
  SweepConfig cfg;
  cfg.points = symmetric_grid({0.2}, {0.0});
  cfg.samples = 4;
  cfg.output_path = "/nonexistent-dir/ts.csv";
  try {
    run_sweep(cfg, false);
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
    CHECK(std::string(e.what()).find("/nonexistent-dir/ts.csv") != std::string::npos);
  }
}
