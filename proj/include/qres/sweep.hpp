#pragma once

// Parameter sweeps over local reservoir settings.
//
// Times are reported as scaled time T = G t where G = (gamma_a + gamma_b) / 2
// is the mean single-qubit emission rate. Each grid point is an independent
// work item: sweep_parallel() distributes them with OpenMP, sweep_serial() is
// the reference loop, and both produce identical rows.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qres/channel.hpp"
#include "qres/reservoir.hpp"
#include "qres/states.hpp"

namespace qres {

struct GridPoint {
  ReservoirParams a;
  ReservoirParams b;
};

struct SweepConfig {
  CorrelationTriple c = kMaximalTriple;
  std::vector<GridPoint> points;
  double t_max = 10.0;  // scaled time
  std::size_t samples = 256;
  double esd_eps = 1e-6;
  double channel_tol = 1e-10;
  std::string output_path;
  std::string summary_path;  // empty: <output stem>.summary.csv
};

inline constexpr double kPlateauSlope = 1e-4;     // |dD/dT|
inline constexpr double kSaturationStep = 1e-4;   // |S_{k+1} - S_k|

// Symmetric reservoirs over the Cartesian product n x m-fraction (n outer).
std::vector<GridPoint> symmetric_grid(const std::vector<double>& n_values, const std::vector<double>& m_fractions,
                                      double theta = 0.0, double gamma_a = 1.0, double gamma_b = 1.0);

// Throws Error{InvalidConfig} on samples < 2, t_max <= 0 or an empty grid.
void validate_config(const SweepConfig& cfg);

double rate_unit(const GridPoint& p);

struct TimeSeriesRow {
  double t_scaled = 0.0;
  double n1 = 0.0, n2 = 0.0, m1 = 0.0, m2 = 0.0, theta1 = 0.0, theta2 = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  double doe = 0.0;
  double disturbance = 0.0;
  double entropy = 0.0;
  double trace_defect = 0.0;
  Provenance provenance = Provenance::ChoiDerived;
};

struct PointSummary {
  std::size_t grid_id = 0;
  std::optional<double> esd_time;
  std::optional<double> disturbance_plateau_time;
  std::optional<double> entropy_saturation_time;
  std::optional<double> entropy_saturation_value;
};

struct PointResult {
  std::vector<TimeSeriesRow> rows;
  PointSummary summary;
};

// Kernel: one grid point, all time samples, plus its summary.
PointResult evolve_point(const SweepConfig& cfg, std::size_t grid_id);

// State of the pair at scaled time T for one grid point, from scratch.
ChannelOutput evolve_at(const DensityMatrix& rho0, const GridPoint& p, double t_scaled, double tol = 1e-10);

std::vector<PointResult> sweep_serial(const SweepConfig& cfg);
std::vector<PointResult> sweep_parallel(const SweepConfig& cfg);

// Single grid point; cfg.points must hold exactly one entry.
std::vector<TimeSeriesRow> run_evolve(const SweepConfig& cfg);

void write_rows_csv(std::ostream& os, const std::vector<PointResult>& results);
void write_summary_csv(std::ostream& os, const std::vector<PointResult>& results);

std::string default_summary_path(const std::string& output_path);

// Runs the sweep and writes both CSV files. Returns the results.
std::vector<PointResult> run_sweep(const SweepConfig& cfg, bool parallel = true);

}  // namespace qres
