#include "qres/sweep.hpp"

#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>

#include "qres/error.hpp"
#include "qres/measures.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qres {

std::vector<GridPoint> symmetric_grid(const std::vector<double>& n_values, const std::vector<double>& m_fractions,
                                      double theta, double gamma_a, double gamma_b) {
  std::vector<GridPoint> grid;
  for (double n : n_values) {
    for (double f : m_fractions) {
      grid.push_back({ReservoirParams::with_m_fraction(gamma_a, n, f, theta),
                      ReservoirParams::with_m_fraction(gamma_b, n, f, theta)});
    }
  }
  return grid;
}

void validate_config(const SweepConfig& cfg) {
  if (cfg.samples < 2) throw Error(ErrorKind::InvalidConfig, "samples must be at least 2", double(cfg.samples));
  if (!(cfg.t_max > 0.0)) throw Error(ErrorKind::InvalidConfig, "t-max must be positive", cfg.t_max);
  if (cfg.points.empty()) throw Error(ErrorKind::InvalidConfig, "sweep grid is empty");
  if (!(cfg.esd_eps > 0.0)) throw Error(ErrorKind::InvalidConfig, "esd-eps must be positive", cfg.esd_eps);
}

double rate_unit(const GridPoint& p) { return 0.5 * (p.a.gamma + p.b.gamma); }

ChannelOutput evolve_at(const DensityMatrix& rho0, const GridPoint& p, double t_scaled, double tol) {
  const double t = t_scaled / rate_unit(p);
  const KrausSet ka = kraus_choi(p.a, t, tol);
  const KrausSet kb = p.a == p.b ? ka : kraus_choi(p.b, t, tol);
  return evolve_local(rho0, ka, kb);
}

namespace {

std::string describe(const GridPoint& p, std::size_t id) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "grid point %zu (n1=%g n2=%g m1=%g m2=%g): ", id, p.a.n, p.b.n, p.a.m_abs,
                p.b.m_abs);
  return buf;
}

PointResult evolve_point_impl(const SweepConfig& cfg, std::size_t grid_id) {
  const GridPoint& p = cfg.points.at(grid_id);
  const DensityMatrix rho0 = state_from_correlations(cfg.c);
  const double unit = rate_unit(p);
  const bool shared = p.a == p.b;

  ChoiTrajectory traj_a(p.a), traj_b(p.b);
  PointResult out;
  out.rows.reserve(cfg.samples);
  std::vector<SeriesPoint> doe, dist, ent;

  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const double T = cfg.t_max * static_cast<double>(k) / static_cast<double>(cfg.samples - 1);
    const double t = T / unit;
    traj_a.advance_to(t, cfg.channel_tol);
    const KrausSet ka = kraus_from_choi(traj_a.choi());
    KrausSet kb = ka;
    if (!shared) {
      traj_b.advance_to(t, cfg.channel_tol);
      kb = kraus_from_choi(traj_b.choi());
    }
    const ChannelOutput evolved = evolve_local(rho0, ka, kb);

    TimeSeriesRow row;
    row.t_scaled = T;
    row.n1 = p.a.n;
    row.n2 = p.b.n;
    row.m1 = p.a.m_abs;
    row.m2 = p.b.m_abs;
    row.theta1 = p.a.theta;
    row.theta2 = p.b.theta;
    row.c1 = cfg.c.c1;
    row.c2 = cfg.c.c2;
    row.c3 = cfg.c.c3;
    row.doe = negativity(evolved.state);
    row.disturbance = disturbance(rho0, evolved.state);
    row.entropy = entropy_exchange(evolved.state);
    row.trace_defect = evolved.trace_defect;
    row.provenance = Provenance::ChoiDerived;
    out.rows.push_back(row);

    doe.push_back({T, row.doe});
    dist.push_back({T, row.disturbance});
    ent.push_back({T, row.entropy});
  }

  PointSummary& s = out.summary;
  s.grid_id = grid_id;
  s.esd_time = esd_time(doe, cfg.esd_eps, [&](double T) {
    return negativity(evolve_at(rho0, p, T, cfg.channel_tol).state);
  });
  s.disturbance_plateau_time = plateau_onset(dist, kPlateauSlope);
  s.entropy_saturation_time = saturation_onset(ent, kSaturationStep);
  if (s.entropy_saturation_time) {
    for (const auto& e : ent) {
      if (e.t == *s.entropy_saturation_time) s.entropy_saturation_value = e.value;
    }
  }
  return out;
}

}  // namespace

PointResult evolve_point(const SweepConfig& cfg, std::size_t grid_id) {
  try {
    return evolve_point_impl(cfg, grid_id);
  } catch (const Error& e) {
    throw Error(e.kind(), describe(cfg.points.at(grid_id), grid_id) + e.what(), e.defect());
  }
}

std::vector<PointResult> sweep_serial(const SweepConfig& cfg) {
  validate_config(cfg);
  std::vector<PointResult> results;
  results.reserve(cfg.points.size());
  for (std::size_t i = 0; i < cfg.points.size(); ++i) results.push_back(evolve_point(cfg, i));
  return results;
}

std::vector<PointResult> sweep_parallel(const SweepConfig& cfg) {
  validate_config(cfg);
  const auto n = static_cast<std::ptrdiff_t>(cfg.points.size());
  std::vector<std::optional<PointResult>> slots(cfg.points.size());
  std::vector<std::exception_ptr> errors(cfg.points.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      slots[i] = evolve_point(cfg, static_cast<std::size_t>(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }

  std::vector<PointResult> results;
  results.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    results.push_back(std::move(*slots[i]));
  }
  return results;
}

std::vector<TimeSeriesRow> run_evolve(const SweepConfig& cfg) {
  validate_config(cfg);
  if (cfg.points.size() != 1) {
    throw Error(ErrorKind::InvalidConfig, "evolve takes exactly one reservoir setting", double(cfg.points.size()));
  }
  return evolve_point(cfg, 0).rows;
}

namespace {

void put(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  os << buf;
}

void put(std::ostream& os, const std::optional<double>& v) {
  if (v) put(os, *v);
}

}  // namespace

void write_rows_csv(std::ostream& os, const std::vector<PointResult>& results) {
  os << "t_scaled,n1,n2,m1,m2,theta1,theta2,c1,c2,c3,doe,disturbance,entropy,trace_defect,provenance\n";
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      for (double v : {row.t_scaled, row.n1, row.n2, row.m1, row.m2, row.theta1, row.theta2, row.c1, row.c2,
                       row.c3, row.doe, row.disturbance, row.entropy, row.trace_defect}) {
        put(os, v);
        os << ',';
      }
      os << to_string(row.provenance) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& os, const std::vector<PointResult>& results) {
  os << "grid_id,esd_time,disturbance_plateau_time,entropy_saturation_value\n";
  for (const auto& r : results) {
    os << r.summary.grid_id << ',';
    put(os, r.summary.esd_time);
    os << ',';
    put(os, r.summary.disturbance_plateau_time);
    os << ',';
    put(os, r.summary.entropy_saturation_value);
    os << '\n';
  }
}

std::string default_summary_path(const std::string& output_path) {
  const auto slash = output_path.find_last_of('/');
  const auto dot = output_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return output_path.substr(0, dot) + ".summary.csv";
  }
  return output_path + ".summary.csv";
}

std::vector<PointResult> run_sweep(const SweepConfig& cfg, bool parallel) {
  auto results = parallel ? sweep_parallel(cfg) : sweep_serial(cfg);

  const std::string summary = cfg.summary_path.empty() ? default_summary_path(cfg.output_path) : cfg.summary_path;
  for (const auto& [path, rows] : {std::pair{cfg.output_path, true}, std::pair{summary, false}}) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    if (rows)
      write_rows_csv(f, results);
    else
      write_summary_csv(f, results);
    if (!f) throw Error(ErrorKind::Io, "write failed for " + path);
  }
  return results;
}

}  // namespace qres
