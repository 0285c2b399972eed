// qres: two qubits in local thermal or squeezed reservoirs.
//
//   qres evolve         one reservoir setting, time series CSV
//   qres sweep          grid of settings, time series CSV + summary CSV
//   qres validate-kraus completeness / distance audit of the Kraus constructions
//   qres oracle-check   Kraus channel vs direct master-equation integration
//
// Exit status: 0 success, 1 validation or runtime failure, 2 usage error.
// Failures print a single "error: kind=... defect=... message=..." line.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qres/diagnostics.hpp"
#include "qres/error.hpp"
#include "qres/measures.hpp"
#include "qres/sweep.hpp"

namespace {

struct TripleArgs {
  double c1 = qres::kMaximalTriple.c1;
  double c2 = qres::kMaximalTriple.c2;
  double c3 = qres::kMaximalTriple.c3;

  void attach(CLI::App* app) {
    app->add_option("--c1", c1, "XX correlation of the initial Bell-diagonal state")->capture_default_str();
    app->add_option("--c2", c2, "YY correlation")->capture_default_str();
    app->add_option("--c3", c3, "ZZ correlation")->capture_default_str();
  }
  qres::CorrelationTriple triple() const { return {c1, c2, c3}; }
};

struct TimeArgs {
  double t_max = 10.0;
  std::size_t samples = 256;
  double esd_eps = qres::kDefaultEsdEps;
  std::string out;
  std::string summary_out;

  void attach(CLI::App* app) {
    app->add_option("--t-max", t_max, "horizon in scaled time G t, G = (gamma1 + gamma2) / 2")
        ->capture_default_str();
    app->add_option("--samples", samples, "time samples per setting (>= 2)")->capture_default_str();
    app->add_option("--esd-eps", esd_eps, "negativity threshold for sudden death")->capture_default_str();
    app->add_option("--out", out, "time series CSV path")->required();
    app->add_option("--summary-out", summary_out, "summary CSV path (default <out stem>.summary.csv)");
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("none"); }

void print_summaries(const std::vector<qres::PointResult>& results) {
  for (const auto& r : results) {
    const auto& s = r.summary;
    std::cout << "grid_id=" << s.grid_id << " esd_time=" << fmt(s.esd_time)
              << " disturbance_plateau_time=" << fmt(s.disturbance_plateau_time)
              << " entropy_saturation_time=" << fmt(s.entropy_saturation_time)
              << " entropy_saturation_value=" << fmt(s.entropy_saturation_value) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and information loss of a qubit pair in local thermal/squeezed reservoirs"};
  app.require_subcommand(1);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "evolve one reservoir setting and write a time series CSV");
  TripleArgs ev_triple;
  TimeArgs ev_time;
  double ev_n = 0.0, ev_m_frac = 0.0, ev_theta = 0.0, ev_gamma1 = 1.0, ev_gamma2 = 1.0;
  std::optional<double> ev_n2, ev_m_abs;
  ev_triple.attach(evolve);
  ev_time.attach(evolve);
  evolve->add_option("--n", ev_n, "mean photon number of qubit A's reservoir (and B's unless --n2)")
      ->capture_default_str();
  evolve->add_option("--n2", ev_n2, "mean photon number of qubit B's reservoir");
  auto* ev_frac_opt =
      evolve->add_option("--m-frac", ev_m_frac, "squeezing |M| as a fraction of sqrt(n(n+1))")->capture_default_str();
  evolve->add_option("--m-abs", ev_m_abs, "absolute squeezing |M| (checked against the bound)")
      ->excludes(ev_frac_opt);
  evolve->add_option("--theta", ev_theta, "squeezing phase (radians)")->capture_default_str();
  evolve->add_option("--gamma1", ev_gamma1, "emission rate of qubit A")->capture_default_str();
  evolve->add_option("--gamma2", ev_gamma2, "emission rate of qubit B")->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid of symmetric reservoir settings");
  TripleArgs sw_triple;
  TimeArgs sw_time;
  std::vector<double> sw_n{1e-5, 0.05, 0.2, 0.6}, sw_m_frac{0.0};
  std::optional<double> sw_m_abs;
  double sw_theta = 0.0, sw_gamma1 = 1.0, sw_gamma2 = 1.0;
  bool sw_serial = false;
  sw_triple.attach(sweep);
  sw_time.attach(sweep);
  sweep->add_option("--n-list", sw_n, "comma-separated mean photon numbers")->delimiter(',')->capture_default_str();
  auto* sw_frac_opt = sweep->add_option("--m-frac-list", sw_m_frac, "comma-separated squeezing fractions")
                          ->delimiter(',')
                          ->capture_default_str();
  sweep->add_option("--m-abs", sw_m_abs, "absolute |M| used at every n (checked against each bound)")
      ->excludes(sw_frac_opt);
  sweep->add_option("--theta", sw_theta, "squeezing phase (radians)")->capture_default_str();
  sweep->add_option("--gamma1", sw_gamma1, "emission rate of qubit A")->capture_default_str();
  sweep->add_option("--gamma2", sw_gamma2, "emission rate of qubit B")->capture_default_str();
  sweep->add_flag("--serial", sw_serial, "run grid points on the serial reference path");

  // validate-kraus
  auto* vk = app.add_subcommand("validate-kraus", "completeness and Choi distance of the three Kraus constructions");
  double vk_n = 0.0, vk_m_frac = 0.0, vk_theta = 0.0, vk_gamma = 1.0, vk_gamma_t = 1.0;
  std::optional<double> vk_m_abs;
  vk->add_option("--n", vk_n, "mean photon number")->capture_default_str();
  auto* vk_frac_opt = vk->add_option("--m-frac", vk_m_frac, "squeezing fraction of the bound")->capture_default_str();
  vk->add_option("--m-abs", vk_m_abs, "absolute squeezing |M|")->excludes(vk_frac_opt);
  vk->add_option("--theta", vk_theta, "squeezing phase (radians)")->capture_default_str();
  vk->add_option("--gamma", vk_gamma, "emission rate")->capture_default_str();
  vk->add_option("--gamma-t", vk_gamma_t, "evaluation time in units of 1/gamma")->capture_default_str();

  // oracle-check
  auto* oc = app.add_subcommand("oracle-check", "compare Kraus evolution with direct integration over a grid");
  double oc_tol = qres::kOracleTolerance;
  bool oc_serial = false;
  oc->add_option("--tol", oc_tol, "maximum allowed trace distance")->capture_default_str();
  oc->add_flag("--serial", oc_serial, "run on the serial reference path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: kind=Usage defect=0 message=" << e.what() << '\n';
    return 2;
  }

  try {
    if (*evolve) {
      auto make = [&](double gamma, double n) {
        return ev_m_abs ? qres::ReservoirParams::make(gamma, n, *ev_m_abs, ev_theta)
                        : qres::ReservoirParams::with_m_fraction(gamma, n, ev_m_frac, ev_theta);
      };
      qres::SweepConfig cfg;
      cfg.c = ev_triple.triple();
      cfg.points = {{make(ev_gamma1, ev_n), make(ev_gamma2, ev_n2.value_or(ev_n))}};
      cfg.t_max = ev_time.t_max;
      cfg.samples = ev_time.samples;
      cfg.esd_eps = ev_time.esd_eps;
      cfg.output_path = ev_time.out;
      cfg.summary_path = ev_time.summary_out;
      print_summaries(qres::run_sweep(cfg, false));
      return 0;
    }

    if (*sweep) {
      qres::SweepConfig cfg;
      cfg.c = sw_triple.triple();
      if (sw_m_abs) {
        for (double n : sw_n) {
          cfg.points.push_back({qres::ReservoirParams::make(sw_gamma1, n, *sw_m_abs, sw_theta),
                                qres::ReservoirParams::make(sw_gamma2, n, *sw_m_abs, sw_theta)});
        }
      } else {
        cfg.points = qres::symmetric_grid(sw_n, sw_m_frac, sw_theta, sw_gamma1, sw_gamma2);
      }
      cfg.t_max = sw_time.t_max;
      cfg.samples = sw_time.samples;
      cfg.esd_eps = sw_time.esd_eps;
      cfg.output_path = sw_time.out;
      cfg.summary_path = sw_time.summary_out;
      print_summaries(qres::run_sweep(cfg, !sw_serial));
      return 0;
    }

    if (*vk) {
      const auto p = vk_m_abs ? qres::ReservoirParams::make(vk_gamma, vk_n, *vk_m_abs, vk_theta)
                              : qres::ReservoirParams::with_m_fraction(vk_gamma, vk_n, vk_m_frac, vk_theta);
      const auto audit = qres::audit_kraus(p, vk_gamma_t / vk_gamma);
      std::cout << "gamma=" << fmt(p.gamma) << " n=" << fmt(p.n) << " m_abs=" << fmt(p.m_abs)
                << " theta=" << fmt(p.theta) << " gamma_t=" << fmt(vk_gamma_t) << '\n';
      std::cout << "provenance,completeness_defect,choi_trace_distance,error\n";
      bool ok = true;
      for (const auto& row : audit.rows) {
        std::cout << qres::to_string(row.provenance) << ',' << fmt(row.completeness_defect) << ','
                  << fmt(row.choi_distance) << ',' << row.error << '\n';
        if (row.provenance == qres::Provenance::ChoiDerived &&
            !(row.completeness_defect && *row.completeness_defect <= 1e-10)) {
          ok = false;
        }
      }
      std::cout << "closed_form_printed_vs_channel," << fmt(audit.closed_form_distance) << ','
                << audit.closed_form_error << '\n';
      if (!ok) {
        std::cerr << "error: kind=ChannelNotTP defect=0 message=choi-derived set fails completeness\n";
        return 1;
      }
      return 0;
    }

    if (*oc) {
      const auto grid = qres::default_oracle_grid();
      const auto results = oc_serial ? qres::oracle_check_serial(grid) : qres::oracle_check_parallel(grid);
      double worst = 0.0;
      std::cout << "n,m_fraction,theta,gamma_t,trace_distance,completeness_defect\n";
      for (const auto& r : results) {
        std::cout << fmt(r.input.params.n) << ',' << fmt(r.input.m_fraction) << ',' << fmt(r.input.params.theta)
                  << ',' << fmt(r.input.t_scaled) << ',' << fmt(r.trace_distance) << ','
                  << fmt(r.completeness_defect) << '\n';
        worst = std::max(worst, r.trace_distance);
      }
      std::cout << "points=" << results.size() << " max_trace_distance=" << fmt(worst) << '\n';
      if (worst > oc_tol) {
        std::cerr << "error: kind=OracleMismatch defect=" << fmt(worst)
                  << " message=trace distance exceeds tolerance\n";
        return 1;
      }
      return 0;
    }
  } catch (const qres::Error& e) {
    std::cerr << "error: " << e.one_line() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=Internal defect=0 message=" << e.what() << '\n';
    return 1;
  }
  return 0;
}
