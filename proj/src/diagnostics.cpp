#include "qres/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "qres/error.hpp"
#include "qres/lindblad.hpp"
#include "qres/states.hpp"

namespace qres {

std::vector<OracleCase> default_oracle_grid() {
  const std::vector<double> ns{0.0, 0.2, 0.6, 6.0};
  const std::vector<double> fractions{0.0, 0.2, 0.9};
  const std::vector<double> thetas{0.0, std::numbers::pi / 2};
  const std::vector<double> times{0.25, 1.0, 2.0, 5.0};

  std::vector<OracleCase> grid;
  for (double n : ns) {
    for (double f : fractions) {
      if (f > 0.0 && n == 0.0) continue;
      for (double th : thetas) {
        if (f == 0.0 && th != 0.0) continue;
        for (double T : times) grid.push_back({ReservoirParams::with_m_fraction(1.0, n, f, th), f, T});
      }
    }
  }
  return grid;
}

namespace {

DensityMatrix generic_probe() {
  GeneralStateSpec spec;
  spec.s = {0.2, -0.1, 0.3};
  spec.t = {-0.15, 0.2, -0.25};
  spec.corr = {{{0.3, 0.1, 0.0}, {0.0, -0.25, 0.05}, {0.0, 0.0, 0.2}}};
  return state_from_bloch(spec);
}

}  // namespace

OracleResult run_oracle_case(const OracleCase& c, double integrator_tol) {
  const double t = c.t_scaled / c.params.gamma;
  const KrausSet k = kraus_choi(c.params, t);
  const LindbladSpec spec{c.params, c.params};

  OracleResult r{c, 0.0, k.completeness_defect, 1.0, 0.0};
  for (const DensityMatrix& rho0 : {state_from_correlations(kMaximalTriple), generic_probe()}) {
    const ChannelOutput via_kraus = evolve_local(rho0, k, k);
    const auto direct = integrate(rho0, spec, t, integrator_tol);
    r.trace_distance = std::max(r.trace_distance, trace_distance(via_kraus.state.mat(), direct.state.mat()));
    r.trace_defect = std::max(r.trace_defect, via_kraus.trace_defect);
    r.min_eigenvalue = std::min(r.min_eigenvalue, hermitian_eigenvalues(via_kraus.state.mat())[0]);
  }
  return r;
}

std::vector<OracleResult> oracle_check_serial(const std::vector<OracleCase>& grid) {
  std::vector<OracleResult> out;
  out.reserve(grid.size());
  for (const auto& c : grid) out.push_back(run_oracle_case(c));
  return out;
}

std::vector<OracleResult> oracle_check_parallel(const std::vector<OracleCase>& grid) {
  std::vector<OracleResult> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = run_oracle_case(grid[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

KrausAudit audit_kraus(const ReservoirParams& p, double t) {
  KrausAudit audit{p, t, {}, std::nullopt, {}};
  const KrausSet choi = kraus_choi(p, t);
  const Mat4 choi_ref = choi_of(choi.ops);

  auto row_for = [&](Provenance prov, auto&& build) {
    KrausAuditRow row{prov, std::nullopt, std::nullopt, {}};
    try {
      const KrausSet k = build();
      row.completeness_defect = k.completeness_defect;
      row.choi_distance = 0.25 * trace_norm(choi_of(k.ops) - choi_ref);
    } catch (const Error& e) {
      row.error = e.one_line();
    }
    audit.rows.push_back(row);
  };
  row_for(Provenance::PaperLiteral, [&] { return kraus_paper(p, t); });
  row_for(Provenance::PaperRepaired, [&] { return kraus_repaired(p, t); });
  row_for(Provenance::ChoiDerived, [&] { return choi; });

  try {
    const KrausSet rep = kraus_repaired(p, t);
    const DensityMatrix rho0 = state_from_correlations(kMaximalTriple);
    const DensityMatrix closed = closed_form_output(kMaximalTriple, rep, rep, CoefficientRule::Printed);
    const DensityMatrix direct = apply_local_channels(rho0, choi, choi);
    audit.closed_form_distance = trace_distance(closed.mat(), direct.mat());
  } catch (const Error& e) {
    audit.closed_form_error = e.one_line();
  }
  return audit;
}

}  // namespace qres
