#pragma once

// Cross-checks of the channel path: the Kraus-vs-master-equation grid and the
// audit of the closed-form reservoir operators.

#include <optional>
#include <string>
#include <vector>

#include "qres/channel.hpp"
#include "qres/reservoir.hpp"

namespace qres {

struct OracleCase {
  ReservoirParams params;  // applied to both qubits
  double m_fraction = 0.0;
  double t_scaled = 0.0;   // gamma t
};

struct OracleResult {
  OracleCase input;
  double trace_distance = 0.0;       // max over probe states
  double completeness_defect = 0.0;  // of the choi-derived set
  double min_eigenvalue = 0.0;       // min over evolved probe states
  double trace_defect = 0.0;         // max over evolved probe states
};

inline constexpr double kOracleTolerance = 1e-6;

// n in {0, 0.2, 0.6, 6} x m-fraction in {0, 0.2, 0.9} x theta in {0, pi/2}
// x gamma t in {0.25, 1, 2, 5}. Redundant combinations (theta without
// squeezing, squeezing without a bound) are collapsed.
std::vector<OracleCase> default_oracle_grid();

// Compares choi-derived Kraus evolution with direct two-qubit integration on
// |phi+> and on a generic state with nonzero Bloch vectors.
OracleResult run_oracle_case(const OracleCase& c, double integrator_tol = 1e-10);

std::vector<OracleResult> oracle_check_serial(const std::vector<OracleCase>& grid);
std::vector<OracleResult> oracle_check_parallel(const std::vector<OracleCase>& grid);

struct KrausAuditRow {
  Provenance provenance;
  std::optional<double> completeness_defect;
  // Trace distance between the normalized Choi state of this set and the
  // choi-derived one.
  std::optional<double> choi_distance;
  std::string error;  // set when the construction itself fails
};

struct KrausAudit {
  ReservoirParams params;
  double t = 0.0;
  std::vector<KrausAuditRow> rows;  // literal, repaired, choi-derived
  // Bell-diagonal closed form with the printed index ranges and the repaired
  // amplitudes, against the product channel on |phi+>.
  std::optional<double> closed_form_distance;
  std::string closed_form_error;
};

KrausAudit audit_kraus(const ReservoirParams& p, double t);

}  // namespace qres
