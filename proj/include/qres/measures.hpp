#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qres/linalg.hpp"
#include "qres/states.hpp"

namespace qres {

// Sum of |eigenvalues| of the partial transpose, minus one. Values below
// 1e-12 are reported as zero.
double negativity(const DensityMatrix& rho, Subsystem transposed = Subsystem::B);

// Trace overlap Tr(rho_f rho_i). This is not the Uhlmann fidelity; the two
// differ on mixed states.
double fidelity(const DensityMatrix& rho_i, const DensityMatrix& rho_f);

double disturbance(const DensityMatrix& rho_i, const DensityMatrix& rho_f);

// Von Neumann entropy -Tr(rho log2 rho) of the evolved pair, in bits.
double entropy_exchange(const DensityMatrix& rho);

struct SeriesPoint {
  double t;
  double value;
};

inline constexpr double kDefaultEsdEps = 1e-6;
inline constexpr int kEsdBisections = 10;

// First time after which the negativity stays below eps. When `refine` is
// given, the bracketing grid interval is bisected kEsdBisections times on it
// (resolution step / 2^10). Throws Error{EmptySeries}.
std::optional<double> esd_time(const std::vector<SeriesPoint>& series, double eps = kDefaultEsdEps,
                               const std::function<double(double)>& refine = {});

// First sample after which every forward difference |dv/dt| stays below
// `slope`.
std::optional<double> plateau_onset(const std::vector<SeriesPoint>& series, double slope);

// First sample after which every step change |v_{k+1} - v_k| stays below
// `step`.
std::optional<double> saturation_onset(const std::vector<SeriesPoint>& series, double step);

}  // namespace qres
