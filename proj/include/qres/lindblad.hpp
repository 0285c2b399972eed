#pragma once

// Direct integration of the local-reservoir master equation
//
//   d rho / dt = L_a(rho) + L_b(rho)
//
// with each L_i the thermal/squeezed dissipator written term by term:
//
//   L(rho) = -g/2 (1+N) (s+ s- rho - 2 s- rho s+ + rho s+ s-)
//            -g/2  N     (s- s+ rho - 2 s+ rho s- + rho s- s+)
//            -g/2  M     (s+ s+ rho - 2 s+ rho s+ + rho s+ s+)
//            -g/2  M*    (s- s- rho - 2 s- rho s- + rho s- s-)
//
// with s- = |0><1| (ground <- excited) and s+ = s-^dagger. For two qubits the
// ladder operators are embedded as s (x) I and I (x) s.
//
// This path is the ground truth that every Kraus-channel result is checked
// against, so it shares no code with the channel construction beyond the
// matrix type.

#include <cstddef>
#include <optional>

#include "qres/linalg.hpp"
#include "qres/reservoir.hpp"
#include "qres/states.hpp"

namespace qres {

struct LindbladSpec {
  ReservoirParams params_a;
  std::optional<ReservoirParams> params_b;  // absent: single-qubit mode
};

template <std::size_t N>
Mat<N> lindblad_rhs(const Mat<N>& rho, const LindbladSpec& spec);

template <class State>
struct IntegrationResult {
  State state;
  std::size_t step_count = 0;
  double error_estimate = 0.0;  // ||y_h - y_{h/2}||_F of the accepted pair
};

struct IntegratorOptions {
  double tol = 1e-8;
  std::size_t initial_steps = 0;  // 0: pick from the generator's rate scale
};

inline constexpr std::size_t kMaxIntegratorSteps = std::size_t{1} << 20;

// Classical RK4 with a fixed number of equal steps.
template <std::size_t N>
Mat<N> rk4_fixed(const Mat<N>& rho0, const LindbladSpec& spec, double t, std::size_t steps);

// Fixed-step RK4; the step count is doubled until the h and h/2 runs agree to
// opts.tol in Frobenius norm. The finer run is returned. Works on arbitrary
// matrices (the Choi construction propagates non-physical basis operators).
template <std::size_t N>
IntegrationResult<Mat<N>> integrate_matrix(const Mat<N>& rho0, const LindbladSpec& spec, double t,
                                           const IntegratorOptions& opts = {});

IntegrationResult<DensityMatrix> integrate(const DensityMatrix& rho0, const LindbladSpec& spec, double t,
                                           double tol = 1e-8);

// Long-time (gamma t = 40) state of one qubit started from identity/2.
Mat2 single_qubit_steady_state(const ReservoirParams& p);

}  // namespace qres
