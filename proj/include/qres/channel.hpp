#pragma once

// Local reservoir channels in operator-sum form.
//
// Three constructions coexist:
//   * paper-literal  : the closed-form reservoir operators exactly as printed.
//                      They fail the completeness relation (already at t = 0)
//                      and are kept for diagnostics only.
//   * paper-repaired : the same amplitudes with kappa_1 = a1|0><0| + b1|1><1|
//                      and kappa_2 = b2|0><1| (amplitude-damping shape).
//   * choi-derived   : eigen-decomposition of the Choi matrix of the
//                      integrated single-qubit master equation. This is the
//                      construction used everywhere by default.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "qres/linalg.hpp"
#include "qres/reservoir.hpp"
#include "qres/states.hpp"

namespace qres {

enum class Provenance { PaperLiteral, PaperRepaired, ChoiDerived };

std::string_view to_string(Provenance p);

// Named amplitudes alpha_j, beta_j of the closed-form operators (index j-1).
// alpha_2 and beta_4 do not exist and stay zero.
struct ReservoirAmplitudes {
  std::array<cplx, 4> alpha{};
  std::array<cplx, 4> beta{};
};

struct KrausSet {
  std::vector<Mat2> ops;
  Provenance provenance = Provenance::ChoiDerived;
  double completeness_defect = 0.0;
  std::optional<ReservoirAmplitudes> amplitudes;
};

// ||sum_k K_k^dagger K_k - I||_F
double completeness_defect(const std::vector<Mat2>& ops);

// Throws Error{NumericalDomain} if a radicand is below -1e-12 or a value
// overflows. eta t < 1e-8 is evaluated through the analytic eta -> 0 limit.
ReservoirAmplitudes reservoir_amplitudes(const ReservoirParams& p, double t);

KrausSet kraus_paper(const ReservoirParams& p, double t);
KrausSet kraus_repaired(const ReservoirParams& p, double t);

// Images of the four basis operators |i><j| under the single-qubit reservoir
// evolution, advanced incrementally along increasing t.
class ChoiTrajectory {
 public:
  explicit ChoiTrajectory(const ReservoirParams& p);

  void advance_to(double t, double tol = 1e-10);
  double time() const { return t_; }
  const ReservoirParams& params() const { return params_; }

  // C = sum_ij |i><j| (x) Lambda_t(|i><j|)
  Mat4 choi() const;

 private:
  ReservoirParams params_;
  double t_ = 0.0;
  std::array<Mat2, 4> images_;  // index 2i+j
};

Mat4 propagator_choi(const ReservoirParams& p, double t, double tol = 1e-10);

// Choi matrix of an operator-sum set (same index convention).
Mat4 choi_of(const std::vector<Mat2>& ops);

// Eigenpairs with lambda > tol become sqrt(lambda) unvec(v), largest first.
// Throws Error{NotCP} when the smallest eigenvalue is below -cp_tol; the
// integrated propagator carries eigenvalues of order -1e-11 near rank loss.
inline constexpr double kCpGate = 1e-9;
KrausSet kraus_from_choi(const Mat4& choi, double tol = 1e-12, double cp_tol = kCpGate);

inline KrausSet kraus_choi(const ReservoirParams& p, double t, double tol = 1e-10) {
  return kraus_from_choi(propagator_choi(p, t, tol));
}

KrausSet identity_kraus();

// Independent: sum over (j, k) of (K_j (x) K_k). Paired: sum over j of
// (K_j (x) K_j), which is not a product channel and exists for diagnostics.
enum class SumMode { Independent, Paired };

struct ChannelOptions {
  SumMode sum = SumMode::Independent;
  // Sets with completeness defect > 1e-8 are rejected unless this is set.
  bool allow_incomplete = false;
};

inline constexpr double kCompletenessGate = 1e-8;
inline constexpr double kTraceGate = 1e-8;

// Raw operator-sum image, no gates or normalization.
Mat4 apply_kraus_raw(const Mat4& rho, const KrausSet& ka, const KrausSet& kb, SumMode sum);

struct ChannelOutput {
  DensityMatrix state;
  double trace_defect;  // |Tr(raw image) - 1| before renormalization
};

ChannelOutput evolve_local(const DensityMatrix& rho, const KrausSet& ka, const KrausSet& kb,
                           const ChannelOptions& opts = {});

inline DensityMatrix apply_local_channels(const DensityMatrix& rho, const KrausSet& ka, const KrausSet& kb,
                                          const ChannelOptions& opts = {}) {
  return evolve_local(rho, ka, kb, opts).state;
}

// Bell-diagonal closed form. The output is assembled block by block from
// s1..s8 and normalized by its trace.
struct ClosedFormCoefficients {
  std::array<cplx, 8> s{};  // s[0] = s1, ..., s[7] = s8
};

enum class CoefficientRule {
  // Sums over every operator index with landing amplitudes: for each K,
  // alpha = the amplitude that lands in |0>, beta = the amplitude that lands
  // in |1>. Operators must be diagonal or anti-diagonal. Equals the paired
  // (single-index) operator sum on Bell-diagonal inputs.
  Landing,
  // The printed index ranges (j in {1,3}, plus j in {2,4} for s4) applied to
  // the named amplitudes of a paper-literal or paper-repaired set.
  Printed,
};

ClosedFormCoefficients closed_form_coefficients(const KrausSet& ka, const KrausSet& kb, CoefficientRule rule);

// Unnormalized block assembly from the coefficients.
Mat4 closed_form_matrix(const CorrelationTriple& c, const ClosedFormCoefficients& s);

DensityMatrix closed_form_output(const CorrelationTriple& c, const KrausSet& ka, const KrausSet& kb,
                                 CoefficientRule rule = CoefficientRule::Landing);

}  // namespace qres
