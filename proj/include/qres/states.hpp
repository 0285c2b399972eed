#pragma once

#include <array>

#include "qres/linalg.hpp"

namespace qres {

// A validated two-qubit state: Hermitian, unit trace, positive semidefinite.
// Only validate_state() and the constructors below produce one.
class DensityMatrix {
 public:
  const Mat4& mat() const noexcept { return mat_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return mat_(r, c); }

 private:
  explicit DensityMatrix(const Mat4& m) : mat_(m) {}
  friend struct StateValidator;
  Mat4 mat_;
};

struct ValidationTolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double negative = 1e-9;  // eigenvalues in [-negative, 0) are clamped to zero
};

DensityMatrix validate_state(const Mat4& rho, const ValidationTolerances& tol = {});

// Diagonal Pauli-correlation parameters of a Bell-diagonal state.
struct CorrelationTriple {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

struct BellWeights {
  double phi_plus = 0.0;
  double phi_minus = 0.0;
  double psi_minus = 0.0;
  double psi_plus = 0.0;
};

BellWeights bell_weights(const CorrelationTriple& c);

// Bloch vectors of each qubit plus the 3x3 correlation dyadic.
struct GeneralStateSpec {
  std::array<double, 3> s{};
  std::array<double, 3> t{};
  std::array<std::array<double, 3>, 3> corr{};
};

DensityMatrix state_from_bloch(const GeneralStateSpec& spec);
DensityMatrix state_from_correlations(const CorrelationTriple& c);
DensityMatrix werner(double x);

// Mixture of Bell projectors with the given weights; no validation.
Mat4 bell_mixture(const BellWeights& w);

namespace bell {
std::array<cplx, 4> phi_plus();
std::array<cplx, 4> phi_minus();
std::array<cplx, 4> psi_plus();
std::array<cplx, 4> psi_minus();
}  // namespace bell

// Canonical inputs: |phi+><phi+| and its partially mixed neighbour.
inline constexpr CorrelationTriple kMaximalTriple{1.0, -1.0, 1.0};
inline constexpr CorrelationTriple kPartialTriple{0.85, -0.85, 0.85};

}  // namespace qres
