#include "qres/states.hpp"

#include <cmath>
#include <string>

#include "qres/error.hpp"

namespace qres {

struct StateValidator {
  static DensityMatrix make(const Mat4& m) { return DensityMatrix(m); }
};

namespace {

constexpr double kWeightFloor = -1e-12;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

DensityMatrix validate_state(const Mat4& rho, const ValidationTolerances& tol) {
  const double herm = hermiticity_defect(rho);
  if (herm > tol.hermitian) {
    throw Error(ErrorKind::NotHermitian, "state is not Hermitian (defect " + fmt(herm) + ")", herm);
  }
  const double tr_defect = std::abs(trace(rho) - cplx{1.0});
  if (tr_defect > tol.trace) {
    throw Error(ErrorKind::TraceDefect, "state trace differs from 1 by " + fmt(tr_defect), tr_defect);
  }

  const auto eig = hermitian_eig(rho, 1e-8);
  const double min_ev = eig.values[0];
  if (min_ev < -tol.negative) {
    throw Error(ErrorKind::NotPositive, "state has negative eigenvalue " + fmt(min_ev), -min_ev);
  }
  if (min_ev >= 0.0) return StateValidator::make(rho);

  // Clamp rounding-level negative eigenvalues and renormalize.
  Mat4 fixed;
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double lam = std::max(0.0, eig.values[k]);
    total += lam;
    const auto v = eig.vector(k);
    fixed += outer(v, v) * cplx{lam};
  }
  return StateValidator::make(fixed * cplx{1.0 / total});
}

BellWeights bell_weights(const CorrelationTriple& c) {
  return {
      (1.0 + c.c1 - c.c2 + c.c3) / 4.0,
      (1.0 - c.c1 + c.c2 + c.c3) / 4.0,
      (1.0 - c.c1 - c.c2 - c.c3) / 4.0,
      (1.0 + c.c1 + c.c2 - c.c3) / 4.0,
  };
}

namespace bell {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

std::array<cplx, 4> phi_plus() { return {kInvSqrt2, 0.0, 0.0, kInvSqrt2}; }
std::array<cplx, 4> phi_minus() { return {kInvSqrt2, 0.0, 0.0, -kInvSqrt2}; }
std::array<cplx, 4> psi_plus() { return {0.0, kInvSqrt2, kInvSqrt2, 0.0}; }
std::array<cplx, 4> psi_minus() { return {0.0, kInvSqrt2, -kInvSqrt2, 0.0}; }

}  // namespace bell

Mat4 bell_mixture(const BellWeights& w) {
  const auto pp = bell::phi_plus(), pm = bell::phi_minus();
  const auto sp = bell::psi_plus(), sm = bell::psi_minus();
  return outer(pp, pp) * cplx{w.phi_plus} + outer(pm, pm) * cplx{w.phi_minus} +
         outer(sm, sm) * cplx{w.psi_minus} + outer(sp, sp) * cplx{w.psi_plus};
}

DensityMatrix state_from_bloch(const GeneralStateSpec& spec) {
  const std::array<Mat2, 3> sigma{pauli::x(), pauli::y(), pauli::z()};
  const Mat2 id = Mat2::identity();

  Mat4 rho = Mat4::identity();
  for (std::size_t j = 0; j < 3; ++j) {
    rho += kron(sigma[j], id) * cplx{spec.s[j]};
    rho += kron(id, sigma[j]) * cplx{spec.t[j]};
    for (std::size_t k = 0; k < 3; ++k) {
      if (spec.corr[j][k] != 0.0) rho += kron(sigma[j], sigma[k]) * cplx{spec.corr[j][k]};
    }
  }
  return validate_state(rho * cplx{0.25});
}

DensityMatrix state_from_correlations(const CorrelationTriple& c) {
  const BellWeights w = bell_weights(c);
  const std::array<std::pair<const char*, double>, 4> named{{
      {"phi+", w.phi_plus},
      {"phi-", w.phi_minus},
      {"psi-", w.psi_minus},
      {"psi+", w.psi_plus},
  }};
  for (const auto& [name, weight] : named) {
    if (weight < kWeightFloor) {
      throw Error(ErrorKind::NotPositive,
                  std::string("correlation triple gives negative ") + name + " weight " + fmt(weight), -weight);
    }
  }
  GeneralStateSpec spec;
  spec.corr[0][0] = c.c1;
  spec.corr[1][1] = c.c2;
  spec.corr[2][2] = c.c3;
  return state_from_bloch(spec);
}

DensityMatrix werner(double x) {
  if (x < -1.0 / 3.0 - 1e-12 || x > 1.0 + 1e-12) {
    throw Error(ErrorKind::OutOfRange, "Werner parameter " + fmt(x) + " outside [-1/3, 1]", x);
  }
  const double rest = (1.0 - x) / 4.0;
  return validate_state(bell_mixture({rest, rest, (3.0 * x + 1.0) / 4.0, rest}));
}

}  // namespace qres
