#include "qres/reservoir.hpp"

#include <cmath>
#include <string>

#include "qres/error.hpp"

namespace qres {

double ReservoirParams::m_bound() const { return std::sqrt(n * (n + 1.0)); }

ReservoirParams ReservoirParams::make(double gamma, double n, double m_abs, double theta) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::OutOfRange, "reservoir rate gamma must be positive", gamma);
  }
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::OutOfRange, "mean photon number must be non-negative", n);
  }
  if (!(m_abs >= 0.0) || !std::isfinite(m_abs)) {
    throw Error(ErrorKind::OutOfRange, "squeezing magnitude must be non-negative", m_abs);
  }
  if (!std::isfinite(theta)) throw Error(ErrorKind::OutOfRange, "squeezing phase must be finite", theta);
  ReservoirParams p{gamma, n, m_abs, theta};
  if (m_abs > p.m_bound() + 1e-12) {
    throw Error(ErrorKind::OutOfRange,
                "squeezing |M| exceeds sqrt(n(n+1)) = " + std::to_string(p.m_bound()), m_abs - p.m_bound());
  }
  return p;
}

ReservoirParams ReservoirParams::with_m_fraction(double gamma, double n, double fraction, double theta) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "m-fraction must lie in [0, 1]", fraction);
  }
  return make(gamma, n, fraction * std::sqrt(n * (n + 1.0)), theta);
}

}  // namespace qres
