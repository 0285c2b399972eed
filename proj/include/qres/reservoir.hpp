#pragma once

#include <complex>

namespace qres {

// Local Markovian reservoir seen by one qubit: emission rate, mean photon
// number, and two-photon correlation M = m_abs * e^{i theta}.
struct ReservoirParams {
  double gamma = 1.0;
  double n = 0.0;
  double m_abs = 0.0;
  double theta = 0.0;

  // Validates gamma > 0, n >= 0 and |M| <= sqrt(n (n + 1)).
  static ReservoirParams make(double gamma, double n, double m_abs = 0.0, double theta = 0.0);
  // m_abs given as a fraction in [0, 1] of the physicality bound.
  static ReservoirParams with_m_fraction(double gamma, double n, double fraction, double theta = 0.0);

  double zeta() const { return 0.5 * gamma * (2.0 * n + 1.0); }
  double eta() const { return gamma * m_abs; }
  double m_bound() const;
  std::complex<double> m() const { return std::polar(m_abs, theta); }
  // Thermal excited-state population n / (2n + 1).
  double excited_population() const { return n / (2.0 * n + 1.0); }

  bool operator==(const ReservoirParams&) const = default;
};

}  // namespace qres
