#include "qres/measures.hpp"

#include <cmath>

#include "qres/error.hpp"

namespace qres {

double negativity(const DensityMatrix& rho, Subsystem transposed) {
  double sum = 0.0;
  for (double v : hermitian_eigenvalues(partial_transpose(rho.mat(), transposed))) sum += std::abs(v);
  const double n = sum - 1.0;
  return n < 1e-12 ? 0.0 : n;
}

double fidelity(const DensityMatrix& rho_i, const DensityMatrix& rho_f) {
  // Tr(A B) = sum_ij A_ij B_ji
  double f = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) f += (rho_f(i, j) * rho_i(j, i)).real();
  return f;
}

double disturbance(const DensityMatrix& rho_i, const DensityMatrix& rho_f) {
  return 1.0 - fidelity(rho_i, rho_f);
}

double entropy_exchange(const DensityMatrix& rho) {
  double s = 0.0;
  for (double v : hermitian_eigenvalues(rho.mat())) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

namespace {

void require_nonempty(const std::vector<SeriesPoint>& series) {
  if (series.empty()) throw Error(ErrorKind::EmptySeries, "measure series is empty");
}

}  // namespace

std::optional<double> esd_time(const std::vector<SeriesPoint>& series, double eps,
                               const std::function<double(double)>& refine) {
  require_nonempty(series);
  std::size_t first = series.size();
  while (first > 0 && series[first - 1].value < eps) --first;
  if (first == series.size()) return std::nullopt;
  if (first == 0 || !refine) return series[first].t;

  double lo = series[first - 1].t;  // value >= eps
  double hi = series[first].t;      // value < eps
  for (int i = 0; i < kEsdBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (refine(mid) < eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::optional<double> plateau_onset(const std::vector<SeriesPoint>& series, double slope) {
  require_nonempty(series);
  std::size_t k = series.size() - 1;
  while (k > 0) {
    const double dt = series[k].t - series[k - 1].t;
    if (std::abs(series[k].value - series[k - 1].value) >= slope * dt) break;
    --k;
  }
  if (k == series.size() - 1 && series.size() > 1) return std::nullopt;
  return series[k].t;
}

std::optional<double> saturation_onset(const std::vector<SeriesPoint>& series, double step) {
  require_nonempty(series);
  std::size_t k = series.size() - 1;
  while (k > 0 && std::abs(series[k].value - series[k - 1].value) < step) --k;
  if (k == series.size() - 1 && series.size() > 1) return std::nullopt;
  return series[k].t;
}

}  // namespace qres
