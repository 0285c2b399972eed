#include "qres/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "qres/error.hpp"

namespace qres {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalStop = 1e-14;

template <std::size_t N>
double off_diagonal_norm(const Mat<N>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

// A <- J^dagger A J and V <- V J for the plane rotation J acting on (p, q)
// that zeroes A(p, q). J = diag(1, e^{-i phi}) * [[c, s], [-s, c]].
template <std::size_t N>
void rotate(Mat<N>& a, Mat<N>& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  const cplx phase = apq / mag;  // e^{i phi}
  const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Columns: A <- A J.
  const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
  for (std::size_t r = 0; r < N; ++r) {
    const cplx arp = a(r, p), arq = a(r, q);
    a(r, p) = arp * jpp + arq * jqp;
    a(r, q) = arp * jpq + arq * jqq;
    const cplx vrp = v(r, p), vrq = v(r, q);
    v(r, p) = vrp * jpp + vrq * jqp;
    v(r, q) = vrp * jpq + vrq * jqq;
  }
  // Rows: A <- J^dagger A.
  for (std::size_t col = 0; col < N; ++col) {
    const cplx apc = a(p, col), aqc = a(q, col);
    a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
    a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

template <std::size_t N>
EigenResult<N> hermitian_eig(const Mat<N>& m, double tol) {
  const double norm = frobenius_norm(m);
  const double herm = hermiticity_defect(m);
  // Relative to max(norm, 1): differences of nearly equal states have tiny
  // norms but only rounding-level asymmetry.
  if (herm > tol * std::max(norm, 1.0)) {
    throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian", herm / std::max(norm, 1.0));
  }

  // Symmetrize so that rounding-level asymmetry cannot bias the rotations.
  Mat<N> a = 0.5 * (m + dagger(m));
  Mat<N> v = Mat<N>::identity();

  const double stop = kOffDiagonalStop * norm;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        // Exact zeros are skipped so block-structured inputs never mix blocks.
        if (std::abs(a(p, q)) <= 1e-300) continue;
        rotate(a, v, p, q);
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenResult<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

template EigenResult<2> hermitian_eig<2>(const Mat<2>&, double);
template EigenResult<4> hermitian_eig<4>(const Mat<4>&, double);

Mat4 kron(const Mat2& x, const Mat2& y) {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

Mat4 partial_transpose(const Mat4& rho, Subsystem which) {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) {
          if (which == Subsystem::B)
            r(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
          else
            r(2 * i + k, 2 * j + l) = rho(2 * j + k, 2 * i + l);
        }
  return r;
}

Mat2 partial_trace(const Mat4& rho, Subsystem keep) {
  Mat2 r;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t s = 0; s < 2; ++s) {
        if (keep == Subsystem::A)
          r(x, y) += rho(2 * x + s, 2 * y + s);
        else
          r(x, y) += rho(2 * s + x, 2 * s + y);
      }
  return r;
}

namespace pauli {

Mat2 x() {
  Mat2 m;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Mat2 y() {
  Mat2 m;
  m(0, 1) = cplx{0.0, -1.0};
  m(1, 0) = cplx{0.0, 1.0};
  return m;
}

Mat2 z() { return Mat2::diag({1.0, -1.0}); }

Mat2 lowering() {
  Mat2 m;
  m(0, 1) = 1.0;
  return m;
}

Mat2 raising() {
  Mat2 m;
  m(1, 0) = 1.0;
  return m;
}

}  // namespace pauli

}  // namespace qres
