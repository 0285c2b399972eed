#pragma once

// Small dense complex matrices for one- and two-qubit work.
//
// Everything here is a value type over a fixed-size std::array; dimensions are
// template parameters, so a 2x2 operator can never be passed where a 4x4 state
// is expected. Two-qubit indices follow the kron ordering (A (x) B)[2i+k][2j+l].

#include <array>
#include <complex>
#include <cstddef>

namespace qres {

using cplx = std::complex<double>;

template <std::size_t N>
struct Mat {
  static_assert(N == 2 || N == 4, "only qubit and qubit-pair operators are supported");
  static constexpr std::size_t dim = N;

  std::array<cplx, N * N> a{};

  cplx& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

  static Mat zero() { return {}; }
  static Mat identity() {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat diag(const std::array<double, N>& d) {
    Mat m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(cplx s) {
    for (auto& x : a) x *= s;
    return *this;
  }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <std::size_t N>
Mat<N> operator+(Mat<N> x, const Mat<N>& y) { return x += y; }
template <std::size_t N>
Mat<N> operator-(Mat<N> x, const Mat<N>& y) { return x -= y; }
template <std::size_t N>
Mat<N> operator*(Mat<N> x, cplx s) { return x *= s; }
template <std::size_t N>
Mat<N> operator*(cplx s, Mat<N> x) { return x *= s; }

template <std::size_t N>
Mat<N> operator*(const Mat<N>& x, const Mat<N>& y) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < N; ++k) {
      const cplx xik = x(i, k);
      if (xik == cplx{}) continue;
      for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
    }
  }
  return r;
}

template <std::size_t N>
Mat<N> dagger(const Mat<N>& x) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

template <std::size_t N>
cplx trace(const Mat<N>& x) {
  cplx t{};
  for (std::size_t i = 0; i < N; ++i) t += x(i, i);
  return t;
}

template <std::size_t N>
double frobenius_norm(const Mat<N>& x) {
  double s = 0.0;
  for (const auto& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

// ||M - M^dagger||_F
template <std::size_t N>
double hermiticity_defect(const Mat<N>& x) {
  return frobenius_norm(x - dagger(x));
}

template <std::size_t N>
bool approx_equal(const Mat<N>& x, const Mat<N>& y, double tol) {
  for (std::size_t i = 0; i < N * N; ++i)
    if (std::abs(x.a[i] - y.a[i]) > tol) return false;
  return true;
}

template <std::size_t N>
double max_abs_diff(const Mat<N>& x, const Mat<N>& y) {
  double m = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

// Outer product |u><v|.
template <std::size_t N>
Mat<N> outer(const std::array<cplx, N>& u, const std::array<cplx, N>& v) {
  Mat<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

template <std::size_t N>
struct EigenResult {
  std::array<double, N> values{};  // ascending
  Mat<N> vectors;                  // column k pairs with values[k]

  std::array<cplx, N> vector(std::size_t k) const {
    std::array<cplx, N> v;
    for (std::size_t i = 0; i < N; ++i) v[i] = vectors(i, k);
    return v;
  }
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Throws
// Error{NotHermitian} when ||M - M^dagger||_F > tol * max(||M||_F, 1).
template <std::size_t N>
EigenResult<N> hermitian_eig(const Mat<N>& m, double tol = 1e-10);

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const Mat<N>& m, double tol = 1e-10) {
  return hermitian_eig(m, tol).values;
}

Mat4 kron(const Mat2& x, const Mat2& y);

enum class Subsystem { A, B };

Mat4 partial_transpose(const Mat4& rho, Subsystem which);
Mat2 partial_trace(const Mat4& rho, Subsystem keep);

// Sum of absolute eigenvalues of a Hermitian matrix.
template <std::size_t N>
double trace_norm(const Mat<N>& h) {
  double s = 0.0;
  for (double v : hermitian_eig(h, 1e-8).values) s += std::abs(v);
  return s;
}

template <std::size_t N>
double trace_distance(const Mat<N>& x, const Mat<N>& y) {
  return 0.5 * trace_norm(x - y);
}

namespace pauli {
Mat2 x();
Mat2 y();
Mat2 z();
// Qubit levels: |0> ground, |1> excited.
Mat2 lowering();  // |0><1|
Mat2 raising();   // |1><0|
}  // namespace pauli

}  // namespace qres
