#include "qres/lindblad.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qres/error.hpp"

namespace qres {

namespace {

template <std::size_t N>
struct QubitTerm {
  cplx g_loss;      // -g/2 (1+N)
  cplx g_gain;      // -g/2 N
  cplx g_squeeze;   // -g/2 M
  cplx g_squeeze_c; // -g/2 M*
  Mat<N> sm, sp;
  Mat<N> sp_sm, sm_sp, sp_sp, sm_sm;
};

template <std::size_t N>
QubitTerm<N> make_term(const ReservoirParams& p, const Mat<N>& sm) {
  const double half = 0.5 * p.gamma;
  QubitTerm<N> t;
  t.g_loss = -half * (1.0 + p.n);
  t.g_gain = -half * p.n;
  t.g_squeeze = -half * p.m();
  t.g_squeeze_c = -half * std::conj(p.m());
  t.sm = sm;
  t.sp = dagger(sm);
  t.sp_sm = t.sp * t.sm;
  t.sm_sp = t.sm * t.sp;
  t.sp_sp = t.sp * t.sp;
  t.sm_sm = t.sm * t.sm;
  return t;
}

// (A rho - 2 B rho C + rho A) with A the product term.
template <std::size_t N>
Mat<N> sandwich(const Mat<N>& rho, const Mat<N>& prod, const Mat<N>& left, const Mat<N>& right) {
  return prod * rho - cplx{2.0} * (left * rho * right) + rho * prod;
}

template <std::size_t N>
class Generator {
 public:
  explicit Generator(const LindbladSpec& spec) {
    if constexpr (N == 2) {
      if (spec.params_b) {
        throw Error(ErrorKind::DimensionMismatch, "two-qubit spec applied to a single-qubit matrix");
      }
      terms_.push_back(make_term<2>(spec.params_a, pauli::lowering()));
    } else {
      if (!spec.params_b) {
        throw Error(ErrorKind::DimensionMismatch, "single-qubit spec applied to a two-qubit matrix");
      }
      const Mat2 id = Mat2::identity();
      terms_.push_back(make_term<4>(spec.params_a, kron(pauli::lowering(), id)));
      terms_.push_back(make_term<4>(*spec.params_b, kron(id, pauli::lowering())));
    }
    for (const auto& p : {std::optional<ReservoirParams>(spec.params_a), spec.params_b}) {
      if (p) rate_ += p->gamma * (2.0 * p->n + 1.0 + 2.0 * p->m_abs);
    }
  }

  Mat<N> operator()(const Mat<N>& rho) const {
    Mat<N> out;
    for (const auto& t : terms_) {
      out += t.g_loss * sandwich(rho, t.sp_sm, t.sm, t.sp);
      out += t.g_gain * sandwich(rho, t.sm_sp, t.sp, t.sm);
      out += t.g_squeeze * sandwich(rho, t.sp_sp, t.sp, t.sp);
      out += t.g_squeeze_c * sandwich(rho, t.sm_sm, t.sm, t.sm);
    }
    return out;
  }

  double rate_scale() const { return rate_; }

 private:
  std::vector<QubitTerm<N>> terms_;
  double rate_ = 0.0;
};

template <std::size_t N>
Mat<N> rk4_run(const Generator<N>& f, Mat<N> y, double t, std::size_t steps) {
  const double h = t / static_cast<double>(steps);
  const cplx half{0.5 * h}, full{h}, sixth{h / 6.0};
  for (std::size_t s = 0; s < steps; ++s) {
    const Mat<N> k1 = f(y);
    const Mat<N> k2 = f(y + half * k1);
    const Mat<N> k3 = f(y + half * k2);
    const Mat<N> k4 = f(y + full * k3);
    y += sixth * (k1 + cplx{2.0} * k2 + cplx{2.0} * k3 + k4);
  }
  return y;
}

}  // namespace

template <std::size_t N>
Mat<N> lindblad_rhs(const Mat<N>& rho, const LindbladSpec& spec) {
  return Generator<N>(spec)(rho);
}

template <std::size_t N>
Mat<N> rk4_fixed(const Mat<N>& rho0, const LindbladSpec& spec, double t, std::size_t steps) {
  if (steps == 0) throw Error(ErrorKind::InvalidConfig, "rk4 needs at least one step");
  return rk4_run(Generator<N>(spec), rho0, t, steps);
}

template <std::size_t N>
IntegrationResult<Mat<N>> integrate_matrix(const Mat<N>& rho0, const LindbladSpec& spec, double t,
                                           const IntegratorOptions& opts) {
  if (!(t >= 0.0)) throw Error(ErrorKind::OutOfRange, "integration time must be non-negative", t);
  if (t == 0.0) return {rho0, 0, 0.0};

  const Generator<N> f(spec);
  std::size_t steps = opts.initial_steps;
  if (steps == 0) {
    // Aim for rate * h of about 0.25 on the first attempt.
    steps = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(4.0 * t * f.rate_scale())));
  }
  steps = std::min(steps, kMaxIntegratorSteps / 2);

  Mat<N> coarse = rk4_run(f, rho0, t, steps);
  for (;;) {
    const Mat<N> fine = rk4_run(f, rho0, t, 2 * steps);
    const double diff = frobenius_norm(fine - coarse);
    if (diff <= opts.tol) return {fine, 2 * steps, diff};
    if (2 * steps >= kMaxIntegratorSteps) {
      throw Error(ErrorKind::IntegratorFailure,
                  "RK4 Richardson tolerance not met at h = t/2^20 (t = " + std::to_string(t) + ")", diff);
    }
    steps *= 2;
    coarse = fine;
  }
}

template Mat<2> lindblad_rhs<2>(const Mat<2>&, const LindbladSpec&);
template Mat<4> lindblad_rhs<4>(const Mat<4>&, const LindbladSpec&);
template Mat<2> rk4_fixed<2>(const Mat<2>&, const LindbladSpec&, double, std::size_t);
template Mat<4> rk4_fixed<4>(const Mat<4>&, const LindbladSpec&, double, std::size_t);
template IntegrationResult<Mat<2>> integrate_matrix<2>(const Mat<2>&, const LindbladSpec&, double,
                                                       const IntegratorOptions&);
template IntegrationResult<Mat<4>> integrate_matrix<4>(const Mat<4>&, const LindbladSpec&, double,
                                                       const IntegratorOptions&);

IntegrationResult<DensityMatrix> integrate(const DensityMatrix& rho0, const LindbladSpec& spec, double t,
                                           double tol) {
  const auto r = integrate_matrix<4>(rho0.mat(), spec, t, {tol, 0});
  return {validate_state(r.state, {1e-9, 1e-9, 1e-9}), r.step_count, r.error_estimate};
}

Mat2 single_qubit_steady_state(const ReservoirParams& p) {
  const LindbladSpec spec{p, std::nullopt};
  return integrate_matrix<2>(Mat2::identity() * cplx{0.5}, spec, 40.0 / p.gamma, {1e-10, 0}).state;
}

}  // namespace qres
