#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qres/channel.hpp"
#include "qres/error.hpp"
#include "qres/measures.hpp"

using namespace qres;

namespace {

// Regression constants measured from the library (see validate-kraus).
constexpr double kLiteralDefectAtZero = 1.4142135623731;  // sqrt(2)
constexpr double kRepairedVacuumDefectAt1 = 0.496777598165;
constexpr double kRepairedThermalDefect = 0.93556383854;  // n = 0.6, gamma t = 1

Mat4 choi_matrix_from(auto&& map) {
  Mat4 c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Mat2 e;
      e(i, j) = 1.0;
      const Mat2 img = map(e);
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) c(2 * i + k, 2 * j + l) = img(k, l);
    }
  return c;
}

Mat2 apply_single(const KrausSet& k, const Mat2& r) {
  Mat2 out;
  for (const auto& op : k.ops) out += op * r * dagger(op);
  return out;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qres::Error");
  return ErrorKind::Io;
}

Mat4 bell_projector(const std::array<cplx, 4>& v) { return outer(v, v); }

}  // namespace

TEST_CASE("reservoir parameters") {
  CHECK(kind_of([] { ReservoirParams::make(0.0, 0.1); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { ReservoirParams::make(1.0, -0.1); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { ReservoirParams::make(1.0, 0.2, 0.5); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { ReservoirParams::make(1.0, 0.2, -0.1); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { ReservoirParams::make(1.0, 0.2, 0.1, std::nan("")); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { ReservoirParams::with_m_fraction(1.0, 0.2, 1.5); }) == ErrorKind::OutOfRange);
  for (double n : {0.0, 0.2, 6.0}) {
    const auto p = ReservoirParams::with_m_fraction(1.0, n, 1.0);
    CHECK(p.zeta() >= p.eta() - 1e-12);
  }
}

TEST_CASE("paper-literal set fails completeness at t = 0") {
  const auto k = kraus_paper(ReservoirParams::make(1.0, 0.2, 0.1, 0.3), 0.0);
  CHECK(k.provenance == Provenance::PaperLiteral);
  CHECK(k.ops.size() == 4);
  const auto& a = *k.amplitudes;
  CHECK(a.alpha[0] == cplx(1.0));
  CHECK(a.beta[0] == cplx(1.0));
  CHECK(a.beta[1] == cplx(0.0));
  CHECK(a.alpha[3] == cplx(0.0));
  CHECK(k.completeness_defect == doctest::Approx(kLiteralDefectAtZero).epsilon(1e-12));
}

TEST_CASE("paper-repaired set") {
  const auto p = ReservoirParams::with_m_fraction(1.0, 0.3, 0.5, 1.1);
  const auto k0 = kraus_repaired(p, 0.0);
  CHECK(k0.completeness_defect <= 1e-14);
  CHECK(max_abs_diff(k0.ops[0], Mat2::identity()) <= 1e-15);
  for (std::size_t j = 1; j < 4; ++j) CHECK(frobenius_norm(k0.ops[j]) <= 1e-15);

  // Does not reduce to amplitude damping: beta_3 keeps a gamma t / 2 term
  // at n = 0, so completeness fails away from t = 0.
  const auto vac = kraus_repaired(ReservoirParams::make(1.0, 0.0), 1.0);
  CHECK(vac.completeness_defect == doctest::Approx(kRepairedVacuumDefectAt1).epsilon(1e-9));

  const auto p6 = ReservoirParams::make(1.0, 0.6);
  CHECK(kraus_repaired(p6, 1.0).completeness_defect == doctest::Approx(kRepairedThermalDefect).epsilon(1e-9));
  CHECK(kraus_choi(p6, 1.0).completeness_defect <= 1e-10);
}

TEST_CASE("eta -> 0 limit is continuous") {
  const double t = 1.0;
  auto amps = [&](double m) { return reservoir_amplitudes(ReservoirParams{1.0, 0.3, m, 0.4}, t); };
  // eta t on both sides of the limit branch
  const auto below = amps(0.99e-8);
  const auto above = amps(1.01e-8);
  const auto zero = amps(0.0);
  // The amplitudes move by O(eta t) across the branch, so a jump would show
  // up as a difference well above that scale. alpha_3 ~ sqrt(sinh(eta t)) is
  // continuous but has unbounded slope at 0 and is checked separately.
  for (std::size_t j : {0, 3}) CHECK(std::abs(below.alpha[j] - above.alpha[j]) <= 1e-9);
  for (std::size_t j : {0, 1, 2}) CHECK(std::abs(below.beta[j] - above.beta[j]) <= 1e-9);
  for (std::size_t j : {0, 3}) CHECK(std::abs(zero.alpha[j] - above.alpha[j]) <= 1e-7);
  for (std::size_t j : {0, 1, 2}) CHECK(std::abs(zero.beta[j] - above.beta[j]) <= 1e-7);
  CHECK(std::abs(below.alpha[2]) <= 1e-4);
  // series cross-check of sinh(y)/y at eta = 1e-8
  const auto series = amps(1e-8);
  const double y = 1e-8 * t, sinhc = 1.0 + y * y / 6.0;
  const double want_b3 = std::sqrt(std::exp(-0.8 * t) * (std::sinh(y) + 0.5 * t * sinhc));
  CHECK(std::abs(std::abs(series.beta[2]) - want_b3) <= 1e-14);
  // beta_3 at eta = 0: sqrt(e^{-zeta t} gamma t / 2) e^{-i theta}
  const double zeta = 0.5 * 1.6;
  CHECK(std::abs(zero.beta[2] - std::polar(std::sqrt(std::exp(-zeta * t) * 0.5), -0.4)) <= 1e-15);
  CHECK(zero.alpha[2] == cplx(0.0));
}

TEST_CASE("amplitudes at long times") {
  const auto k = kraus_repaired(ReservoirParams::make(1.0, 6.0), 500.0);
  for (const auto& op : k.ops)
    for (const auto& v : op.a) CHECK(std::isfinite(std::abs(v)));
  // beta_1 carries e^{-zeta t / 2} cosh(eta t), which grows without bound
  // once eta > zeta / 2
  CHECK(std::isfinite(std::abs(kraus_repaired(ReservoirParams::with_m_fraction(1.0, 6.0, 0.9, 0.0), 20.0).ops[0](1, 1))));
  CHECK(kind_of([] { kraus_repaired(ReservoirParams::with_m_fraction(1.0, 6.0, 0.9, 0.0), 500.0); }) ==
        ErrorKind::NumericalDomain);
  CHECK(kind_of([] { reservoir_amplitudes(ReservoirParams{1.0, 0.2, 5.0, 0.0}, 1.0); }) ==
        ErrorKind::NumericalDomain);
  CHECK(kind_of([] { reservoir_amplitudes(ReservoirParams::make(1.0, 0.2), -1.0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("propagator Choi examples") {
  const auto p = ReservoirParams::with_m_fraction(1.0, 0.2, 0.5, 0.3);
  Mat4 omega;
  omega(0, 0) = omega(0, 3) = omega(3, 0) = omega(3, 3) = 1.0;
  CHECK(max_abs_diff(propagator_choi(p, 0.0), omega) == 0.0);

  // reset to the thermal state: C = I (x) diag(1 - p_e, p_e)
  CHECK(max_abs_diff(propagator_choi(ReservoirParams::make(1.0, 0.0), 60.0), Mat4::diag({1, 0, 1, 0})) <= 1e-12);
  CHECK(max_abs_diff(propagator_choi(ReservoirParams::make(1.0, 0.5), 60.0), Mat4::diag({0.75, 0.25, 0.75, 0.25})) <=
        1e-12);

  // trace preservation: tracing out the output leaves the identity
  const Mat4 c = propagator_choi(p, 1.3);
  CHECK(max_abs_diff(partial_trace(c, Subsystem::A), Mat2::identity()) <= 1e-8);
  CHECK(hermiticity_defect(c) <= 1e-12);
}

TEST_CASE("kraus_from_choi examples") {
  Mat4 omega;
  omega(0, 0) = omega(0, 3) = omega(3, 0) = omega(3, 3) = 1.0;
  const auto id = kraus_from_choi(omega);
  REQUIRE(id.ops.size() == 1);
  // identity up to a global phase
  const cplx ph = id.ops[0](0, 0);
  CHECK(std::abs(ph) == doctest::Approx(1.0));
  CHECK(max_abs_diff(id.ops[0], ph * Mat2::identity()) <= 1e-14);

  const auto deph = kraus_from_choi(Mat4::diag({1, 0, 0, 1}));
  REQUIRE(deph.ops.size() == 2);
  for (const auto& op : deph.ops) {
    CHECK(op(0, 1) == cplx(0.0));
    CHECK(op(1, 0) == cplx(0.0));
    CHECK(std::abs(op(0, 0)) + std::abs(op(1, 1)) == doctest::Approx(1.0));
  }
  CHECK(deph.completeness_defect <= 1e-14);

  Mat4 neg = omega;
  neg(1, 1) = -1e-3;
  CHECK(kind_of([&] { kraus_from_choi(neg); }) == ErrorKind::NotCP);
}

TEST_CASE("choi-derived set matches the analytic map on the basis") {
  for (double frac : {0.0, 0.7}) {
    const auto p = ReservoirParams::with_m_fraction(1.0, 0.2, frac, 0.9);
    const auto k = kraus_choi(p, 1.0);
    CHECK(k.provenance == Provenance::ChoiDerived);
    CHECK(k.ops.size() == 4);
    CHECK(k.completeness_defect <= 1e-10);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Mat2 e;
        e(i, j) = 1.0;
        const Mat2 got = apply_single(k, e);
        const auto want = oracle::reservoir_map(p.gamma, p.n, p.m_abs, p.theta, 1.0, e.a);
        for (std::size_t q = 0; q < 4; ++q) CHECK(std::abs(got.a[q] - want[q]) <= 1e-8);
      }
  }
}

TEST_CASE("channel semigroup") {
  const auto p = ReservoirParams::with_m_fraction(1.0, 0.4, 0.6, 0.5);
  const auto k1 = kraus_choi(p, 0.7);
  const auto k2 = kraus_choi(p, 1.1);
  const auto k12 = kraus_choi(p, 1.8);
  const Mat4 composed = choi_matrix_from([&](const Mat2& e) { return apply_single(k2, apply_single(k1, e)); });
  CHECK(max_abs_diff(composed, choi_of(k12.ops)) <= 1e-7);
}

TEST_CASE("apply_local_channels examples") {
  const DensityMatrix phi = state_from_correlations(kMaximalTriple);
  const KrausSet id = identity_kraus();
  CHECK(max_abs_diff(apply_local_channels(phi, id, id).mat(), phi.mat()) <= 1e-14);

  const auto vac = ReservoirParams::make(1.0, 0.0);
  double last = negativity(phi);
  for (double t : {0.05, 0.1, 0.15, 0.2, 0.25}) {
    const auto k = kraus_choi(vac, t);
    const double doe = negativity(apply_local_channels(phi, k, k));
    CHECK(doe < 1.0);
    CHECK(doe < last);
    last = doe;
  }

  // maximally mixed input factorizes into thermal single-qubit states
  const auto pa = ReservoirParams::make(1.0, 0.2), pb = ReservoirParams::make(2.0, 0.6);
  const auto out = apply_local_channels(validate_state(0.25 * Mat4::identity()), kraus_choi(pa, 0.8), kraus_choi(pb, 0.8));
  const oracle::M2 half{0.5, 0.0, 0.0, 0.5};
  const auto ra = oracle::reservoir_map(pa.gamma, pa.n, 0, 0, 0.8, half);
  const auto rb = oracle::reservoir_map(pb.gamma, pb.n, 0, 0, 0.8, half);
  Mat2 ma, mb;
  ma.a = ra;
  mb.a = rb;
  CHECK(max_abs_diff(out.mat(), kron(ma, mb)) <= 1e-9);
}

TEST_CASE("two-qubit channel against the analytic product map") {
  GeneralStateSpec spec;
  spec.s = {0.2, -0.1, 0.3};
  spec.t = {-0.15, 0.2, -0.25};
  spec.corr = {{{0.3, 0.1, 0.0}, {0.0, -0.25, 0.05}, {0.0, 0.0, 0.2}}};
  const DensityMatrix rho = state_from_bloch(spec);
  const auto pa = ReservoirParams::with_m_fraction(1.0, 0.2, 0.9, 0.0);
  const auto pb = ReservoirParams::with_m_fraction(1.5, 0.6, 0.2, std::numbers::pi / 2);
  for (double t : {0.25, 1.0, 3.0}) {
    const auto got = apply_local_channels(rho, kraus_choi(pa, t), kraus_choi(pb, t));
    const auto want = oracle::product_map({pa.gamma, pa.n, pa.m_abs, pa.theta}, {pb.gamma, pb.n, pb.m_abs, pb.theta},
                                          t, rho.mat().a);
    CHECK(oracle::frobenius_distance(got.mat().a, want) <= 1e-8);
  }
}

TEST_CASE("completeness and trace gates") {
  const auto p = ReservoirParams::make(1.0, 0.2);
  const DensityMatrix phi = state_from_correlations(kMaximalTriple);
  const auto lit = kraus_paper(p, 0.5);
  CHECK(kind_of([&] { apply_local_channels(phi, lit, lit); }) == ErrorKind::ChannelNotTP);
  // the override lets the set through to the output trace gate
  CHECK(kind_of([&] { apply_local_channels(phi, lit, lit, {SumMode::Independent, true}); }) ==
        ErrorKind::ChannelNotTP);
  // the single-index sum of a complete set is not trace preserving
  const auto k = kraus_choi(p, 0.5);
  CHECK(kind_of([&] { apply_local_channels(phi, k, k, {SumMode::Paired, false}); }) == ErrorKind::ChannelNotTP);
  const Mat4 raw = apply_kraus_raw(phi.mat(), k, k, SumMode::Paired);
  CHECK(std::abs(trace(raw) - 1.0) > 1e-2);
}

TEST_CASE("closed form") {
  const DensityMatrix phi = state_from_correlations(kMaximalTriple);
  const KrausSet id = identity_kraus();
  CHECK(max_abs_diff(closed_form_output(kMaximalTriple, id, id).mat(), phi.mat()) <= 1e-10);
  const auto rep0 = kraus_repaired(ReservoirParams::make(1.0, 0.2), 0.0);
  CHECK(max_abs_diff(closed_form_output(kPartialTriple, rep0, rep0, CoefficientRule::Printed).mat(),
                     state_from_correlations(kPartialTriple).mat()) <= 1e-10);

  // gamma t = 1 with the per-qubit rate unit
  const auto p = ReservoirParams::make(1.0, 0.2);
  const auto k = kraus_choi(p, 1.0);
  const DensityMatrix cf = closed_form_output(kMaximalTriple, k, k);

  // the block form is the normalized single-index sum
  const Mat4 paired = apply_kraus_raw(phi.mat(), k, k, SumMode::Paired);
  CHECK(max_abs_diff(cf.mat(), (1.0 / trace(paired)) * paired) <= 1e-9);

  // and it is not the product channel: population transfer between the
  // {00,11} and {01,10} blocks is missing
  const DensityMatrix product = apply_local_channels(phi, k, k);
  const double gap = max_abs_diff(cf.mat(), product.mat());
  MESSAGE("closed form vs product channel, max entry difference: " << gap);
  CHECK(gap > 1e-3);

  // singlet under identical reservoirs stays Bell-diagonal
  const CorrelationTriple singlet{-1, -1, -1};
  const DensityMatrix s = closed_form_output(singlet, k, k);
  const std::array<std::array<cplx, 4>, 4> basis{bell::phi_plus(), bell::phi_minus(), bell::psi_minus(),
                                                 bell::psi_plus()};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      cplx v{};
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) v += std::conj(basis[a][i]) * s(i, j) * basis[b][j];
      CHECK(std::abs(v) <= 1e-12);
    }
  // (K (x) K)|psi-> = det(K)|psi->, so the single-index sum fixes the singlet
  CHECK(max_abs_diff(s.mat(), bell_projector(bell::psi_minus())) <= 1e-12);
}
