#include "qres/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qres/error.hpp"
#include "qres/lindblad.hpp"

namespace qres {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::PaperLiteral: return "paper-literal";
    case Provenance::PaperRepaired: return "paper-repaired";
    case Provenance::ChoiDerived: return "choi-derived";
  }
  return "unknown";
}

double completeness_defect(const std::vector<Mat2>& ops) {
  Mat2 sum;
  for (const auto& k : ops) sum += dagger(k) * k;
  return frobenius_norm(sum - Mat2::identity());
}

namespace {

constexpr double kRadicandFloor = -1e-12;
constexpr double kEtaLimit = 1e-8;

double checked_sqrt(double radicand, const char* name) {
  if (!std::isfinite(radicand)) {
    throw Error(ErrorKind::NumericalDomain, std::string(name) + " is not finite", radicand);
  }
  if (radicand < kRadicandFloor) {
    throw Error(ErrorKind::NumericalDomain, std::string(name) + " has a negative radicand", radicand);
  }
  return std::sqrt(std::max(0.0, radicand));
}

Mat2 entry(std::size_t r, std::size_t c, cplx v) {
  Mat2 m;
  m(r, c) = v;
  return m;
}

KrausSet finish(std::vector<Mat2> ops, Provenance prov, std::optional<ReservoirAmplitudes> amps) {
  KrausSet k;
  k.completeness_defect = completeness_defect(ops);
  k.ops = std::move(ops);
  k.provenance = prov;
  k.amplitudes = std::move(amps);
  return k;
}

}  // namespace

ReservoirAmplitudes reservoir_amplitudes(const ReservoirParams& p, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::OutOfRange, "time must be non-negative", t);

  const double zeta = p.zeta();
  const double x = zeta * t;
  const double y = p.eta() * t;
  const double a = p.gamma / (2.0 * zeta);

  // Every hyperbolic term carries its e^{-zeta t} factor explicitly so that
  // long times do not overflow.
  const double e2x = std::exp(-2.0 * x);
  const double ch = 0.5 * (1.0 + e2x);                                      // e^{-x} cosh x
  const double sh = 0.5 * (1.0 - e2x);                                      // e^{-x} sinh x
  const double e_sinh_y = -0.5 * std::exp(y - x) * std::expm1(-2.0 * y);     // e^{-x} sinh y
  const double e_half_cosh_y = 0.5 * (std::exp(y - 0.5 * x) + std::exp(-y - 0.5 * x));
  // e^{-x} sinh(y)/eta = e^{-x} t sinh(y)/y, with the y -> 0 limit.
  const double e_sinhc_t = y < kEtaLimit ? std::exp(-x) * t * (1.0 + y * y / 6.0) : e_sinh_y * t / y;

  const double alpha1 = checked_sqrt(ch + a * sh, "alpha_1");
  const double beta1 = e_half_cosh_y / alpha1;

  // e^{-2x} ([1 - a^2] sinh^2 x - sinh^2 y)
  const double gap = (1.0 - a * a) * sh * sh - e_sinh_y * e_sinh_y;
  const double beta2 = checked_sqrt(gap / (ch + a * sh), "beta_2");

  // sinh(y) / sqrt((1 + a) sinh y) = sqrt(sinh(y) / (1 + a))
  const double alpha3 = checked_sqrt(e_sinh_y / (1.0 + a), "alpha_3");

  // (1 + gamma / 2 eta) sinh y = sinh y + (gamma t / 2) sinh(y) / y
  const double b3_sq = e_sinh_y + 0.5 * p.gamma * e_sinhc_t;
  const double beta3_mag = checked_sqrt(b3_sq, "beta_3");
  const double alpha4 = b3_sq > 0.0 ? checked_sqrt(gap / b3_sq, "alpha_4") : 0.0;

  ReservoirAmplitudes amp;
  amp.alpha = {alpha1, 0.0, alpha3, alpha4};
  amp.beta = {beta1, beta2, std::polar(beta3_mag, -p.theta), 0.0};
  for (const auto& v : amp.alpha)
    if (!std::isfinite(std::abs(v))) throw Error(ErrorKind::NumericalDomain, "alpha amplitude overflow");
  for (const auto& v : amp.beta)
    if (!std::isfinite(std::abs(v))) throw Error(ErrorKind::NumericalDomain, "beta amplitude overflow");
  return amp;
}

KrausSet kraus_paper(const ReservoirParams& p, double t) {
  const auto amp = reservoir_amplitudes(p, t);
  const auto& al = amp.alpha;
  const auto& be = amp.beta;
  std::vector<Mat2> ops{
      entry(0, 1, al[0]) + entry(1, 1, be[0]),
      entry(1, 1, be[1]),
      entry(0, 1, al[2]) + entry(1, 0, be[2]),
      entry(1, 0, al[3]),
  };
  return finish(std::move(ops), Provenance::PaperLiteral, amp);
}

KrausSet kraus_repaired(const ReservoirParams& p, double t) {
  const auto amp = reservoir_amplitudes(p, t);
  const auto& al = amp.alpha;
  const auto& be = amp.beta;
  std::vector<Mat2> ops{
      entry(0, 0, al[0]) + entry(1, 1, be[0]),
      entry(0, 1, be[1]),
      entry(0, 1, al[2]) + entry(1, 0, be[2]),
      entry(1, 0, al[3]),
  };
  return finish(std::move(ops), Provenance::PaperRepaired, amp);
}

ChoiTrajectory::ChoiTrajectory(const ReservoirParams& p) : params_(p) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) images_[2 * i + j] = entry(i, j, 1.0);
}

void ChoiTrajectory::advance_to(double t, double tol) {
  if (t < t_) throw Error(ErrorKind::OutOfRange, "Choi trajectory cannot run backwards", t_ - t);
  if (t == t_) return;
  const LindbladSpec spec{params_, std::nullopt};
  for (auto& img : images_) img = integrate_matrix<2>(img, spec, t - t_, {tol, 0}).state;
  t_ = t;
}

Mat4 ChoiTrajectory::choi() const {
  Mat4 c;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) c(2 * i + k, 2 * j + l) = images_[2 * i + j](k, l);
  return c;
}

Mat4 propagator_choi(const ReservoirParams& p, double t, double tol) {
  ChoiTrajectory traj(p);
  traj.advance_to(t, tol);
  return traj.choi();
}

Mat4 choi_of(const std::vector<Mat2>& ops) {
  Mat4 c;
  for (const auto& k : ops)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t l = 0; l < 2; ++l) c(2 * i + r, 2 * j + l) += k(r, i) * std::conj(k(l, j));
  return c;
}

KrausSet kraus_from_choi(const Mat4& choi, double tol, double cp_tol) {
  const auto eig = hermitian_eig(choi, 1e-8);
  if (eig.values[0] < -cp_tol) {
    throw Error(ErrorKind::NotCP, "Choi matrix has negative eigenvalue", -eig.values[0]);
  }
  std::vector<Mat2> ops;
  for (std::size_t idx = 4; idx-- > 0;) {
    const double lam = eig.values[idx];
    if (lam <= tol) break;
    const double w = std::sqrt(lam);
    Mat2 k;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t r = 0; r < 2; ++r) k(r, i) = w * eig.vectors(2 * i + r, idx);
    ops.push_back(k);
  }
  return finish(std::move(ops), Provenance::ChoiDerived, std::nullopt);
}

KrausSet identity_kraus() {
  return finish({Mat2::identity()}, Provenance::ChoiDerived, std::nullopt);
}

Mat4 apply_kraus_raw(const Mat4& rho, const KrausSet& ka, const KrausSet& kb, SumMode sum) {
  Mat4 out;
  if (sum == SumMode::Independent) {
    for (const auto& a : ka.ops) {
      for (const auto& b : kb.ops) {
        const Mat4 k = kron(a, b);
        out += k * rho * dagger(k);
      }
    }
    return out;
  }
  const std::size_t n = std::min(ka.ops.size(), kb.ops.size());
  for (std::size_t j = 0; j < n; ++j) {
    const Mat4 k = kron(ka.ops[j], kb.ops[j]);
    out += k * rho * dagger(k);
  }
  return out;
}

ChannelOutput evolve_local(const DensityMatrix& rho, const KrausSet& ka, const KrausSet& kb,
                           const ChannelOptions& opts) {
  if (!opts.allow_incomplete) {
    for (const KrausSet* k : {&ka, &kb}) {
      if (k->completeness_defect > kCompletenessGate) {
        throw Error(ErrorKind::ChannelNotTP,
                    std::string(to_string(k->provenance)) + " Kraus set fails completeness",
                    k->completeness_defect);
      }
    }
  }
  const Mat4 raw = apply_kraus_raw(rho.mat(), ka, kb, opts.sum);
  const cplx tr = trace(raw);
  const double defect = std::abs(tr - cplx{1.0});
  if (!(defect <= kTraceGate)) {
    throw Error(ErrorKind::ChannelNotTP, "channel output trace deviates from 1", defect);
  }
  return {validate_state(raw * cplx{1.0 / tr.real()}), defect};
}

namespace {

enum class Shape { Zero, Diagonal, AntiDiagonal };

struct Landing {
  Shape shape;
  cplx to0;  // amplitude landing in |0>
  cplx to1;  // amplitude landing in |1>
};

Landing landing(const Mat2& k) {
  const double scale = frobenius_norm(k);
  const double eps = 1e-12 * scale;
  if (scale == 0.0) return {Shape::Zero, 0.0, 0.0};
  const bool off_zero = std::abs(k(0, 1)) <= eps && std::abs(k(1, 0)) <= eps;
  const bool diag_zero = std::abs(k(0, 0)) <= eps && std::abs(k(1, 1)) <= eps;
  if (off_zero) return {Shape::Diagonal, k(0, 0), k(1, 1)};
  if (diag_zero) return {Shape::AntiDiagonal, k(0, 1), k(1, 0)};
  throw Error(ErrorKind::Unsupported, "closed form needs diagonal or anti-diagonal Kraus operators");
}

ClosedFormCoefficients coefficients_from(const std::vector<cplx>& aa, const std::vector<cplx>& ba,
                                         const std::vector<cplx>& ab, const std::vector<cplx>& bb,
                                         const std::vector<std::size_t>& main,
                                         const std::vector<std::size_t>& s4_extra) {
  ClosedFormCoefficients c;
  auto& s = c.s;
  for (std::size_t j : main) {
    s[0] += std::norm(aa[j]) * std::norm(ab[j]);
    s[1] += aa[j] * ab[j] * std::conj(ba[j]) * std::conj(bb[j]);
    s[2] += ba[j] * bb[j] * std::conj(aa[j]) * std::conj(ab[j]);
    s[3] += std::norm(ba[j]) * std::norm(bb[j]);
    s[4] += std::norm(aa[j]) * std::norm(bb[j]);
    s[5] += aa[j] * bb[j] * std::conj(ba[j]) * std::conj(ab[j]);
    s[6] += ba[j] * ab[j] * std::conj(aa[j]) * std::conj(bb[j]);
    s[7] += std::norm(ba[j]) * std::norm(ab[j]);
  }
  for (std::size_t j : s4_extra) s[3] += std::norm(aa[j]) * std::norm(ab[j]);
  return c;
}

}  // namespace

ClosedFormCoefficients closed_form_coefficients(const KrausSet& ka, const KrausSet& kb, CoefficientRule rule) {
  if (rule == CoefficientRule::Printed) {
    if (!ka.amplitudes || !kb.amplitudes) {
      throw Error(ErrorKind::Unsupported, "printed coefficient rule needs named reservoir amplitudes");
    }
    const auto& A = *ka.amplitudes;
    const auto& B = *kb.amplitudes;
    auto vec = [](const std::array<cplx, 4>& v) { return std::vector<cplx>(v.begin(), v.end()); };
    return coefficients_from(vec(A.alpha), vec(A.beta), vec(B.alpha), vec(B.beta), {0, 2}, {1, 3});
  }

  const std::size_t n = std::max(ka.ops.size(), kb.ops.size());
  std::vector<cplx> aa(n), ba(n), ab(n), bb(n);
  std::vector<std::size_t> all(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Landing la = j < ka.ops.size() ? landing(ka.ops[j]) : Landing{Shape::Zero, 0.0, 0.0};
    const Landing lb = j < kb.ops.size() ? landing(kb.ops[j]) : Landing{Shape::Zero, 0.0, 0.0};
    if (la.shape != Shape::Zero && lb.shape != Shape::Zero && la.shape != lb.shape) {
      throw Error(ErrorKind::Unsupported, "paired Kraus operators move population between Bell blocks");
    }
    aa[j] = la.to0;
    ba[j] = la.to1;
    ab[j] = lb.to0;
    bb[j] = lb.to1;
    all[j] = j;
  }
  return coefficients_from(aa, ba, ab, bb, all, {});
}

Mat4 closed_form_matrix(const CorrelationTriple& c, const ClosedFormCoefficients& cf) {
  const auto pp = bell::phi_plus(), pm = bell::phi_minus();
  const auto sp = bell::psi_plus(), sm = bell::psi_minus();
  const auto& s = cf.s;

  const Mat4 phi_sum = outer(pp, pp) + outer(pm, pm);
  const Mat4 phi_diff = outer(pp, pp) - outer(pm, pm);
  const Mat4 phi_cross = outer(pp, pm) + outer(pm, pp);
  const Mat4 phi_swap = outer(pm, pp) - outer(pp, pm);
  const Mat4 psi_sum = outer(sp, sp) + outer(sm, sm);
  const Mat4 psi_diff = outer(sp, sp) - outer(sm, sm);
  const Mat4 psi_cross = outer(sp, sm) + outer(sm, sp);
  const Mat4 psi_swap = outer(sm, sp) - outer(sp, sm);

  Mat4 out;
  out += cplx{(1.0 + c.c3) / 8.0} * ((s[0] + s[3]) * phi_sum + (s[0] - s[3]) * phi_cross);
  out += cplx{(c.c1 - c.c2) / 8.0} * ((s[1] + s[2]) * phi_diff + (s[1] - s[2]) * phi_swap);
  out += cplx{(1.0 - c.c3) / 8.0} * ((s[4] + s[7]) * psi_sum + (s[4] - s[7]) * psi_cross);
  out += cplx{(c.c1 + c.c2) / 8.0} * ((s[5] + s[6]) * psi_diff + (s[5] - s[6]) * psi_swap);
  return out;
}

DensityMatrix closed_form_output(const CorrelationTriple& c, const KrausSet& ka, const KrausSet& kb,
                                 CoefficientRule rule) {
  const Mat4 m = closed_form_matrix(c, closed_form_coefficients(ka, kb, rule));
  const double tr = trace(m).real();
  if (!(tr > 0.0) || !std::isfinite(tr)) {
    throw Error(ErrorKind::TraceDefect, "closed-form output has non-positive trace", tr);
  }
  return validate_state(m * cplx{1.0 / tr});
}

}  // namespace qres
