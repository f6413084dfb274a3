#include "unitarize/nagy.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "unitarize/boundedness.h"
#include "unitarize/spectral.h"

namespace unitarize {

std::string_view to_string(NagyMethod m) {
  return m == NagyMethod::kSpectralProjection ? "SpectralProjection" : "CesaroOracle";
}

namespace {

void require_same_dim(const CMatrix& t, const HermitianForm& h) {
  if (t.rows() != h.dim()) {
    throw Error(ErrorKind::kInvalidInput, "operator and fiducial form dimensions differ");
  }
}

NagyResult assemble(const CMatrix& t, const HermitianForm& h0, HermitianForm invariant,
                    EigenDecomposition spectrum, bool flow, const ToleranceConfig& cfg) {
  NagyResult r;
  auto [q, q_inv] = positive_factor(invariant, h0, cfg);
  r.q_factor = std::move(q);
  r.q_inverse = std::move(q_inv);
  r.unitarized = r.q_factor * t * r.q_inverse;
  r.invariant_form = std::move(invariant);
  r.fiducial_form = h0;
  r.warnings = spectrum.warnings;
  r.spectrum = std::move(spectrum);
  r.tolerances = cfg;

  const CMatrix& g = r.invariant_form.gram();
  const CMatrix& g0 = h0.gram();
  const CMatrix& u = r.unitarized;
  if (flow) {
    const double xs = std::max(1.0, op_norm(t));
    r.invariance_residual = op_norm(t.adjoint() * g + g * t) / (xs * op_norm(g));
    const double us = std::max(1.0, op_norm(u));
    r.unitarity_residual = op_norm(u.adjoint() * g0 + g0 * u) / (us * op_norm(g0));
  } else {
    r.invariance_residual = invariance_residual(t, g);
    r.unitarity_residual = invariance_residual(u, g0);
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> qs(r.q_factor, Eigen::EigenvaluesOnly);
  r.q_min_eigenvalue = qs.eigenvalues().minCoeff();
  r.q_max_eigenvalue = qs.eigenvalues().maxCoeff();
  return r;
}

}  // namespace

std::pair<CMatrix, CMatrix> positive_factor(const HermitianForm& invariant,
                                            const HermitianForm& h0,
                                            const ToleranceConfig& cfg) {
  if (invariant.dim() != h0.dim()) {
    throw Error(ErrorKind::kInvalidInput, "form dimensions differ");
  }
  if (h0.is_identity()) {
    const CMatrix q = psd_sqrt(invariant, cfg);
    return {q, HermitianForm(q, cfg.psd_tol).gram().llt().solve(
                   CMatrix::Identity(q.rows(), q.cols()))};
  }
  // h0-orthonormal coordinates x' = L* x with G0 = L L*.
  Eigen::LLT<CMatrix> llt(h0.gram());
  const CMatrix l = llt.matrixL();
  const CMatrix l_inv = l.triangularView<Eigen::Lower>().solve(
      CMatrix::Identity(l.rows(), l.cols()));
  const CMatrix local = hermitian_part(l_inv * invariant.gram() * l_inv.adjoint());
  const CMatrix q_local = psd_sqrt(HermitianForm(local, cfg.psd_tol), cfg);
  const CMatrix q_local_inv = q_local.llt().solve(CMatrix::Identity(l.rows(), l.cols()));
  return {l_inv.adjoint() * q_local * l.adjoint(), l_inv.adjoint() * q_local_inv * l.adjoint()};
}

NagyResult nagy_metric(const CMatrix& t, const HermitianForm& h0, const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  require_same_dim(t, h0);
  BoundednessReport report = check_uniformly_bounded(t, cfg);
  if (!report.bounded()) {
    throw Error(ErrorKind::kNotUniformlyBounded, "T fails the Nagy criterion", "T");
  }
  const SpectralFrame frame = make_frame(report.spectrum);
  const CMatrix g = hermitian_part(banach_limit(frame, h0.gram()));
  return assemble(t, h0, HermitianForm(g, cfg.psd_tol), std::move(report.spectrum),
                  /*flow=*/false, cfg);
}

CesaroAverage cesaro_average(const CMatrix& left, const CMatrix& right, const CMatrix& x,
                             int horizon) {
  if (horizon <= 0) throw Error(ErrorKind::kInvalidInput, "horizon must be positive");
  if (left.rows() != x.rows() || right.rows() != x.cols() || !left.allFinite() ||
      !right.allFinite() || !x.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, "operand dimensions differ or are non-finite");
  }
  const double limit = 1e6 * std::max(x.norm(), std::numeric_limits<double>::min());
  const int decade = std::max(1, horizon / 10);
  CMatrix lp = CMatrix::Identity(left.rows(), left.cols());
  CMatrix rp = CMatrix::Identity(right.rows(), right.cols());
  CMatrix sum = CMatrix::Zero(x.rows(), x.cols());
  CMatrix early_mean;
  for (int n = 0; n < horizon; ++n) {
    const CMatrix term = lp.adjoint() * x * rp;
    if (!(term.norm() <= limit)) {
      throw Error(ErrorKind::kDivergenceDetected,
                  "partial terms exceed 1e6 times the fiducial norm at n = " +
                      std::to_string(n));
    }
    sum += term;
    if (n + 1 == decade) early_mean = sum / static_cast<double>(decade);
    lp = lp * left;
    rp = rp * right;
  }
  CesaroAverage out;
  out.value = sum / static_cast<double>(horizon);
  out.horizon = horizon;
  const double scale = out.value.norm() > 1e-12 * x.norm() ? out.value.norm() : x.norm();
  out.residual = scale > 0.0 ? (out.value - early_mean).norm() / scale : 0.0;
  return out;
}

CesaroResult cesaro_oracle(const CMatrix& t, const HermitianForm& h0, int horizon,
                           const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  require_same_dim(t, h0);
  const CesaroAverage avg = cesaro_average(t, t, h0.gram(), horizon);
  CesaroResult r;
  r.form = HermitianForm(hermitian_part(avg.value), cfg.psd_tol);
  r.residual = avg.residual;
  r.horizon = horizon;
  r.converged = avg.residual <= cfg.cesaro_rel_tol;
  return r;
}

namespace {

constexpr double kShiftRcond = 1e-13;

CMatrix solve_shift(const CMatrix& numerator, const CMatrix& shift, const char* what) {
  Eigen::PartialPivLU<CMatrix> lu(shift);
  if (!(lu.rcond() > kShiftRcond)) {
    throw Error(ErrorKind::kSingularShift, std::string(what) + " is singular");
  }
  // numerator * shift^-1; the two factors commute.
  return lu.inverse() * numerator;
}

}  // namespace

CMatrix cayley(const CMatrix& h) {
  require_square_finite(h, "H");
  const Complex i(0.0, 1.0);
  const CMatrix id = CMatrix::Identity(h.rows(), h.cols());
  return solve_shift(h - i * id, h + i * id, "H + iI");
}

CMatrix inverse_cayley(const CMatrix& t) {
  require_square_finite(t, "T");
  const Complex i(0.0, 1.0);
  const CMatrix id = CMatrix::Identity(t.rows(), t.cols());
  return solve_shift(i * (id + t), id - t, "I - T");
}

CMatrix unitary_log(const CMatrix& t, const NagyResult& nagy) {
  require_square_finite(t, "T");
  require_same_dim(t, nagy.invariant_form);
  const ToleranceConfig& cfg = nagy.tolerances;
  if (invariance_residual(t, nagy.invariant_form.gram()) > 1e3 * cfg.unitarity_tol) {
    throw Error(ErrorKind::kInvalidInput, "Nagy result does not belong to T");
  }
  const BoundednessReport report = check_uniformly_bounded(t, cfg);
  if (!report.bounded()) {
    throw Error(ErrorKind::kNotUniformlyBounded, "T fails the Nagy criterion", "T");
  }
  const SpectralFrame frame = make_frame(report.spectrum);
  CMatrix a = CMatrix::Zero(t.rows(), t.cols());
  for (Index k = 0; k < frame.num_clusters(); ++k) {
    const double theta = phase_of(frame.cluster_values(k), cfg.eig_cluster_tol);
    if (theta != 0.0) a += theta * frame.projector(k);
  }
  return a;
}

NagyResult flow_metric(const CMatrix& x, const HermitianForm& h0, const ToleranceConfig& cfg) {
  require_square_finite(x, "X");
  require_same_dim(x, h0);
  EigenDecomposition ed = eig(x, cfg);
  const double scale = std::max(1.0, op_norm(x));
  if (!ed.diagonalizable) {
    throw Error(ErrorKind::kNotBoundedFlow, "generator is not diagonalizable", "X");
  }
  for (Index k = 0; k < ed.num_clusters(); ++k) {
    if (std::abs(ed.cluster_values(k).real()) > cfg.eig_cluster_tol * scale) {
      throw Error(ErrorKind::kNotBoundedFlow, "generator has an eigenvalue off the imaginary axis",
                  "X");
    }
  }
  const SpectralFrame frame = make_frame(ed);
  const CMatrix g = hermitian_part(banach_limit(frame, h0.gram()));
  return assemble(x, h0, HermitianForm(g, cfg.psd_tol), std::move(ed), /*flow=*/true, cfg);
}

CMatrix spectral_exp(const CMatrix& x, Complex s, const ToleranceConfig& cfg) {
  const EigenDecomposition ed = eig(x, cfg);
  if (!ed.diagonalizable) {
    throw Error(ErrorKind::kInvalidInput, "spectral_exp needs a diagonalizable generator");
  }
  const SpectralFrame frame = make_frame(ed);
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (Index k = 0; k < frame.num_clusters(); ++k) {
    out += std::exp(s * frame.cluster_values(k)) * frame.projector(k);
  }
  return out;
}

}  // namespace unitarize
