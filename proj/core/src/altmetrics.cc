#include "unitarize/altmetrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "unitarize/boundedness.h"
#include "unitarize/spectral.h"

namespace unitarize {

std::string_view to_string(DependencePairing p) {
  return p == DependencePairing::kFiducial ? "Fiducial" : "Invariant";
}

std::pair<double, double> ScalingSpec::bounds() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& [k, w] : weights) {
    if (const double* s = std::get_if<double>(&w)) {
      lo = std::min(lo, *s);
      hi = std::max(hi, *s);
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(std::get<CMatrix>(w)),
                                                Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues().minCoeff());
      hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
  }
  return {lo, hi};
}

namespace {

EigenDecomposition bounded_spectrum(const CMatrix& t, const ToleranceConfig& cfg) {
  BoundednessReport report = check_uniformly_bounded(t, cfg);
  if (!report.bounded()) {
    throw Error(ErrorKind::kNotUniformlyBounded, "T fails the Nagy criterion", "T");
  }
  return std::move(report.spectrum);
}

CMatrix weight_block(const ClusterWeight& w, Index k, Index m, double psd_tol) {
  const std::string which = "cluster " + std::to_string(k);
  if (const double* s = std::get_if<double>(&w)) {
    if (!(*s > 0.0) || !std::isfinite(*s)) {
      throw Error(ErrorKind::kNonPositiveWeight, "weight must be positive and finite", which);
    }
    return *s * CMatrix::Identity(m, m);
  }
  const CMatrix& b = std::get<CMatrix>(w);
  if (b.rows() != m || b.cols() != m) {
    throw Error(ErrorKind::kInvalidInput,
                "weight block size differs from cluster multiplicity " + std::to_string(m),
                which);
  }
  try {
    return HermitianForm(b, psd_tol).gram();
  } catch (const Error&) {
    throw Error(ErrorKind::kNonPositiveWeight, "weight block is not positive definite", which);
  }
}

}  // namespace

HermitianForm scaled_metric(const CMatrix& t, const HermitianForm& h0, const ScalingSpec& spec,
                            const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  if (h0.dim() != t.rows()) throw Error(ErrorKind::kInvalidInput, "form dimension differs");
  const EigenDecomposition ed = bounded_spectrum(t, cfg);
  const SpectralFrame frame =
      spec.frame ? frame_from_columns(ed, t, *spec.frame, cfg) : make_frame(ed, h0);

  const Index n = t.rows();
  CMatrix gram = CMatrix::Zero(n, n);
  for (Index k = 0; k < frame.num_clusters(); ++k) {
    auto it = spec.weights.find(k);
    if (it == spec.weights.end()) {
      throw Error(ErrorKind::kMissingClusterWeight, "no weight for cluster",
                  "cluster " + std::to_string(k));
    }
    const CMatrix w = frame.dual_block(k);
    gram += w.adjoint() * weight_block(it->second, k, w.rows(), cfg.psd_tol) * w;
  }
  for (const auto& [k, w] : spec.weights) {
    if (k < 0 || k >= frame.num_clusters()) {
      throw Error(ErrorKind::kInvalidInput, "weight given for a cluster T does not have",
                  "cluster " + std::to_string(k));
    }
  }
  return HermitianForm(hermitian_part(gram), cfg.psd_tol);
}

ScalingSpec nagy_scaling(const CMatrix& t, const HermitianForm& h0, const CMatrix& frame_columns,
                         const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  const EigenDecomposition ed = bounded_spectrum(t, cfg);
  const SpectralFrame frame = frame_from_columns(ed, t, frame_columns, cfg);
  ScalingSpec spec;
  spec.frame = frame.vectors;
  for (Index k = 0; k < frame.num_clusters(); ++k) {
    const CMatrix b = frame.block(k);
    const CMatrix block = hermitian_part(b.adjoint() * h0.gram() * b);
    if (block.rows() == 1) {
      spec.weights.emplace(k, block(0, 0).real());
    } else {
      spec.weights.emplace(k, block);
    }
  }
  return spec;
}

PhiMetric phi_metric(const CMatrix& t, const NagyResult& nagy, const std::map<Index, double>& phi,
                     const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  const EigenDecomposition& ed_t = nagy.spectrum;
  if (ed_t.dim() != t.rows()) {
    throw Error(ErrorKind::kInvalidInput, "Nagy result does not belong to T");
  }
  for (Index k = 0; k < ed_t.num_clusters(); ++k) {
    auto it = phi.find(k);
    if (it == phi.end()) {
      throw Error(ErrorKind::kMissingClusterWeight, "phi undefined on an eigenvalue",
                  "cluster " + std::to_string(k));
    }
    if (!(it->second > 0.0) || !std::isfinite(it->second)) {
      throw Error(ErrorKind::kNonPositivePhi, "phi must be positive and finite",
                  "cluster " + std::to_string(k));
    }
  }

  const Index n = t.rows();
  const CMatrix& q = nagy.q_factor;
  const CMatrix& q_inv = nagy.q_inverse;
  const EigenDecomposition ed_u = eig(nagy.unitarized, cfg);
  const SpectralFrame frame_u = make_frame(ed_u, nagy.fiducial_form);

  // B - I = sum_k (phi_k - 1) E_k keeps phi == 1 exact.
  CMatrix b_minus_i = CMatrix::Zero(n, n);
  for (Index j = 0; j < frame_u.num_clusters(); ++j) {
    Index best = 0;
    for (Index k = 1; k < ed_t.num_clusters(); ++k) {
      if (std::abs(ed_t.cluster_values(k) - frame_u.cluster_values(j)) <
          std::abs(ed_t.cluster_values(best) - frame_u.cluster_values(j))) {
        best = k;
      }
    }
    const double weight = phi.at(best) - 1.0;
    if (weight != 0.0) b_minus_i += weight * frame_u.projector(j);
  }

  PhiMetric out;
  const CMatrix& g_t = nagy.invariant_form.gram();
  if (b_minus_i.isZero(0.0)) {
    out.c_phi = CMatrix::Identity(n, n);
    out.form = nagy.invariant_form;
  } else {
    const CMatrix delta = q_inv * b_minus_i * q;
    out.c_phi = CMatrix::Identity(n, n) + delta;
    out.form = HermitianForm(hermitian_part(g_t + g_t * delta), cfg.psd_tol);
  }
  out.commutator_residual =
      op_norm(commutator(t, out.c_phi)) / (op_norm(t) * op_norm(out.c_phi));
  return out;
}

std::vector<CMatrix> commutant_positive_basis(const CMatrix& t, const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  const EigenDecomposition ed = eig(t, cfg);
  if (!ed.diagonalizable) {
    throw Error(ErrorKind::kInvalidInput, "T is not diagonalizable", "T");
  }
  const SpectralFrame frame = make_frame(ed, HermitianForm::identity(t.rows()));
  std::vector<CMatrix> basis;
  const Complex i(0.0, 1.0);
  for (Index k = 0; k < frame.num_clusters(); ++k) {
    const CMatrix p = frame.block(k);
    const CMatrix w = frame.dual_block(k);
    const Index m = p.cols();
    for (Index a = 0; a < m; ++a) {
      for (Index b = a; b < m; ++b) {
        CMatrix h = CMatrix::Zero(m, m);
        if (a == b) {
          h(a, a) = 1.0;
          basis.push_back(p * h * w);
          continue;
        }
        h(a, b) = 1.0;
        h(b, a) = 1.0;
        basis.push_back(p * h * w);
        h(a, b) = -i;
        h(b, a) = i;
        basis.push_back(p * h * w);
      }
    }
  }
  return basis;
}

MetricChangeReport metric_dependence(const CMatrix& t, const HermitianForm& h0,
                                     const HermitianForm& h0_prime, const ToleranceConfig& cfg,
                                     DependencePairing pairing) {
  require_square_finite(t, "T");
  if (h0.dim() != t.rows() || h0_prime.dim() != t.rows()) {
    throw Error(ErrorKind::kInvalidInput, "form dimension differs from T");
  }
  const NagyResult nagy = nagy_metric(t, h0, cfg);
  const NagyResult nagy_p = nagy_metric(t, h0_prime, cfg);

  MetricChangeReport r;
  r.pairing = pairing;
  r.invariant_form = nagy.invariant_form;
  r.invariant_form_prime = nagy_p.invariant_form;
  r.C = relating_operator(h0, h0_prime);
  r.R = relating_operator(nagy.invariant_form, nagy_p.invariant_form);

  const CMatrix& pair_gram =
      pairing == DependencePairing::kFiducial ? h0_prime.gram() : nagy_p.invariant_form.gram();
  const CMatrix pc = pair_gram * r.C;
  const Eigen::LLT<CMatrix> gtp(nagy_p.invariant_form.gram());

  // A = G_T'^-1 Lim (T^n)* P [C, T^n] with P the pairing Gram.
  const SpectralFrame frame = make_frame(nagy_p.spectrum);
  r.A = gtp.solve(banach_limit(frame, pc) - banach_limit(frame, pair_gram) * r.C);

  r.cesaro_horizon = cfg.cesaro_horizon;
  try {
    const CesaroAverage avg_pc = cesaro_average(t, t, pc, cfg.cesaro_horizon);
    const CesaroAverage avg_p = cesaro_average(t, t, pair_gram, cfg.cesaro_horizon);
    const CMatrix a_cesaro = gtp.solve(avg_pc.value - avg_p.value * r.C);
    const double scale = std::max(op_norm(r.A), op_norm(r.C));
    r.cesaro_residual = op_norm(a_cesaro - r.A) / scale;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDivergenceDetected) throw;
    throw Error(ErrorKind::kCesaroDivergence, e.what(), "A_n");
  }
  if (r.cesaro_residual > 1e-3) {
    r.warnings.push_back("slow Cesaro convergence for A: relative gap " +
                         std::to_string(r.cesaro_residual));
  }

  const double norm_r = op_norm(r.R);
  const double norm_t = op_norm(t);
  r.residual_R_eq = op_norm(r.R - (r.C + r.A)) / norm_r;
  r.residual_comm_eq =
      op_norm(commutator(r.A, t) + commutator(r.C, t)) / (op_norm(r.C) * norm_t);
  r.commutator_R = op_norm(commutator(r.R, t)) / (norm_r * norm_t);
  for (const auto& w : nagy.warnings) r.warnings.push_back(w);
  return r;
}

}  // namespace unitarize
