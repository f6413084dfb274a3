#include "unitarize/boundedness.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace unitarize {

std::string_view to_string(BoundednessVerdict v) {
  return v == BoundednessVerdict::kUniformlyBounded ? "UniformlyBounded" : "NotBounded";
}
std::string_view to_string(GeneratorVerdict v) {
  return v == GeneratorVerdict::kSimilarToSelfAdjoint ? "SimilarToSelfAdjoint" : "Not";
}
std::string_view to_string(NormalVerdict v) {
  switch (v) {
    case NormalVerdict::kAlreadyUnitary: return "AlreadyUnitary";
    case NormalVerdict::kNotSimilarToUnitary: return "NotSimilarToUnitary";
    case NormalVerdict::kNotNormal: return "NotNormal";
  }
  return "Unknown";
}
std::string_view to_string(BoundednessReason::Kind k) {
  switch (k) {
    case BoundednessReason::Kind::kOffCircleEigenvalue: return "OffCircleEigenvalue";
    case BoundednessReason::Kind::kDefectiveUnimodularEigenvalue:
      return "DefectiveUnimodularEigenvalue";
    case BoundednessReason::Kind::kAllConditionsMet: return "AllConditionsMet";
  }
  return "Unknown";
}
std::string_view to_string(GeneratorReason::Kind k) {
  switch (k) {
    case GeneratorReason::Kind::kNonRealEigenvalue: return "NonRealEigenvalue";
    case GeneratorReason::Kind::kDefectiveEigenvalue: return "DefectiveEigenvalue";
    case GeneratorReason::Kind::kAllConditionsMet: return "AllConditionsMet";
  }
  return "Unknown";
}

namespace {

bool is_defective(const EigenDecomposition& ed, Index cluster) {
  return std::find(ed.defective_clusters.begin(), ed.defective_clusters.end(), cluster) !=
         ed.defective_clusters.end();
}

}  // namespace

BoundednessReport check_uniformly_bounded(const CMatrix& t, const ToleranceConfig& cfg,
                                          int power_window) {
  require_square_finite(t, "T");
  const Index n = t.rows();
  Eigen::JacobiSVD<CMatrix> svd(t);
  const auto& s = svd.singularValues();
  if (!(s(n - 1) > cfg.psd_tol * s(0))) {
    throw Error(ErrorKind::kNotAutomorphism, "T is not invertible", "T");
  }

  BoundednessReport report;
  report.spectrum = eig(t, cfg);
  const auto& ed = report.spectrum;
  for (Index k = 0; k < ed.num_clusters(); ++k) {
    const Complex lam = ed.cluster_values(k);
    if (std::abs(std::abs(lam) - 1.0) > cfg.eig_cluster_tol) {
      report.reasons.push_back({BoundednessReason::Kind::kOffCircleEigenvalue, lam});
    } else if (is_defective(ed, k)) {
      report.reasons.push_back({BoundednessReason::Kind::kDefectiveUnimodularEigenvalue, lam});
    }
  }
  if (report.reasons.empty()) {
    report.verdict = BoundednessVerdict::kUniformlyBounded;
    report.reasons.push_back({BoundednessReason::Kind::kAllConditionsMet, {}});
  }

  Eigen::PartialPivLU<CMatrix> lu(t);
  const CMatrix t_inv = lu.inverse();
  CMatrix fwd = CMatrix::Identity(n, n);
  CMatrix bwd = CMatrix::Identity(n, n);
  std::vector<std::pair<int, double>> neg;
  report.sampled_power_norms.emplace_back(0, 1.0);
  for (int k = 1; k <= power_window; ++k) {
    fwd = fwd * t;
    bwd = bwd * t_inv;
    report.sampled_power_norms.emplace_back(k, op_norm(fwd));
    neg.emplace_back(-k, op_norm(bwd));
  }
  report.sampled_power_norms.insert(report.sampled_power_norms.begin(), neg.rbegin(),
                                    neg.rend());
  if (report.bounded()) {
    double bound = 0.0;
    for (const auto& [k, norm] : report.sampled_power_norms) bound = std::max(bound, norm);
    report.bound_estimate = bound;
  }
  return report;
}

GeneratorReport check_generator(const CMatrix& h, const ToleranceConfig& cfg) {
  require_square_finite(h, "H");
  const EigenDecomposition ed = eig(h, cfg);
  GeneratorReport report;
  report.spectrum = ed.eigenvalues;
  const double scale = std::max(1.0, op_norm(h));
  for (Index k = 0; k < ed.num_clusters(); ++k) {
    const Complex lam = ed.cluster_values(k);
    if (std::abs(lam.imag()) > cfg.eig_cluster_tol * scale) {
      report.defects.push_back({GeneratorReason::Kind::kNonRealEigenvalue, lam});
    }
    if (is_defective(ed, k)) {
      report.defects.push_back({GeneratorReason::Kind::kDefectiveEigenvalue, lam});
    }
  }
  if (report.defects.empty()) {
    report.verdict = GeneratorVerdict::kSimilarToSelfAdjoint;
    report.defects.push_back({GeneratorReason::Kind::kAllConditionsMet, {}});
  }
  return report;
}

NormalVerdict check_normal_dichotomy(const CMatrix& t, const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  const double norm = op_norm(t);
  const double comm = op_norm(t * t.adjoint() - t.adjoint() * t);
  if (comm > cfg.unitarity_tol * norm * norm) return NormalVerdict::kNotNormal;
  const CVector lam = eigenvalues(t);
  for (Index i = 0; i < lam.size(); ++i) {
    if (std::abs(std::abs(lam(i)) - 1.0) > cfg.eig_cluster_tol) {
      return NormalVerdict::kNotSimilarToUnitary;
    }
  }
  const Index n = t.rows();
  if (op_norm(t.adjoint() * t - CMatrix::Identity(n, n)) > cfg.unitarity_tol) {
    return NormalVerdict::kNotSimilarToUnitary;
  }
  return NormalVerdict::kAlreadyUnitary;
}

ResolventEstimate resolvent_bound_estimate(const CMatrix& t, const std::vector<double>& radii,
                                           int samples) {
  require_square_finite(t, "T");
  if (samples < 8) throw Error(ErrorKind::kInvalidInput, "need at least 8 samples");
  if (radii.empty()) throw Error(ErrorKind::kInvalidInput, "no radii given");
  for (double r : radii) {
    if (!(r > 1.0)) throw Error(ErrorKind::kInvalidInput, "radii must exceed 1");
  }
  const Index n = t.rows();
  const double dtheta = 2.0 * std::numbers::pi / samples;
  ResolventEstimate out;
  for (double r : radii) {
    Eigen::VectorXd integral = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < samples; ++j) {
      const Complex lam = std::polar(r, j * dtheta);
      const CMatrix shifted = t - lam * CMatrix::Identity(n, n);
      Eigen::PartialPivLU<CMatrix> lu(shifted);
      if (!(lu.rcond() > 1e-14)) {
        ++out.skipped_samples;
        continue;
      }
      const CMatrix resolvent = lu.inverse();
      integral += resolvent.colwise().squaredNorm().transpose();
    }
    const double value = (r * r - 1.0) * dtheta * integral.maxCoeff();
    out.per_radius.push_back(value);
    out.estimate = std::max(out.estimate, value);
  }
  return out;
}

}  // namespace unitarize
