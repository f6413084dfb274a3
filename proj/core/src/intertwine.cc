#include "unitarize/intertwine.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "unitarize/boundedness.h"
#include "unitarize/nagy.h"

namespace unitarize {

namespace {

EigenDecomposition bounded_spectrum(const CMatrix& t, const std::string& which,
                                    const ToleranceConfig& cfg) {
  require_square_finite(t, which);
  BoundednessReport report = check_uniformly_bounded(t, cfg);
  if (!report.bounded()) {
    throw Error(ErrorKind::kNotUniformlyBounded, which + " fails the Nagy criterion", which);
  }
  return std::move(report.spectrum);
}

void check_dims(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0) {
  if (t1.rows() != t2.rows() || h0.dim() != t1.rows()) {
    throw Error(ErrorKind::kInvalidInput, "T1, T2 and h0 dimensions differ");
  }
}

double relative(const CMatrix& diff, double scale) {
  const double d = op_norm(diff);
  return d == 0.0 ? 0.0 : d / std::max(scale, std::numeric_limits<double>::min());
}

void near_miss_warnings(const SpectralFrame& f1, const SpectralFrame& f2, double tol,
                        std::vector<std::string>& warnings) {
  for (Index k = 0; k < f1.num_clusters(); ++k) {
    for (Index q = 0; q < f2.num_clusters(); ++q) {
      const double d = std::abs(f1.cluster_values(k) - f2.cluster_values(q));
      if (d > tol && d <= 10.0 * tol) {
        warnings.push_back("eigenvalues of T1 cluster " + std::to_string(k) + " and T2 cluster " +
                           std::to_string(q) + " differ by " + std::to_string(d) +
                           ", just outside the matching tolerance");
      }
    }
  }
}

}  // namespace

IntertwineResult intertwiner(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                             const ToleranceConfig& cfg) {
  check_dims(t1, t2, h0);
  const EigenDecomposition ed1 = bounded_spectrum(t1, "T1", cfg);
  const EigenDecomposition ed2 = bounded_spectrum(t2, "T2", cfg);
  const SpectralFrame f1 = make_frame(ed1);
  const SpectralFrame f2 = make_frame(ed2);
  const auto matched = match_clusters(f1, f2, cfg.eig_cluster_tol);

  IntertwineResult r;
  r.warnings = ed1.warnings;
  r.warnings.insert(r.warnings.end(), ed2.warnings.begin(), ed2.warnings.end());
  near_miss_warnings(f1, f2, cfg.eig_cluster_tol, r.warnings);
  for (const auto& [k, q] : matched) r.common_eigenvalues.push_back(f1.cluster_values(k));

  const Eigen::LLT<CMatrix> g0(h0.gram());
  const CMatrix limit = banach_limit(f1, f2, h0.gram(), matched);
  r.F_matrix = g0.solve(limit);

  r.form_t1 = nagy_metric(t1, h0, cfg).invariant_form;
  r.form_t2 = nagy_metric(t2, h0, cfg).invariant_form;
  r.A1 = r.form_t1.gram().llt().solve(limit);
  r.A2 = r.form_t2.gram().llt().solve(limit);

  const double norm_a0 = op_norm(r.F_matrix);
  r.nonzero = norm_a0 > cfg.psd_tol * op_norm(h0.gram());
  r.rank = r.nonzero ? numerical_rank(r.F_matrix, cfg.psd_tol) : 0;

  const CMatrix q1_sq = relating_operator(r.form_t1, h0);
  const CMatrix q2_sq = relating_operator(r.form_t2, h0);
  r.relation_residuals["rel1"] =
      std::max(relative(r.F_matrix - q1_sq * r.A1, norm_a0),
               relative(r.F_matrix - q2_sq * r.A2, norm_a0));

  const double t_scale = std::max({1.0, op_norm(t1), op_norm(t2)});
  auto rel = [&](const CMatrix& a, const HermitianForm& h) {
    const CMatrix lhs = a * t2;
    const CMatrix rhs = Eigen::PartialPivLU<CMatrix>(adjoint_wrt(t1, h)).inverse() * a;
    return relative(lhs - rhs, op_norm(a) * t_scale);
  };
  r.relation_residuals["rel2"] = rel(r.F_matrix, h0);
  r.relation_residuals["rel3"] = rel(r.A1, r.form_t1);
  r.relation_residuals["rel4"] = rel(r.A2, r.form_t2);
  return r;
}

bool IntertwinerFrames::matched(Index i, Index j) const {
  const Index k = t1.cluster_of.at(static_cast<std::size_t>(i));
  const Index q = t2.cluster_of.at(static_cast<std::size_t>(j));
  return std::find(matched_clusters.begin(), matched_clusters.end(), std::make_pair(k, q)) !=
         matched_clusters.end();
}

IntertwinerFrames intertwiner_frames(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                                     const ToleranceConfig& cfg) {
  check_dims(t1, t2, h0);
  const EigenDecomposition ed1 = bounded_spectrum(t1, "T1", cfg);
  const EigenDecomposition ed2 = bounded_spectrum(t2, "T2", cfg);
  const HermitianForm h1 = nagy_metric(t1, h0, cfg).invariant_form;
  const HermitianForm h2 = nagy_metric(t2, h0, cfg).invariant_form;
  IntertwinerFrames f{make_frame(ed1, h1), make_frame(ed2, h2), {}};
  f.matched_clusters = match_clusters(f.t1, f.t2, cfg.eig_cluster_tol);
  return f;
}

PairWeights natural_overlaps(const IntertwinerFrames& frames, const HermitianForm& h0) {
  PairWeights w;
  const CMatrix overlaps = frames.t1.vectors.adjoint() * h0.gram() * frames.t2.vectors;
  for (const auto& [k, q] : frames.matched_clusters) {
    for (Index i : frames.t1.clusters.at(static_cast<std::size_t>(k))) {
      for (Index j : frames.t2.clusters.at(static_cast<std::size_t>(q))) {
        w[{i, j}] = overlaps(i, j);
      }
    }
  }
  return w;
}

CMatrix intertwiner_scaled(const IntertwinerFrames& frames, const PairWeights& weights) {
  const Index n = frames.t1.dim();
  CMatrix omega = CMatrix::Zero(n, n);
  for (const auto& [ij, w] : weights) {
    const auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorKind::kInvalidInput, "weight index out of range");
    }
    if (!frames.matched(i, j)) {
      throw Error(ErrorKind::kWeightOnUnmatchedPair,
                  "eigenvalues of frame columns differ",
                  "(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    omega(i, j) = w;
  }
  return frames.t1.vectors * omega * frames.t2.duals;
}

CMatrix intertwiner_scaled(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                           const PairWeights& weights, const ToleranceConfig& cfg) {
  return intertwiner_scaled(intertwiner_frames(t1, t2, h0, cfg), weights);
}

ARelation are_A_related(const CMatrix& t1, const CMatrix& t2, const CMatrix& a,
                        const ToleranceConfig& cfg) {
  if (t1.rows() != a.rows() || t2.cols() != a.cols() || t1.rows() != t1.cols() ||
      t2.rows() != t2.cols()) {
    throw Error(ErrorKind::kInvalidInput, "dimensions differ");
  }
  ARelation r;
  const double norm_a = op_norm(a);
  r.trivial = norm_a == 0.0;
  const double scale = norm_a * std::max(op_norm(t1), op_norm(t2));
  r.residual = relative(t1 * a - a * t2, scale);
  r.related = r.trivial || r.residual <= cfg.unitarity_tol;
  return r;
}

}  // namespace unitarize
