#include "unitarize/spectral.h"

#include <Eigen/LU>

namespace unitarize {

CMatrix SpectralFrame::block(Index k) const {
  const auto& members = clusters.at(k);
  CMatrix b(dim(), static_cast<Index>(members.size()));
  for (std::size_t c = 0; c < members.size(); ++c) b.col(c) = vectors.col(members[c]);
  return b;
}

CMatrix SpectralFrame::dual_block(Index k) const {
  const auto& members = clusters.at(k);
  CMatrix b(static_cast<Index>(members.size()), dim());
  for (std::size_t c = 0; c < members.size(); ++c) b.row(c) = duals.row(members[c]);
  return b;
}

CMatrix SpectralFrame::projector(Index k) const { return block(k) * dual_block(k); }

namespace {

SpectralFrame frame_from(const EigenDecomposition& ed, CMatrix vectors) {
  SpectralFrame f;
  Eigen::FullPivLU<CMatrix> lu(vectors);
  if (!lu.isInvertible()) {
    throw Error(ErrorKind::kNumericalFailure, "eigenvector matrix is singular");
  }
  f.duals = lu.inverse();
  f.vectors = std::move(vectors);
  f.clusters = ed.clusters;
  f.cluster_of = ed.cluster_of;
  f.cluster_values = ed.cluster_values;
  return f;
}

}  // namespace

SpectralFrame make_frame(const EigenDecomposition& ed) {
  return frame_from(ed, ed.eigenvectors);
}

SpectralFrame make_frame(const EigenDecomposition& ed, const HermitianForm& h) {
  CMatrix p = ed.eigenvectors;
  for (const auto& members : ed.clusters) {
    const Index m = static_cast<Index>(members.size());
    CMatrix b(p.rows(), m);
    for (Index c = 0; c < m; ++c) b.col(c) = p.col(members[c]);
    const CMatrix gram = b.adjoint() * h.gram() * b;
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::kNumericalFailure, "cluster basis is degenerate");
    }
    // b L^-*, so that (b L^-*)* G (b L^-*) = I.
    const CMatrix ortho =
        llt.matrixU().solve<Eigen::OnTheRight>(b);
    for (Index c = 0; c < m; ++c) p.col(members[c]) = ortho.col(c);
  }
  return frame_from(ed, std::move(p));
}

SpectralFrame frame_from_columns(const EigenDecomposition& ed, const CMatrix& t,
                                 const CMatrix& columns, const ToleranceConfig& cfg) {
  const Index n = ed.dim();
  if (columns.rows() != n || columns.cols() != n || !columns.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, "frame must be a finite square matrix of T's size");
  }
  const double scale = std::max(1.0, op_norm(t));
  const double accept = 1e3 * cfg.eig_cluster_tol * scale;
  std::vector<std::size_t> filled(ed.clusters.size(), 0);
  CMatrix p(n, n);
  for (Index c = 0; c < n; ++c) {
    const CVector v = columns.col(c);
    const double vn = v.norm();
    if (vn == 0.0) throw Error(ErrorKind::kInvalidInput, "frame has a zero column");
    const Complex lam = v.dot(t * v) / (vn * vn);
    if ((t * v - lam * v).norm() > accept * vn) {
      throw Error(ErrorKind::kInvalidInput,
                  "frame column " + std::to_string(c) + " is not an eigenvector");
    }
    Index best = 0;
    for (Index k = 1; k < ed.num_clusters(); ++k) {
      if (std::abs(ed.cluster_values(k) - lam) < std::abs(ed.cluster_values(best) - lam)) {
        best = k;
      }
    }
    if (std::abs(ed.cluster_values(best) - lam) > accept) {
      throw Error(ErrorKind::kInvalidInput,
                  "frame column " + std::to_string(c) + " matches no eigenvalue");
    }
    const auto& members = ed.clusters[static_cast<std::size_t>(best)];
    std::size_t& slot = filled[static_cast<std::size_t>(best)];
    if (slot >= members.size()) {
      throw Error(ErrorKind::kInvalidInput, "frame overfills cluster " + std::to_string(best));
    }
    p.col(members[slot++]) = v;
  }
  return frame_from(ed, std::move(p));
}

std::vector<std::pair<Index, Index>> match_clusters(const SpectralFrame& left,
                                                    const SpectralFrame& right,
                                                    double tol) {
  std::vector<std::pair<Index, Index>> out;
  for (Index k = 0; k < left.num_clusters(); ++k) {
    for (Index q = 0; q < right.num_clusters(); ++q) {
      if (std::abs(left.cluster_values(k) - right.cluster_values(q)) <= tol) {
        out.emplace_back(k, q);
      }
    }
  }
  return out;
}

CMatrix banach_limit(const SpectralFrame& left, const SpectralFrame& right,
                     const CMatrix& x,
                     const std::vector<std::pair<Index, Index>>& matched) {
  const CMatrix full = left.vectors.adjoint() * x * right.vectors;
  CMatrix kept = CMatrix::Zero(full.rows(), full.cols());
  for (const auto& [k, q] : matched) {
    for (Index i : left.clusters.at(k)) {
      for (Index j : right.clusters.at(q)) kept(i, j) = full(i, j);
    }
  }
  return left.duals.adjoint() * kept * right.duals;
}

CMatrix banach_limit(const SpectralFrame& frame, const CMatrix& x) {
  std::vector<std::pair<Index, Index>> same;
  same.reserve(static_cast<std::size_t>(frame.num_clusters()));
  for (Index k = 0; k < frame.num_clusters(); ++k) same.emplace_back(k, k);
  return banach_limit(frame, frame, x, same);
}

}  // namespace unitarize
