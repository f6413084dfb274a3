#pragma once

#include <utility>
#include <vector>

#include "unitarize/linalg.h"

namespace unitarize {

/// A diagonalizing basis P of an operator together with its dual rows
/// W = P^-1, grouped by eigenvalue cluster. E_k = P_k W_k are the spectral
/// projectors.
struct SpectralFrame {
  CMatrix vectors;
  CMatrix duals;
  std::vector<std::vector<Index>> clusters;
  std::vector<Index> cluster_of;
  CVector cluster_values;

  Index dim() const { return vectors.rows(); }
  Index num_clusters() const { return static_cast<Index>(clusters.size()); }

  CMatrix block(Index k) const;
  CMatrix dual_block(Index k) const;
  CMatrix projector(Index k) const;
};

/// Frame from the eigenvectors as returned by `eig`.
SpectralFrame make_frame(const EigenDecomposition& ed);

/// Frame whose cluster blocks are orthonormal with respect to `h`.
/// Singleton columns keep the phase convention of `eig`.
SpectralFrame make_frame(const EigenDecomposition& ed, const HermitianForm& h);

/// Frame built from caller-supplied eigenvector columns. Each column is
/// assigned to the cluster of `ed` nearest its Rayleigh quotient and placed in
/// that cluster's slots, in column order. Throws kInvalidInput if a column is
/// not an eigenvector of `t` or the cluster counts disagree.
SpectralFrame frame_from_columns(const EigenDecomposition& ed, const CMatrix& t,
                                 const CMatrix& columns, const ToleranceConfig& cfg = {});

/// Pairs (k, q) of clusters of `left` and `right` whose values agree within
/// `tol`.
std::vector<std::pair<Index, Index>> match_clusters(const SpectralFrame& left,
                                                    const SpectralFrame& right,
                                                    double tol);

/// Closed-form generalized limit of (L^n)* X R^n for operators L and R
/// diagonalized by `left` and `right` with unimodular spectra: only entries
/// of P_L* X P_R whose clusters are matched survive averaging.
CMatrix banach_limit(const SpectralFrame& left, const SpectralFrame& right,
                     const CMatrix& x,
                     const std::vector<std::pair<Index, Index>>& matched);

/// Same-operator case, L = R.
CMatrix banach_limit(const SpectralFrame& frame, const CMatrix& x);

}  // namespace unitarize
