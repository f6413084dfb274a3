#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "unitarize/linalg.h"
#include "unitarize/spectral.h"

namespace unitarize {

struct IntertwineResult {
  // F(x, y) = h0(A0 x, y) = h_T1(A1 x, y) = h_T2(A2 x, y).
  CMatrix F_matrix;
  CMatrix A1;
  CMatrix A2;
  bool nonzero = false;
  Index rank = 0;
  std::vector<Complex> common_eigenvalues;
  // rel1: A0 = Q1^2 A1 = Q2^2 A2.
  // rel2..rel4: A T2 = (T1^dagger)^-1 A with the adjoint taken in h0, h_T1,
  // h_T2 for A0, A1, A2 respectively.
  std::map<std::string, double> relation_residuals;
  HermitianForm form_t1;
  HermitianForm form_t2;
  std::vector<std::string> warnings;
};

/// F(x, y) = Lim h0(T2^n x, T1^n y), so G0 A0 is the limit of
/// (T1^n)* G0 T2^n: entries of P1* G0 P2 between clusters with equal
/// eigenvalues survive.
IntertwineResult intertwiner(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                             const ToleranceConfig& cfg = {});

/// Eigenframes of T1 and T2, orthonormal per cluster in h_T1 and h_T2, with
/// the matched cluster pairs. Weights for intertwiner_scaled are keyed by
/// (column of T1's frame, column of T2's frame).
struct IntertwinerFrames {
  SpectralFrame t1;
  SpectralFrame t2;
  std::vector<std::pair<Index, Index>> matched_clusters;

  bool matched(Index i, Index j) const;
};

IntertwinerFrames intertwiner_frames(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                                     const ToleranceConfig& cfg = {});

using PairWeights = std::map<std::pair<Index, Index>, Complex>;

/// The overlaps p_i* G0 r_j on matched pairs; with these weights
/// intertwiner_scaled returns A1.
PairWeights natural_overlaps(const IntertwinerFrames& frames, const HermitianForm& h0);

/// A = P1 W P2^-1 with W the given weights on matched column pairs. Satisfies
/// T1 A = A T2 for any weights. Throws kWeightOnUnmatchedPair.
CMatrix intertwiner_scaled(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                           const PairWeights& weights, const ToleranceConfig& cfg = {});

CMatrix intertwiner_scaled(const IntertwinerFrames& frames, const PairWeights& weights);

struct ARelation {
  bool related = false;
  // A = 0 relates anything.
  bool trivial = false;
  double residual = 0.0;
};

/// T1 A = A T2 within tol * ||A|| * max(||T1||, ||T2||), tol = unitarity_tol.
ARelation are_A_related(const CMatrix& t1, const CMatrix& t2, const CMatrix& a,
                        const ToleranceConfig& cfg = {});

}  // namespace unitarize
