#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "unitarize/error.h"

namespace unitarize {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every module. Read-only once built.
struct ToleranceConfig {
  double eig_cluster_tol = 1e-8;
  double psd_tol = 1e-10;
  double unitarity_tol = 1e-9;
  int cesaro_horizon = 4096;
  double cesaro_rel_tol = 1e-6;
  // Reciprocal condition number of the unit-column eigenvector matrix
  // below which eigenvalues that split apart under rounding are treated as
  // one defective (Jordan) cluster.
  double defect_rcond = 1e-4;

  /// Throws kInvalidInput unless every field is strictly positive.
  void validate() const;
};

/// Throws kInvalidInput if `m` is empty, not square, or has NaN/Inf entries.
void require_square_finite(const CMatrix& m, const std::string& name);

/// Spectral (largest singular value) norm.
double op_norm(const CMatrix& m);

CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Positive-definite Hermitian form h(x, y) = x* G y, antilinear in x.
class HermitianForm {
 public:
  /// Empty (dimension 0) placeholder.
  HermitianForm() = default;

  /// Validates Hermiticity and positive definiteness at `psd_tol` relative to
  /// ||gram||, then stores the exactly Hermitian part.
  explicit HermitianForm(const CMatrix& gram, double psd_tol = 1e-10);

  static HermitianForm identity(Index dim);

  const CMatrix& gram() const { return gram_; }
  Index dim() const { return gram_.rows(); }
  bool is_identity() const { return identity_; }

  Complex operator()(const CVector& x, const CVector& y) const;

  double min_eigenvalue() const { return min_eig_; }
  double max_eigenvalue() const { return max_eig_; }

 private:
  CMatrix gram_;
  double min_eig_ = 1.0;
  double max_eig_ = 1.0;
  bool identity_ = false;
};

struct EigenDecomposition {
  // Sorted by (argument in [0, 2pi), modulus).
  CVector eigenvalues;
  // Unit-norm columns; columns of a multi-member cluster are an orthonormal
  // basis of the numerical eigenspace.
  CMatrix eigenvectors;
  bool diagonalizable = true;
  // Each cluster lists eigenvalue indices, ascending; clusters are ordered by
  // their first member.
  std::vector<std::vector<Index>> clusters;
  std::vector<Index> cluster_of;
  // Mean of each cluster's eigenvalues.
  CVector cluster_values;
  std::vector<Index> defective_clusters;
  double eigenvector_rcond = 1.0;
  std::vector<std::string> warnings;

  Index dim() const { return eigenvalues.size(); }
  Index num_clusters() const { return static_cast<Index>(clusters.size()); }
  bool multiplicity_free() const { return num_clusters() == dim(); }
};

/// Eigenvalues of a general square matrix (LAPACK zgeev), unordered.
CVector eigenvalues(const CMatrix& t);

/// Eigendecomposition with tolerance-based clustering and a numerical
/// diagonalizability verdict (per-cluster null-space rank plus eigenvector
/// conditioning).
EigenDecomposition eig(const CMatrix& t, const ToleranceConfig& cfg = {});

/// Phase in [0, 2pi); values within `snap` of 2pi map to 0.
double phase_of(Complex z, double snap = 0.0);

/// Unique positive square root of the Gram matrix of `g`.
CMatrix psd_sqrt(const HermitianForm& g, const ToleranceConfig& cfg = {});

/// Adjoint of `t` with respect to `h`: the operator t' with
/// h(t' x, y) = h(x, t y), i.e. G^-1 t* G.
CMatrix adjoint_wrt(const CMatrix& t, const HermitianForm& h);

/// The operator K with h(x, y) = h_ref(K x, y), i.e. G_ref^-1 G.
CMatrix relating_operator(const HermitianForm& h, const HermitianForm& h_ref);

/// ||t* G t - G|| / ||G||; zero iff t preserves the form.
double invariance_residual(const CMatrix& t, const CMatrix& gram);

/// ||t - adjoint_wrt(t, h)|| / max(||t||, tiny).
double self_adjointness_residual(const CMatrix& t, const HermitianForm& h);

CMatrix hermitian_part(const CMatrix& m);

/// Numerical rank with singular values at or below `rel_tol * sigma_max`
/// treated as zero.
Index numerical_rank(const CMatrix& m, double rel_tol);

}  // namespace unitarize
