#include "unitarize/linalg.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <lapacke.h>

namespace unitarize {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kNumericalFailure: return "NumericalFailure";
    case ErrorKind::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::kNotAutomorphism: return "NotAutomorphism";
    case ErrorKind::kNotUniformlyBounded: return "NotUniformlyBounded";
    case ErrorKind::kDivergenceDetected: return "DivergenceDetected";
    case ErrorKind::kSingularShift: return "SingularShift";
    case ErrorKind::kNotBoundedFlow: return "NotBoundedFlow";
    case ErrorKind::kMissingClusterWeight: return "MissingClusterWeight";
    case ErrorKind::kNonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::kNonPositivePhi: return "NonPositivePhi";
    case ErrorKind::kCesaroDivergence: return "CesaroDivergence";
    case ErrorKind::kNotCommuting: return "NotCommuting";
    case ErrorKind::kRelationViolated: return "RelationViolated";
    case ErrorKind::kWeightOnUnmatchedPair: return "WeightOnUnmatchedPair";
    case ErrorKind::kFormMismatch: return "FormMismatch";
    case ErrorKind::kNotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kSpecInvariantViolated: return "SpecInvariantViolated";
  }
  return "Unknown";
}

void ToleranceConfig::validate() const {
  if (!(eig_cluster_tol > 0) || !(psd_tol > 0) || !(unitarity_tol > 0) ||
      cesaro_horizon <= 0 || !(cesaro_rel_tol > 0) || !(defect_rcond > 0)) {
    throw Error(ErrorKind::kInvalidInput,
                "tolerances must all be strictly positive");
  }
}

void require_square_finite(const CMatrix& m, const std::string& name) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw Error(ErrorKind::kInvalidInput, name + " must be a non-empty square matrix",
                name);
  }
  if (!m.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, name + " has non-finite entries", name);
  }
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

Index numerical_rank(const CMatrix& m, double rel_tol) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// HermitianForm

HermitianForm::HermitianForm(const CMatrix& gram, double psd_tol) {
  require_square_finite(gram, "gram");
  const double scale = op_norm(gram);
  if (scale == 0.0) {
    throw Error(ErrorKind::kNotPositiveDefinite, "gram matrix is zero");
  }
  if (op_norm(gram - gram.adjoint()) > psd_tol * scale) {
    throw Error(ErrorKind::kInvalidInput, "gram matrix is not Hermitian");
  }
  gram_ = hermitian_part(gram);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram_, Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues().minCoeff();
  max_eig_ = es.eigenvalues().maxCoeff();
  if (!(min_eig_ > psd_tol * scale)) {
    throw Error(ErrorKind::kNotPositiveDefinite,
                "gram matrix has eigenvalue " + std::to_string(min_eig_) +
                    " at or below psd_tol");
  }
  identity_ = gram_.isIdentity(0.0);
}

HermitianForm HermitianForm::identity(Index dim) {
  if (dim <= 0) throw Error(ErrorKind::kInvalidInput, "dimension must be positive");
  HermitianForm h;
  h.gram_ = CMatrix::Identity(dim, dim);
  h.identity_ = true;
  return h;
}

Complex HermitianForm::operator()(const CVector& x, const CVector& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw Error(ErrorKind::kInvalidInput, "vector dimension does not match form");
  }
  return x.dot(gram_ * y);  // Eigen's dot conjugates its left operand.
}

// ---------------------------------------------------------------------------
// Eigendecomposition

double phase_of(Complex z, double snap) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double p = std::arg(z);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi - snap || p >= kTwoPi) p = 0.0;
  return p;
}

namespace {

void normalize_phase(CVector& v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  if (vmax == 0.0) return;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a >= 0.5 * vmax) {
      v *= std::conj(v(i)) / a;
      v(i) = Complex(std::abs(v(i)), 0.0);
      return;
    }
  }
}

struct DisjointSet {
  explicit DisjointSet(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }
  Index find(Index i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<Index> parent;
};

}  // namespace

// Eigen's ComplexSchur stalls near 1e-6 on long weighted cycles; zgeev does not.
CVector eigenvalues(const CMatrix& t) {
  require_square_finite(t, "T");
  const Index n = t.rows();
  CMatrix a = t;
  CVector w(n);
  lapack_complex_double vl_dummy{}, vr_dummy{};
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(a.data()), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(w.data()), &vl_dummy, 1, &vr_dummy, 1);
  if (info != 0 || !w.allFinite()) {
    throw Error(ErrorKind::kNumericalFailure, "eigensolver did not converge");
  }
  return w;
}

EigenDecomposition eig(const CMatrix& t, const ToleranceConfig& cfg) {
  require_square_finite(t, "T");
  cfg.validate();
  const Index n = t.rows();

  const CVector raw = eigenvalues(t);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const double snap = cfg.eig_cluster_tol;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double pa = phase_of(raw(a), snap);
    const double pb = phase_of(raw(b), snap);
    if (pa != pb) return pa < pb;
    return std::abs(raw(a)) < std::abs(raw(b));
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  for (Index i = 0; i < n; ++i) out.eigenvalues(i) = raw(order[i]);
  const CVector& lam = out.eigenvalues;

  DisjointSet ds(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(lam(i) - lam(j)) <= cfg.eig_cluster_tol) ds.unite(i, j);
    }
  }
  std::vector<Index> root_to_cluster(static_cast<std::size_t>(n), -1);
  out.cluster_of.assign(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index r = ds.find(i);
    if (root_to_cluster[r] < 0) {
      root_to_cluster[r] = static_cast<Index>(out.clusters.size());
      out.clusters.emplace_back();
    }
    out.cluster_of[i] = root_to_cluster[r];
    out.clusters[root_to_cluster[r]].push_back(i);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = std::abs(lam(i) - lam(j));
      if (out.cluster_of[i] != out.cluster_of[j] && d <= 2.0 * cfg.eig_cluster_tol) {
        out.warnings.push_back("ClusterAmbiguity: eigenvalues " + std::to_string(i) +
                               " and " + std::to_string(j) +
                               " lie within 2x cluster tolerance but were not merged");
      }
    }
  }

  const double t_norm = op_norm(t);
  const double rank_tol = cfg.eig_cluster_tol * std::max(1.0, t_norm);
  out.cluster_values.resize(out.num_clusters());
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < out.num_clusters(); ++k) {
    const auto& members = out.clusters[k];
    const Index m = static_cast<Index>(members.size());
    Complex mean = 0.0;
    for (Index i : members) mean += lam(i);
    mean /= static_cast<double>(m);
    out.cluster_values(k) = mean;

    const CMatrix shifted = t - mean * CMatrix::Identity(n, n);
    Eigen::BDCSVD<CMatrix> svd(shifted, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Index null_dim = 0;
    for (Index i = 0; i < n; ++i) {
      if (s(i) <= rank_tol) ++null_dim;
    }
    if (null_dim < m) {
      out.diagonalizable = false;
      out.defective_clusters.push_back(k);
    }
    // Right singular vectors of the m smallest singular values.
    for (Index c = 0; c < m; ++c) {
      CVector v = svd.matrixV().col(n - m + c);
      if (m == 1) normalize_phase(v);
      out.eigenvectors.col(members[c]) = v;
    }
  }

  Eigen::JacobiSVD<CMatrix> psvd(out.eigenvectors, Eigen::ComputeFullV);
  const auto& ps = psvd.singularValues();
  out.eigenvector_rcond = ps(0) > 0.0 ? ps(n - 1) / ps(0) : 0.0;
  if (out.eigenvector_rcond < cfg.defect_rcond) {
    out.diagonalizable = false;
    // Columns carrying weight in the near-null direction are the ones that
    // collapsed onto each other.
    const CVector v = psvd.matrixV().col(n - 1);
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) >= 0.1 * vmax) {
        const Index k = out.cluster_of[i];
        if (std::find(out.defective_clusters.begin(), out.defective_clusters.end(), k) ==
            out.defective_clusters.end()) {
          out.defective_clusters.push_back(k);
        }
      }
    }
    std::sort(out.defective_clusters.begin(), out.defective_clusters.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factorizations and adjoints

CMatrix psd_sqrt(const HermitianForm& g, const ToleranceConfig& cfg) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g.gram());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::kNumericalFailure, "Hermitian eigensolver failed");
  }
  const auto& w = es.eigenvalues();
  if (!(w.minCoeff() > cfg.psd_tol * std::abs(w.maxCoeff()))) {
    throw Error(ErrorKind::kNotPositiveDefinite, "form is not positive definite");
  }
  const CMatrix& v = es.eigenvectors();
  const CMatrix q = v * w.cwiseSqrt().asDiagonal() * v.adjoint();
  return hermitian_part(q);
}

CMatrix adjoint_wrt(const CMatrix& t, const HermitianForm& h) {
  if (t.rows() != h.dim() || t.cols() != h.dim()) {
    throw Error(ErrorKind::kInvalidInput, "operator and form dimensions differ");
  }
  if (h.is_identity()) return t.adjoint();
  return h.gram().llt().solve(t.adjoint() * h.gram());
}

CMatrix relating_operator(const HermitianForm& h, const HermitianForm& h_ref) {
  if (h.dim() != h_ref.dim()) {
    throw Error(ErrorKind::kInvalidInput, "form dimensions differ");
  }
  if (h_ref.is_identity()) return h.gram();
  return h_ref.gram().llt().solve(h.gram());
}

double invariance_residual(const CMatrix& t, const CMatrix& gram) {
  return op_norm(t.adjoint() * gram * t - gram) / op_norm(gram);
}

double self_adjointness_residual(const CMatrix& t, const HermitianForm& h) {
  const double scale = std::max(op_norm(t), std::numeric_limits<double>::min());
  return op_norm(t - adjoint_wrt(t, h)) / scale;
}

}  // namespace unitarize
