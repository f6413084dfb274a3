#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unitarize/linalg.h"
#include "unitarize/nagy.h"

namespace unitarize {

/// Positive scalar for a simple eigenvalue, positive-definite block for a
/// cluster of multiplicity m (m x m, in the cluster's frame coordinates).
using ClusterWeight = std::variant<double, CMatrix>;

struct ScalingSpec {
  // Keyed by cluster index of eig(T).
  std::map<Index, ClusterWeight> weights;
  // Eigenvector columns to weight against. When absent, each cluster gets an
  // h0-orthonormal basis, so unit weights reproduce the Nagy metric.
  std::optional<CMatrix> frame;

  /// Smallest and largest weight eigenvalue over all clusters.
  std::pair<double, double> bounds() const;
};

/// Invariant form with Gram sum_k W_k* B_k W_k, W_k the dual rows of the
/// frame on cluster k and B_k its weight.
HermitianForm scaled_metric(const CMatrix& t, const HermitianForm& h0, const ScalingSpec& spec,
                            const ToleranceConfig& cfg = {});

/// Weights B_k = P_k* G0 P_k for the given frame; scaled_metric with these
/// returns the Nagy metric.
ScalingSpec nagy_scaling(const CMatrix& t, const HermitianForm& h0, const CMatrix& frame,
                         const ToleranceConfig& cfg = {});

struct PhiMetric {
  HermitianForm form;
  // h_phi(x, y) = h_T(C_phi x, y).
  CMatrix c_phi;
  // ||[T, C_phi]|| / (||T|| ||C_phi||).
  double commutator_residual = 0.0;
};

/// C_phi = Q^-1 B Q with B = sum_k phi_k E_k over the spectral projectors of
/// U = Q T Q^-1. `phi` is keyed by cluster index of nagy.spectrum.
PhiMetric phi_metric(const CMatrix& t, const NagyResult& nagy, const std::map<Index, double>& phi,
                     const ToleranceConfig& cfg = {});

/// Spanning set of the h_T-Hermitian part of the commutant of T, block
/// diagonal in the clustered eigenbasis (sum of m_k^2 elements).
std::vector<CMatrix> commutant_positive_basis(const CMatrix& t, const ToleranceConfig& cfg = {});

/// Which form the commutator sequence A_n = [C, T^n] is paired against.
enum class DependencePairing {
  // Lim h0'(A_n x, T^n y); yields R = C + A identically.
  kFiducial,
  // Lim h_T'(A_n x, T^n y); R = C + A then holds only when T is h0'-unitary.
  kInvariant,
};

std::string_view to_string(DependencePairing p);

struct MetricChangeReport {
  // h0(x, y) = h0'(C x, y).
  CMatrix C;
  // h_T(x, y) = h_T'(R x, y).
  CMatrix R;
  // F(x, y) = h_T'(A x, y).
  CMatrix A;
  double residual_R_eq = 0.0;
  double residual_comm_eq = 0.0;
  double commutator_R = 0.0;
  // Relative distance between the closed-form A and its Cesaro realization.
  double cesaro_residual = 0.0;
  int cesaro_horizon = 0;
  DependencePairing pairing = DependencePairing::kFiducial;
  HermitianForm invariant_form;
  HermitianForm invariant_form_prime;
  std::vector<std::string> warnings;
};

MetricChangeReport metric_dependence(const CMatrix& t, const HermitianForm& h0,
                                     const HermitianForm& h0_prime,
                                     const ToleranceConfig& cfg = {},
                                     DependencePairing pairing = DependencePairing::kFiducial);

}  // namespace unitarize
