#pragma once

#include <optional>
#include <string>

#include "unitarize/linalg.h"
#include "unitarize/nagy.h"

namespace unitarize {

enum class GridKind { kWeightedCyclicShift, kParityTimesFunction, kWeightedTranslation };

std::string_view to_string(GridKind k);
GridKind grid_kind_from_string(std::string_view s);

/// Cyclic-grid operators on C^N, point j at x_j = j - (N - 1) / 2.
///   kWeightedCyclicShift:  (T psi)_j = psi_{j+a}, h0 = diag(rho).
///   kParityTimesFunction:  (T psi)(x) = f(x) psi(-x),
///                          f(x) = mu(x) / mu(-x) exp(i phi(x)), h0 = I.
///   kWeightedTranslation:  (T psi)_j = g_j exp(i phi_j) psi_{j+a},
///                          g_{j+a} g_j = 1, h0 = I.
struct GridOperatorSpec {
  GridKind kind = GridKind::kWeightedCyclicShift;
  int grid_size = 0;
  int shift = 1;
  Eigen::VectorXd rho;
  Eigen::VectorXd mu;
  Eigen::VectorXd phi;
  Eigen::VectorXd g;
};

struct GridOperator {
  CMatrix t;
  HermitianForm h0;
};

/// Throws kSpecInvariantViolated naming the failed condition.
GridOperator build(const GridOperatorSpec& spec);

/// Closed-form diagonal of Q^2 as stated for each example: mean(rho) / rho,
/// (1 + mu^2(-x) / mu^2(x)) / 2, and (1 + g^2(x)) / 2.
Eigen::VectorXd stated_q_squared(const GridOperatorSpec& spec);

/// Diagonal of Q^2 = (I + T*T) / 2 for the operator as built. Differs from
/// the stated form only for kWeightedTranslation, where T*T = diag(g^2(x - a)).
Eigen::VectorXd operator_q_squared(const GridOperatorSpec& spec);

/// max |(Q^2)_ij - diag(expected)_ij|.
double q_squared_error(const NagyResult& nagy, const Eigen::VectorXd& expected);

struct SpectrumReport {
  // Parity example: largest distance between the eigenvalues of U and the
  // pairs +-exp(i (phi(x0) + phi(-x0)) / 2), matched one to one.
  std::optional<double> pair_error;
  // Half of the largest gap between consecutive eigenphases of U.
  double covering_radius = 0.0;
  double covering_bound = 0.0;
};

SpectrumReport check_closed_form_spectrum(const GridOperatorSpec& spec, const NagyResult& nagy);

struct CyclicShiftReport {
  // Mean of rho over the shift orbit of each grid point.
  Eigen::VectorXd orbit_means;
  // max |G_T - diag(orbit_means)| / max(rho).
  double gram_error = 0.0;
  // max |U - W| with W_{j, j+a} = sqrt(rho_{j+a} / rho_j).
  double u_pattern_error = 0.0;
};

CyclicShiftReport check_cyclic_shift_limit(const GridOperatorSpec& spec, const NagyResult& nagy);

}  // namespace unitarize
