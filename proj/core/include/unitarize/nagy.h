#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unitarize/linalg.h"

namespace unitarize {

enum class NagyMethod { kSpectralProjection, kCesaroOracle };

std::string_view to_string(NagyMethod m);

/// Invariant metric h_T(x, y) = h0(Q^2 x, y) of a power-bounded operator and
/// the h0-unitary operator U = Q T Q^-1 it induces.
struct NagyResult {
  HermitianForm invariant_form;
  // Positive with respect to the fiducial form; Q^2 = G0^-1 G_T.
  CMatrix q_factor;
  CMatrix q_inverse;
  // Q T Q^-1 for a discrete operator; Q X Q^-1 (h0-skew-adjoint) for a flow
  // generator.
  CMatrix unitarized;
  NagyMethod method = NagyMethod::kSpectralProjection;
  std::optional<double> cesaro_residual;

  HermitianForm fiducial_form;
  EigenDecomposition spectrum;
  double invariance_residual = 0.0;
  double unitarity_residual = 0.0;
  // Extreme eigenvalues of Q: the c of 1/c <= Q <= c.
  double q_min_eigenvalue = 1.0;
  double q_max_eigenvalue = 1.0;
  std::vector<std::string> warnings;
  ToleranceConfig tolerances;
};

/// Closed-form generalized limit of h0(T^n x, T^n y): in an eigenbasis P of
/// T the entries of P* G0 P coupling different eigenvalue clusters average to
/// zero, so G_T = P^-* (cluster-block part of P* G0 P) P^-1.
/// Throws kNotUniformlyBounded when the Nagy criterion fails.
NagyResult nagy_metric(const CMatrix& t, const HermitianForm& h0,
                       const ToleranceConfig& cfg = {});

/// The h0-positive square root Q of G0^-1 G, computed in an h0-orthonormal
/// frame. Returns (Q, Q^-1).
std::pair<CMatrix, CMatrix> positive_factor(const HermitianForm& invariant,
                                            const HermitianForm& h0,
                                            const ToleranceConfig& cfg = {});

struct CesaroAverage {
  CMatrix value;
  // Relative change between the running mean at N/10 and at N.
  double residual = 0.0;
  int horizon = 0;
};

/// Brute-force mean (1/N) sum_{n<N} (L^n)* X R^n, accumulated in index order.
/// Throws kDivergenceDetected once a term exceeds 1e6 * ||X||.
CesaroAverage cesaro_average(const CMatrix& left, const CMatrix& right, const CMatrix& x,
                             int horizon);

struct CesaroResult {
  HermitianForm form;
  double residual = 0.0;
  int horizon = 0;
  bool converged = false;
};

/// Independent realization of the generalized limit as a Cesaro mean of
/// (T^n)* G0 T^n.
CesaroResult cesaro_oracle(const CMatrix& t, const HermitianForm& h0, int horizon,
                           const ToleranceConfig& cfg = {});

/// T = (H - iI)(H + iI)^-1. Throws kSingularShift if H + iI is singular.
CMatrix cayley(const CMatrix& h);

/// H = i(I + T)(I - T)^-1. Throws kSingularShift if 1 is an eigenvalue of T.
CMatrix inverse_cayley(const CMatrix& t);

/// The h_T-self-adjoint A with exp(iA) = T, spectrum in [0, 2pi).
CMatrix unitary_log(const CMatrix& t, const NagyResult& nagy);

/// Invariant metric of the one-parameter group exp(sX): X*G + GX = 0.
/// Throws kNotBoundedFlow unless X is diagonalizable with imaginary spectrum.
NagyResult flow_metric(const CMatrix& x, const HermitianForm& h0,
                       const ToleranceConfig& cfg = {});

/// exp(sX) through the spectral projectors of a diagonalizable X.
CMatrix spectral_exp(const CMatrix& x, Complex s, const ToleranceConfig& cfg = {});

}  // namespace unitarize
