#pragma once

#include <vector>

#include "unitarize/linalg.h"

// Reference computations that share no code path with the library: dense
// Kronecker superoperators, unpivoted SVD null spaces, Eigen's matrix
// functions.
namespace unitarize::oracle {

/// Fixed-point projection of the Cesaro limit of L^n applied to vec(X), for
/// a diagonalizable superoperator L with unimodular spectrum: the component
/// of vec(X) in ker(L - I) along range(L - I).
CMatrix mean_ergodic_projection(const CMatrix& superop, const CMatrix& x, double rank_tol = 1e-9);

/// Lim (L^n)* X R^n through the superoperator R^T (x) L*.
CMatrix two_sided_limit(const CMatrix& left, const CMatrix& right, const CMatrix& x,
                        double rank_tol = 1e-9);

/// dim ker(X -> T1 X - X T2).
Index intertwiner_space_dim(const CMatrix& t1, const CMatrix& t2, double rank_tol = 1e-9);

/// Q with Q^2 = G0^-1 G and G0 Q Hermitian positive, through symmetric
/// square roots: Q = G0^-1/2 (G0^-1/2 G G0^-1/2)^1/2 G0^1/2.
CMatrix positive_root(const CMatrix& g0, const CMatrix& g);

/// max_{|k| <= K} ||T^k||_2 by repeated multiplication.
double power_sup(const CMatrix& t, int window);

CMatrix expm(const CMatrix& a);

/// Unitary DFT, F_kj = omega^{-kj} / sqrt(d).
CMatrix dft(int d);

/// Direct sum of (T^n)* G0 T^n over n < N divided by N, in long double.
CMatrix cesaro_long_double(const CMatrix& t, const CMatrix& g0, int horizon);

/// psi* A psi / 2.
double quadratic(const CMatrix& a, const CVector& psi);

}  // namespace unitarize::oracle
