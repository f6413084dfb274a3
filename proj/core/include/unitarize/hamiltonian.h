#pragma once

#include <utility>
#include <vector>

#include "unitarize/linalg.h"
#include "unitarize/nagy.h"

namespace unitarize {

/// omega_h(x, y) = Im h(x, y) on the realification R^{2n}, coordinates
/// (Re x, Im x).
class SymplecticForm {
 public:
  explicit SymplecticForm(HermitianForm h);

  const HermitianForm& source_form() const { return source_; }
  // 2n x 2n antisymmetric matrix: [[Im G, Re G], [-Re G, Im G]].
  const RMatrix& realified() const { return omega_; }

  double operator()(const CVector& x, const CVector& y) const;

  static Eigen::VectorXd realify(const CVector& x);

 private:
  HermitianForm source_;
  RMatrix omega_;
};

/// f(psi) = 1/2 h(H psi, psi) for H self-adjoint with respect to h.
class QuadraticFunction {
 public:
  /// Throws kNotSelfAdjoint if self_adjointness_residual exceeds `tol`.
  QuadraticFunction(CMatrix op, HermitianForm form, double tol = 1e-9);

  const CMatrix& op() const { return op_; }
  const HermitianForm& form() const { return form_; }

  double operator()(const CVector& psi) const;

  /// Hamiltonian vector field X(psi) = -i H psi.
  CVector vector_field(const CVector& psi) const;

 private:
  CMatrix op_;
  HermitianForm form_;
};

/// {f_A, f_B}(psi) = omega_h(X_B, X_A), evaluated on the realification.
/// Equals f_{i[A,B]}(psi). Throws kFormMismatch.
double poisson_bracket(const QuadraticFunction& fa, const QuadraticFunction& fb,
                       const CVector& psi);

/// The quadratic function f_{i[A,B]}.
QuadraticFunction bracket_function(const QuadraticFunction& fa, const QuadraticFunction& fb);

/// Bracket induced by h_T = h0(Q^2 ., .): omega_h0(Q^2 X_B, X_A). The
/// operators must be h_T-self-adjoint (kNotSelfAdjoint otherwise).
double deformed_bracket(const QuadraticFunction& fa, const QuadraticFunction& fb,
                        const CVector& psi, const NagyResult& nagy, double tol = 1e-9);

/// alpha {,}_G0 + beta {,}_GT on quadratic functions written by their
/// kernels K (f_K(psi) = 1/2 psi* K psi, K Hermitian).
class BracketPencil {
 public:
  BracketPencil(const HermitianForm& h0, const HermitianForm& ht, double alpha, double beta);

  /// i (K1 M K2 - K2 M K1), M = alpha G0^-1 + beta GT^-1.
  CMatrix kernel_bracket(const CMatrix& k1, const CMatrix& k2) const;

  /// Pointwise value through the two symplectic forms.
  double evaluate(const CMatrix& k1, const CMatrix& k2, const CVector& psi) const;

  /// |{f1,{f2,f3}} + {f2,{f3,f1}} + {f3,{f1,f2}}|(psi) / (|f1||f2||f3| scale).
  double jacobi_residual(const CMatrix& k1, const CMatrix& k2, const CMatrix& k3,
                         const CVector& psi) const;

 private:
  HermitianForm h0_, ht_;
  CMatrix m_;
  double alpha_, beta_;
};

/// f_A(psi(t)) with psi(t) = exp(-iHt) psi0, so d/dt f_A = {f_H, f_A}.
std::vector<double> ehrenfest_flow(const QuadraticFunction& fh, const QuadraticFunction& fa,
                                   const CVector& psi0, const std::vector<double>& t_grid,
                                   const ToleranceConfig& cfg = {});

/// A o_N B = N(A) B + A N(B) - N(AB) with N(A) = R A, i.e. A R B.
CMatrix n_product(const CMatrix& a, const CMatrix& b, const CMatrix& r);

/// Failure of ad_H = [H, .] to be a derivation of o_N, relative to
/// ||H|| ||A|| ||R|| ||B||. Analytically ||A [R, H] B||.
double leibniz_residual(const CMatrix& h, const CMatrix& r, const CMatrix& a, const CMatrix& b);

/// ||[H, A] - (H' o_N A - A o_N H')|| / (||H|| ||A||) with H' = R^-1 H; zero
/// when [R, H] = 0.
double inner_derivation_residual(const CMatrix& h, const CMatrix& r, const CMatrix& a);

/// A = Lambda Ham with Lambda the Poisson tensor (inverse of the symplectic
/// matrix) and H = 1/2 xi^T Ham xi.
struct ClassicalFactorization {
  RMatrix Lambda;
  RMatrix Ham;

  std::pair<int, int> signature() const;
};

/// ||A_dyn - Lambda Ham||. Throws kShapeMismatch, or kInvalidInput when
/// Lambda is not antisymmetric nondegenerate or Ham not symmetric.
double factorization_check(const RMatrix& a_dyn, const ClassicalFactorization& fact);

/// (n_plus, n_minus) of a real symmetric matrix, zero at |lambda| <= tol.
std::pair<int, int> signature(const RMatrix& sym, double tol = 1e-12);

/// Symplectic matrix of sum_k s_k dp_k ^ dq_k in coordinates
/// (q1, p1, q2, p2, ...).
RMatrix canonical_symplectic(const std::vector<int>& signs);

/// Lambda with Lambda omega = I.
RMatrix poisson_tensor(const RMatrix& omega);

/// Isotropic 2D oscillator q_i' = p_i, p_i' = -q_i in (q1, p1, q2, p2).
RMatrix oscillator_dynamics();

/// H0 = 1/2 (p1^2 + q1^2 + p2^2 + q2^2), omega0 = dp1^dq1 + dp2^dq2.
ClassicalFactorization oscillator_positive();

/// H = 1/2 (p1^2 + q1^2 - p2^2 - q2^2), omega = dp1^dq1 - dp2^dq2.
ClassicalFactorization oscillator_split();

}  // namespace unitarize
