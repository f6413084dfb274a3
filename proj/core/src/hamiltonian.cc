#include "unitarize/hamiltonian.h"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace unitarize {

SymplecticForm::SymplecticForm(HermitianForm h) : source_(std::move(h)) {
  const Index n = source_.dim();
  const RMatrix re = source_.gram().real();
  const RMatrix im = source_.gram().imag();
  omega_.resize(2 * n, 2 * n);
  omega_ << im, re, -re, im;
}

Eigen::VectorXd SymplecticForm::realify(const CVector& x) {
  Eigen::VectorXd v(2 * x.size());
  v << x.real(), x.imag();
  return v;
}

double SymplecticForm::operator()(const CVector& x, const CVector& y) const {
  if (x.size() != source_.dim() || y.size() != source_.dim()) {
    throw Error(ErrorKind::kShapeMismatch, "vector dimension differs from the form");
  }
  return realify(x).dot(omega_ * realify(y));
}

QuadraticFunction::QuadraticFunction(CMatrix op, HermitianForm form, double tol)
    : op_(std::move(op)), form_(std::move(form)) {
  require_square_finite(op_, "operator");
  if (op_.rows() != form_.dim()) {
    throw Error(ErrorKind::kShapeMismatch, "operator and form dimensions differ");
  }
  const double r = self_adjointness_residual(op_, form_);
  if (r > tol) {
    throw Error(ErrorKind::kNotSelfAdjoint,
                "operator is not self-adjoint for the form: residual " + std::to_string(r));
  }
}

double QuadraticFunction::operator()(const CVector& psi) const {
  return 0.5 * form_(op_ * psi, psi).real();
}

CVector QuadraticFunction::vector_field(const CVector& psi) const {
  return Complex(0.0, -1.0) * (op_ * psi);
}

namespace {

bool same_form(const HermitianForm& a, const HermitianForm& b) {
  if (a.dim() != b.dim()) return false;
  return (a.gram() - b.gram()).norm() <= 1e-12 * a.gram().norm();
}

void require_same_form(const QuadraticFunction& fa, const QuadraticFunction& fb) {
  if (!same_form(fa.form(), fb.form())) {
    throw Error(ErrorKind::kFormMismatch, "quadratic functions use different forms");
  }
}

}  // namespace

double poisson_bracket(const QuadraticFunction& fa, const QuadraticFunction& fb,
                       const CVector& psi) {
  require_same_form(fa, fb);
  const SymplecticForm omega(fa.form());
  return omega(fb.vector_field(psi), fa.vector_field(psi));
}

QuadraticFunction bracket_function(const QuadraticFunction& fa, const QuadraticFunction& fb) {
  require_same_form(fa, fb);
  const CMatrix c = Complex(0.0, 1.0) * commutator(fa.op(), fb.op());
  return QuadraticFunction(c, fa.form(), std::numeric_limits<double>::infinity());
}

double deformed_bracket(const QuadraticFunction& fa, const QuadraticFunction& fb,
                        const CVector& psi, const NagyResult& nagy, double tol) {
  const HermitianForm& ht = nagy.invariant_form;
  if (fa.op().rows() != ht.dim() || fb.op().rows() != ht.dim()) {
    throw Error(ErrorKind::kShapeMismatch, "operator dimension differs from the metric");
  }
  if (self_adjointness_residual(fa.op(), ht) > tol) {
    throw Error(ErrorKind::kNotSelfAdjoint, "A is not h_T-self-adjoint", "A");
  }
  if (self_adjointness_residual(fb.op(), ht) > tol) {
    throw Error(ErrorKind::kNotSelfAdjoint, "B is not h_T-self-adjoint", "B");
  }
  const SymplecticForm omega0(nagy.fiducial_form);
  const CMatrix q2 = nagy.q_factor * nagy.q_factor;
  return omega0(q2 * fb.vector_field(psi), fa.vector_field(psi));
}

BracketPencil::BracketPencil(const HermitianForm& h0, const HermitianForm& ht, double alpha,
                             double beta)
    : h0_(h0), ht_(ht), alpha_(alpha), beta_(beta) {
  if (h0.dim() != ht.dim()) throw Error(ErrorKind::kShapeMismatch, "form dimensions differ");
  const Index n = h0.dim();
  const CMatrix id = CMatrix::Identity(n, n);
  m_ = alpha * h0.gram().llt().solve(id) + beta * ht.gram().llt().solve(id);
}

CMatrix BracketPencil::kernel_bracket(const CMatrix& k1, const CMatrix& k2) const {
  return Complex(0.0, 1.0) * (k1 * m_ * k2 - k2 * m_ * k1);
}

double BracketPencil::evaluate(const CMatrix& k1, const CMatrix& k2, const CVector& psi) const {
  auto part = [&](const HermitianForm& h) {
    const Eigen::LLT<CMatrix> g(h.gram());
    const Complex mi(0.0, -1.0);
    const CVector x1 = mi * g.solve(k1 * psi);
    const CVector x2 = mi * g.solve(k2 * psi);
    return SymplecticForm(h)(x2, x1);
  };
  return alpha_ * part(h0_) + beta_ * part(ht_);
}

double BracketPencil::jacobi_residual(const CMatrix& k1, const CMatrix& k2, const CMatrix& k3,
                                      const CVector& psi) const {
  const CMatrix j = kernel_bracket(k1, kernel_bracket(k2, k3)) +
                    kernel_bracket(k2, kernel_bracket(k3, k1)) +
                    kernel_bracket(k3, kernel_bracket(k1, k2));
  const double value = std::abs(0.5 * psi.dot(j * psi));
  const double m = op_norm(m_);
  const double scale = op_norm(k1) * op_norm(k2) * op_norm(k3) * m * m * psi.squaredNorm();
  return scale > 0.0 ? value / scale : value;
}

std::vector<double> ehrenfest_flow(const QuadraticFunction& fh, const QuadraticFunction& fa,
                                   const CVector& psi0, const std::vector<double>& t_grid,
                                   const ToleranceConfig& cfg) {
  require_same_form(fh, fa);
  if (psi0.size() != fh.op().rows()) {
    throw Error(ErrorKind::kShapeMismatch, "state dimension differs from the operators");
  }
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const CMatrix u = spectral_exp(fh.op(), Complex(0.0, -t), cfg);
    out.push_back(fa(u * psi0));
  }
  return out;
}

CMatrix n_product(const CMatrix& a, const CMatrix& b, const CMatrix& r) {
  if (a.cols() != r.rows() || r.cols() != b.rows()) {
    throw Error(ErrorKind::kShapeMismatch, "n_product dimensions differ");
  }
  return a * r * b;
}

double leibniz_residual(const CMatrix& h, const CMatrix& r, const CMatrix& a, const CMatrix& b) {
  const CMatrix lhs = commutator(h, n_product(a, b, r));
  const CMatrix rhs = n_product(commutator(h, a), b, r) + n_product(a, commutator(h, b), r);
  const double scale = op_norm(h) * op_norm(a) * op_norm(r) * op_norm(b);
  return scale > 0.0 ? op_norm(lhs - rhs) / scale : 0.0;
}

double inner_derivation_residual(const CMatrix& h, const CMatrix& r, const CMatrix& a) {
  const CMatrix hp = Eigen::PartialPivLU<CMatrix>(r).solve(h);
  const CMatrix inner = n_product(hp, a, r) - n_product(a, hp, r);
  const double scale = op_norm(h) * op_norm(a);
  return scale > 0.0 ? op_norm(commutator(h, a) - inner) / scale : 0.0;
}

std::pair<int, int> signature(const RMatrix& sym, double tol) {
  if (sym.rows() != sym.cols()) throw Error(ErrorKind::kShapeMismatch, "matrix is not square");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(sym, Eigen::EigenvaluesOnly);
  int plus = 0;
  int minus = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > tol) ++plus;
    if (es.eigenvalues()(i) < -tol) ++minus;
  }
  return {plus, minus};
}

std::pair<int, int> ClassicalFactorization::signature() const {
  return unitarize::signature(Ham);
}

double factorization_check(const RMatrix& a_dyn, const ClassicalFactorization& fact) {
  const Index n = a_dyn.rows();
  if (a_dyn.cols() != n || fact.Lambda.rows() != n || fact.Lambda.cols() != n ||
      fact.Ham.rows() != n || fact.Ham.cols() != n) {
    throw Error(ErrorKind::kShapeMismatch, "factorization dimensions differ from A_dyn");
  }
  if ((fact.Lambda + fact.Lambda.transpose()).norm() != 0.0) {
    throw Error(ErrorKind::kInvalidInput, "Lambda is not antisymmetric", "Lambda");
  }
  if ((fact.Ham - fact.Ham.transpose()).norm() != 0.0) {
    throw Error(ErrorKind::kInvalidInput, "Ham is not symmetric", "Ham");
  }
  if (!Eigen::FullPivLU<RMatrix>(fact.Lambda).isInvertible()) {
    throw Error(ErrorKind::kInvalidInput, "Lambda is degenerate", "Lambda");
  }
  return (a_dyn - fact.Lambda * fact.Ham).norm();
}

RMatrix canonical_symplectic(const std::vector<int>& signs) {
  const Index n = static_cast<Index>(signs.size());
  RMatrix omega = RMatrix::Zero(2 * n, 2 * n);
  for (Index k = 0; k < n; ++k) {
    const double s = signs[static_cast<std::size_t>(k)];
    // dp ^ dq: omega(q, p) = -1, omega(p, q) = 1.
    omega(2 * k, 2 * k + 1) = -s;
    omega(2 * k + 1, 2 * k) = s;
  }
  return omega;
}

RMatrix poisson_tensor(const RMatrix& omega) {
  Eigen::FullPivLU<RMatrix> lu(omega);
  if (!lu.isInvertible()) throw Error(ErrorKind::kInvalidInput, "symplectic matrix is degenerate");
  return lu.inverse();
}

RMatrix oscillator_dynamics() {
  RMatrix a = RMatrix::Zero(4, 4);
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  a(2, 3) = 1.0;
  a(3, 2) = -1.0;
  return a;
}

ClassicalFactorization oscillator_positive() {
  return {poisson_tensor(canonical_symplectic({1, 1})), RMatrix::Identity(4, 4)};
}

ClassicalFactorization oscillator_split() {
  Eigen::Vector4d d(1.0, 1.0, -1.0, -1.0);
  return {poisson_tensor(canonical_symplectic({1, -1})), d.asDiagonal()};
}

}  // namespace unitarize
