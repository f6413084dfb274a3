#include <cmath>
#include <numbers>

#include "oracles.h"
#include "support.h"
#include "unitarize/error.h"
#include "unitarize/nagy.h"

namespace unitarize {
namespace {

using test::involution;
using test::involution_gram;
using test::kI;

TEST(Nagy, UnitaryKeepsFiducial) {
  Rng rng = test::make_rng(20);
  const CMatrix g = random_conditioned(4, 3.0, rng);
  const HermitianForm h0(g.adjoint() * g);
  // T unitary wrt h0: T = R^-1 V R with R = G0^1/2.
  const CMatrix r = psd_sqrt(h0);
  const CMatrix t = r.inverse() * random_unitary(4, rng) * r;
  const NagyResult n = nagy_metric(t, h0);
  EXPECT_LT(test::rel_err(n.invariant_form.gram(), h0.gram()), 1e-10);
}

TEST(Nagy, InvolutionGram) {
  const NagyResult n = nagy_metric(involution(), HermitianForm::identity(2));
  EXPECT_LT(test::max_abs(n.invariant_form.gram() - involution_gram()), 1e-14);
  const CMatrix avg = 0.5 * (CMatrix::Identity(2, 2) + involution().adjoint() * involution());
  EXPECT_LT(test::max_abs(avg - involution_gram()), 1e-15);
  EXPECT_LT(n.invariance_residual, 1e-14);
  EXPECT_LT(n.unitarity_residual, 1e-14);
}

TEST(Nagy, ExplicitSumOverEigenbasis) {
  // h_T(x, y) = sum_k h0(Sx, phi_k) h0(phi_k, Sy) ||S^-1 phi_k||^2 when the
  // spectrum of U is simple, i.e. G_T = sum_k |S^-1 phi_k|^2 S* phi_k phi_k* S.
  Rng rng = test::make_rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = rng.uniform_int(2, 6);
    const ConjugatedFixture f = random_conjugated_unimodular(n, 10.0, 0.2, false, rng);
    const CMatrix sinv = f.s.inverse();
    CMatrix expected = CMatrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) {
      const CVector phi = f.eigvecs_u.col(k);
      const CVector sp = f.s.adjoint() * phi;
      expected += (sinv * phi).squaredNorm() * sp * sp.adjoint();
    }
    const NagyResult r = nagy_metric(f.t, HermitianForm::identity(n));
    EXPECT_LT(test::rel_err(r.invariant_form.gram(), expected), 1e-9) << trial;
  }
}

TEST(Nagy, MatchesKroneckerProjection) {
  Rng rng = test::make_rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.uniform_int(2, 5);
    const ConjugatedFixture f = random_conjugated_unimodular(n, 8.0, 0.15, trial % 2 == 1, rng);
    const CMatrix g = random_conditioned(n, 3.0, rng);
    const HermitianForm h0(g.adjoint() * g);
    const NagyResult r = nagy_metric(f.t, h0);
    const CMatrix expected = oracle::two_sided_limit(f.t, f.t, h0.gram());
    EXPECT_LT(test::rel_err(r.invariant_form.gram(), expected), 1e-8) << trial;
  }
}

TEST(Nagy, QFactorMatchesSymmetricRoot) {
  Rng rng = test::make_rng(23);
  const ConjugatedFixture f = random_conjugated_unimodular(5, 20.0, 0.2, false, rng);
  const CMatrix g = random_conditioned(5, 2.0, rng);
  const HermitianForm h0(g.adjoint() * g);
  const NagyResult r = nagy_metric(f.t, h0);
  const CMatrix q = oracle::positive_root(h0.gram(), r.invariant_form.gram());
  EXPECT_LT(test::rel_err(r.q_factor, q), 1e-9);
  EXPECT_LT((r.q_factor * r.q_inverse - CMatrix::Identity(5, 5)).norm(), 1e-10);
  // U is h0-unitary.
  const CMatrix u = r.unitarized;
  EXPECT_LT((u.adjoint() * h0.gram() * u - h0.gram()).norm() / h0.gram().norm(), 1e-9);
  EXPECT_LE(r.q_min_eigenvalue, r.q_max_eigenvalue);
}

TEST(Nagy, RejectsUnbounded) {
  try {
    nagy_metric(test::mat2(1, 1, 0, 1), HermitianForm::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotUniformlyBounded);
  }
  EXPECT_THROW(nagy_metric(involution(), HermitianForm::identity(3)), Error);
}

TEST(Cesaro, IdentityAndInvolution) {
  const HermitianForm h0(involution_gram());
  for (int horizon : {2, 8, 64}) {
    const CesaroResult c = cesaro_oracle(CMatrix::Identity(2, 2), h0, horizon);
    EXPECT_LT(test::max_abs(c.form.gram() - h0.gram()), 1e-15);
  }
  const CesaroResult c = cesaro_oracle(involution(), HermitianForm::identity(2), 64);
  EXPECT_LT(test::max_abs(c.form.gram() - involution_gram()), 1e-12);
}

TEST(Cesaro, MatchesLongDoubleSum) {
  Rng rng = test::make_rng(24);
  const ConjugatedFixture f = random_conjugated_unimodular(4, 5.0, 0.1, false, rng);
  const CesaroResult c = cesaro_oracle(f.t, HermitianForm::identity(4), 1000);
  const CMatrix ref = oracle::cesaro_long_double(f.t, CMatrix::Identity(4, 4), 1000);
  EXPECT_LT(test::rel_err(c.form.gram(), ref), 1e-10);
}

TEST(Cesaro, ConvergesToClosedForm) {
  Rng rng = test::make_rng(25);
  const ConjugatedFixture f = random_conjugated_unimodular(5, 10.0, 0.1, false, rng);
  const HermitianForm h0 = HermitianForm::identity(5);
  const CesaroResult c = cesaro_oracle(f.t, h0, 4096);
  const NagyResult n = nagy_metric(f.t, h0);
  EXPECT_LT(test::rel_err(c.form.gram(), n.invariant_form.gram()), 1e-3);
}

TEST(Cesaro, DivergenceDetected) {
  try {
    cesaro_average(test::diag({1.5, 1}), test::diag({1.5, 1}), CMatrix::Identity(2, 2), 4096);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDivergenceDetected);
  }
}

TEST(Cayley, SmallCases) {
  EXPECT_LT((cayley(CMatrix::Zero(2, 2)) + CMatrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((cayley(test::diag({1, 0})) - test::diag({-kI, -1})).norm(), 1e-15);
  const CMatrix h = test::mat2(1, 1, 0, 2);
  EXPECT_LT((inverse_cayley(cayley(h)) - h).norm(), 1e-12);
}

TEST(Cayley, HermitianGivesUnitary) {
  Rng rng = test::make_rng(26);
  const CMatrix h = random_hermitian(5, rng);
  const CMatrix t = cayley(h);
  EXPECT_LT((t.adjoint() * t - CMatrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Cayley, SingularShift) {
  try {
    inverse_cayley(test::diag({1, -1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularShift);
  }
}

TEST(UnitaryLog, Cases) {
  const HermitianForm id2 = HermitianForm::identity(2);
  const CMatrix i2 = CMatrix::Identity(2, 2);
  EXPECT_LT(unitary_log(i2, nagy_metric(i2, id2)).norm(), 1e-15);
  EXPECT_LT((unitary_log(-i2, nagy_metric(-i2, id2)) - std::numbers::pi * i2).norm(), 1e-14);

  const NagyResult n = nagy_metric(involution(), id2);
  const CMatrix a = unitary_log(involution(), n);
  // pi times the h_T-orthogonal projector onto v = (-1, 1): v v* G / (v* G v).
  CVector v(2);
  v << -1, 1;
  const CMatrix g = involution_gram();
  const CMatrix p = v * (v.adjoint() * g) / (v.adjoint() * g * v)(0, 0);
  EXPECT_LT((a - std::numbers::pi * p).norm(), 1e-13);
}

TEST(UnitaryLog, ExponentiatesBack) {
  Rng rng = test::make_rng(27);
  const ConjugatedFixture f = random_conjugated_unimodular(5, 10.0, 0.2, true, rng);
  const NagyResult n = nagy_metric(f.t, HermitianForm::identity(5));
  const CMatrix a = unitary_log(f.t, n);
  EXPECT_LT(test::rel_err(oracle::expm(kI * a), f.t), 1e-9);
  EXPECT_LT(self_adjointness_residual(a, n.invariant_form), 1e-9);
}

TEST(Flow, SkewHermitianKeepsFiducial) {
  Rng rng = test::make_rng(28);
  const CMatrix x = kI * random_hermitian(4, rng);
  const NagyResult n = flow_metric(x, HermitianForm::identity(4));
  EXPECT_LT(test::rel_err(n.invariant_form.gram(), CMatrix::Identity(4, 4)), 1e-10);
}

TEST(Flow, ConjugatedGenerator) {
  const CMatrix s = test::mat2(1, 1, 0, 1);
  const CMatrix x = s.inverse() * test::diag({kI, -kI}) * s;
  const NagyResult n = flow_metric(x, HermitianForm::identity(2));
  const CMatrix& g = n.invariant_form.gram();
  EXPECT_LT((x.adjoint() * g + g * x).norm() / g.norm(), 1e-12);
  // Same limit as the Kronecker projection for the generated group's
  // integer-time map exp(X), whose spectrum e^{+-i} is simple.
  const CMatrix expected = oracle::two_sided_limit(oracle::expm(x), oracle::expm(x),
                                                   CMatrix::Identity(2, 2));
  EXPECT_LT(test::rel_err(g, expected), 1e-9);
}

TEST(Flow, NonHermitianRealSpectrum) {
  const CMatrix h = test::mat2(1, 1, 0, 2);
  const NagyResult n = flow_metric(-kI * h, HermitianForm::identity(2));
  const CMatrix& g = n.invariant_form.gram();
  for (double t : {0.1, 1.0, 10.0}) {
    const CMatrix e = oracle::expm(-kI * t * h);
    EXPECT_LT((e.adjoint() * g * e - g).norm() / g.norm(), 1e-9) << t;
    EXPECT_LT(test::rel_err(spectral_exp(h, -kI * t), e), 1e-10);
  }
}

TEST(Flow, RejectsGrowth) {
  try {
    flow_metric(test::mat2(0, 1, 0, 0), HermitianForm::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotBoundedFlow);
  }
  EXPECT_THROW(flow_metric(test::diag({0.1, kI}), HermitianForm::identity(2)), Error);
}

}  // namespace
}  // namespace unitarize
