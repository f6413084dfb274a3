#include <cmath>

#include "oracles.h"
#include "support.h"
#include "unitarize/boundedness.h"
#include "unitarize/error.h"

namespace unitarize {
namespace {

using test::kI;

TEST(Bounded, UnitaryIsBounded) {
  Rng rng = test::make_rng(10);
  const CMatrix u = random_unitary(5, rng);
  const BoundednessReport r = check_uniformly_bounded(u);
  EXPECT_TRUE(r.bounded());
  ASSERT_TRUE(r.bound_estimate.has_value());
  EXPECT_NEAR(*r.bound_estimate, 1.0, 1e-12);
}

TEST(Bounded, InvolutionIsBounded) {
  const BoundednessReport r = check_uniformly_bounded(test::involution());
  EXPECT_TRUE(r.bounded());
  EXPECT_NEAR(*r.bound_estimate, oracle::power_sup(test::involution(), kDefaultPowerWindow), 1e-12);
}

TEST(Bounded, JordanBlockNotBounded) {
  const BoundednessReport r = check_uniformly_bounded(test::mat2(1, 1, 0, 1));
  EXPECT_EQ(r.verdict, BoundednessVerdict::kNotBounded);
  ASSERT_FALSE(r.reasons.empty());
  EXPECT_EQ(r.reasons[0].kind, BoundednessReason::Kind::kDefectiveUnimodularEigenvalue);
  EXPECT_NEAR(std::abs(r.reasons[0].eigenvalue - 1.0), 0.0, 1e-12);
  // ||J^k|| grows like |k|.
  double prev = 0.0;
  for (const auto& [k, norm] : r.sampled_power_norms) {
    if (k <= 0) continue;
    EXPECT_GT(norm, prev);
    prev = norm;
  }
  EXPECT_GT(prev, 0.9 * kDefaultPowerWindow);
}

TEST(Bounded, OffCircleReason) {
  const BoundednessReport r = check_uniformly_bounded(test::diag({1.05, kI}));
  EXPECT_FALSE(r.bounded());
  ASSERT_FALSE(r.reasons.empty());
  EXPECT_EQ(r.reasons[0].kind, BoundednessReason::Kind::kOffCircleEigenvalue);
}

TEST(Bounded, RandomFixturesAgreeWithPowerGrowth) {
  Rng rng = test::make_rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = rng.uniform_int(2, 6);
    const ConjugatedFixture f = random_conjugated_unimodular(n, 20.0, 0.1, trial % 3 == 0, rng);
    EXPECT_TRUE(check_uniformly_bounded(f.t).bounded()) << trial;
    const CMatrix bad = random_not_bounded(n, 20.0, trial % 2 ? DefectKind::kOffCircle
                                                               : DefectKind::kJordanBlock, rng);
    EXPECT_FALSE(check_uniformly_bounded(bad).bounded()) << trial;
    // Brute powers: the bounded fixture stays within cond(S)^2 at long range.
    EXPECT_LT(oracle::power_sup(f.t, 200), 20.0 * 20.0 * (1 + 1e-9));
  }
}

TEST(Bounded, NonInvertibleRejected) {
  try {
    check_uniformly_bounded(test::diag({1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAutomorphism);
  }
}

TEST(Generator, Cases) {
  Rng rng = test::make_rng(12);
  EXPECT_TRUE(check_generator(random_hermitian(4, rng)).similar_to_self_adjoint());
  const GeneratorReport nil = check_generator(test::mat2(0, 1, 0, 0));
  EXPECT_FALSE(nil.similar_to_self_adjoint());
  ASSERT_FALSE(nil.defects.empty());
  EXPECT_EQ(nil.defects[0].kind, GeneratorReason::Kind::kDefectiveEigenvalue);
  EXPECT_TRUE(check_generator(test::mat2(1, 1, 0, 2)).similar_to_self_adjoint());
  const GeneratorReport cx = check_generator(test::diag({kI, 1}));
  EXPECT_FALSE(cx.similar_to_self_adjoint());
  EXPECT_EQ(cx.defects[0].kind, GeneratorReason::Kind::kNonRealEigenvalue);
}

TEST(NormalDichotomy, Cases) {
  const double th = 0.7;
  EXPECT_EQ(check_normal_dichotomy(test::diag({std::polar(1.0, th), std::polar(1.0, -th)})),
            NormalVerdict::kAlreadyUnitary);
  EXPECT_EQ(check_normal_dichotomy(test::diag({2, 1})), NormalVerdict::kNotSimilarToUnitary);
  EXPECT_EQ(check_normal_dichotomy(test::involution()), NormalVerdict::kNotNormal);
  EXPECT_GT(commutator(test::involution(), test::involution().adjoint()).norm(), 1.0);
}

TEST(Resolvent, IdentityIsDirectionIndependent) {
  const ResolventEstimate e = resolvent_bound_estimate(CMatrix::Identity(3, 3), {2.0}, 256);
  // (r^2 - 1) * 2 pi * mean |r e^{it} - 1|^-2 = 2 pi for |r| > 1.
  ASSERT_EQ(e.per_radius.size(), 1u);
  EXPECT_NEAR(e.per_radius[0], 2 * std::numbers::pi, 1e-9);
}

TEST(Resolvent, JordanOutgrowsUnitary) {
  const std::vector<double> radii{1.5, 1.1, 1.01};
  const ResolventEstimate u = resolvent_bound_estimate(test::diag({1, -1}), radii, 4096);
  const ResolventEstimate j = resolvent_bound_estimate(test::mat2(1, 1, 0, 1), radii, 4096);
  const ResolventEstimate t = resolvent_bound_estimate(test::involution(), radii, 4096);
  double prev = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double ratio = j.per_radius[i] / u.per_radius[i];
    EXPECT_GT(ratio, prev);
    prev = ratio;
    EXPECT_LT(t.per_radius[i], 10.0 * u.per_radius[i]);
  }
}

}  // namespace
}  // namespace unitarize
