#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "unitarize/linalg.h"

namespace unitarize {

enum class BoundednessVerdict { kUniformlyBounded, kNotBounded };

struct BoundednessReason {
  enum class Kind { kOffCircleEigenvalue, kDefectiveUnimodularEigenvalue, kAllConditionsMet };
  Kind kind = Kind::kAllConditionsMet;
  Complex eigenvalue{};
};

struct BoundednessReport {
  BoundednessVerdict verdict = BoundednessVerdict::kNotBounded;
  std::vector<BoundednessReason> reasons;
  // (k, ||T^k||) for k in [-K, K].
  std::vector<std::pair<int, double>> sampled_power_norms;
  std::optional<double> bound_estimate;
  EigenDecomposition spectrum;

  bool bounded() const { return verdict == BoundednessVerdict::kUniformlyBounded; }
};

inline constexpr int kDefaultPowerWindow = 32;

/// Nagy criterion, sup_k ||T^k|| < inf over all integers k, decided
/// spectrally: every eigenvalue unimodular and T diagonalizable. The power
/// norms are sampled for corroboration only.
BoundednessReport check_uniformly_bounded(const CMatrix& t, const ToleranceConfig& cfg = {},
                                          int power_window = kDefaultPowerWindow);

enum class GeneratorVerdict { kSimilarToSelfAdjoint, kNot };

struct GeneratorReason {
  enum class Kind { kNonRealEigenvalue, kDefectiveEigenvalue, kAllConditionsMet };
  Kind kind = Kind::kAllConditionsMet;
  Complex eigenvalue{};
};

struct GeneratorReport {
  GeneratorVerdict verdict = GeneratorVerdict::kNot;
  CVector spectrum;
  std::vector<GeneratorReason> defects;

  bool similar_to_self_adjoint() const {
    return verdict == GeneratorVerdict::kSimilarToSelfAdjoint;
  }
};

/// H generates a flow preserving some Hermitian form iff it is
/// diagonalizable with real spectrum.
GeneratorReport check_generator(const CMatrix& h, const ToleranceConfig& cfg = {});

enum class NormalVerdict { kAlreadyUnitary, kNotSimilarToUnitary, kNotNormal };

/// A normal operator satisfying the Nagy condition is already unitary.
NormalVerdict check_normal_dichotomy(const CMatrix& t, const ToleranceConfig& cfg = {});

struct ResolventEstimate {
  double estimate = 0.0;
  // One entry per requested radius: max over probe directions of
  // (r^2 - 1) * integral_0^{2pi} ||(T - r e^{i theta})^-1 u||^2 d theta.
  std::vector<double> per_radius;
  int skipped_samples = 0;
};

/// Trapezoid-rule estimate of the resolvent growth functional over circles
/// |lambda| = r > 1 with standard-basis probes. Bounded as r -> 1+ for
/// power-bounded T; blows up for a unimodular Jordan block.
ResolventEstimate resolvent_bound_estimate(const CMatrix& t, const std::vector<double>& radii,
                                           int samples);

std::string_view to_string(BoundednessVerdict v);
std::string_view to_string(GeneratorVerdict v);
std::string_view to_string(NormalVerdict v);
std::string_view to_string(BoundednessReason::Kind k);
std::string_view to_string(GeneratorReason::Kind k);

}  // namespace unitarize
