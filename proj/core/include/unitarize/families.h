#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "unitarize/linalg.h"

namespace unitarize {

struct FamilyResult {
  HermitianForm form;
  // (stage label, form after that stage), in construction order.
  std::vector<std::pair<std::string, HermitianForm>> stages;
  // Operator id -> ||T* G T - G|| / ||G|| under the final form.
  std::map<std::string, double> all_unitary_residuals;
  std::vector<std::string> warnings;
};

/// Joint invariant metric of commuting T1, T2: h_{T1} first, then the limit
/// of h_{T1}(T2^n x, T2^n y).
FamilyResult commuting_pair_metric(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                                   const ToleranceConfig& cfg = {});

enum class ShortcutVerdict { kShortcutValid, kShortcutInvalid };

std::string_view to_string(ShortcutVerdict v);

struct ShortcutReport {
  ShortcutVerdict verdict = ShortcutVerdict::kShortcutInvalid;
  // Clusters of T1 with multiplicity > 1.
  std::vector<Index> degenerate_clusters;
  HermitianForm t1_form;
  // Invariance residual of h_{T1} under T2.
  double t2_residual = 0.0;
};

/// A multiplicity-free T1 has an Abelian commutant, so h_{T1} is already
/// T2-invariant. Throws kNumericalFailure if that fails for a valid shortcut.
ShortcutReport multiplicity_free_shortcut(const CMatrix& t1, const CMatrix& t2,
                                          const HermitianForm& h0,
                                          const ToleranceConfig& cfg = {});

/// Metric unitarizing T1, T2, T3 with T3 central and T1 T2 T1^-1 T2^-1 = T3.
/// Stage 1 handles the commuting pair (T1, T3), stage 2 averages over T2.
FamilyResult heisenberg_metric(const CMatrix& t1, const CMatrix& t2, const CMatrix& t3,
                               const HermitianForm& h0, const ToleranceConfig& cfg = {});

struct RelationResiduals {
  double t1_t3 = 0.0;  // ||T1 T3 T1^-1 T3^-1 - I||
  double t2_t3 = 0.0;  // ||T2 T3 T2^-1 T3^-1 - I||
  double t1_t2 = 0.0;  // ||T1 T2 T1^-1 T2^-1 - T3||
};

RelationResiduals heisenberg_relations(const CMatrix& t1, const CMatrix& t2, const CMatrix& t3);

/// (X, C, omega I) with X the cyclic shift X e_j = e_{j-1}, C = diag(omega^j),
/// omega = exp(2 pi i / d), so that X C X^-1 C^-1 = omega I.
std::tuple<CMatrix, CMatrix, CMatrix> make_clock_shift(int d);

}  // namespace unitarize
