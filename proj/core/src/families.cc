#include "unitarize/families.h"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "unitarize/boundedness.h"
#include "unitarize/nagy.h"

namespace unitarize {

std::string_view to_string(ShortcutVerdict v) {
  return v == ShortcutVerdict::kShortcutValid ? "ShortcutValid" : "ShortcutInvalid";
}

namespace {

void require_bounded(const CMatrix& t, const std::string& which, const ToleranceConfig& cfg) {
  require_square_finite(t, which);
  if (!check_uniformly_bounded(t, cfg).bounded()) {
    throw Error(ErrorKind::kNotUniformlyBounded, which + " fails the Nagy criterion", which);
  }
}

void require_commuting(const CMatrix& a, const CMatrix& b, const std::string& which,
                       const ToleranceConfig& cfg) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::kInvalidInput, "dimensions differ", which);
  const double r = op_norm(commutator(a, b));
  if (r > cfg.eig_cluster_tol * op_norm(a) * op_norm(b)) {
    throw Error(ErrorKind::kNotCommuting,
                which + " do not commute: ||[A,B]|| = " + std::to_string(r), which);
  }
}

CMatrix inverse(const CMatrix& t) { return Eigen::PartialPivLU<CMatrix>(t).inverse(); }

HermitianForm average_over(const CMatrix& t, const HermitianForm& h, const ToleranceConfig& cfg,
                           std::vector<std::string>& warnings) {
  NagyResult r = nagy_metric(t, h, cfg);
  for (auto& w : r.warnings) warnings.push_back(std::move(w));
  return std::move(r.invariant_form);
}

}  // namespace

FamilyResult commuting_pair_metric(const CMatrix& t1, const CMatrix& t2, const HermitianForm& h0,
                                   const ToleranceConfig& cfg) {
  require_bounded(t1, "T1", cfg);
  require_bounded(t2, "T2", cfg);
  require_commuting(t1, t2, "T1,T2", cfg);
  if (h0.dim() != t1.rows()) throw Error(ErrorKind::kInvalidInput, "form dimension differs");

  FamilyResult out;
  HermitianForm h1 = average_over(t1, h0, cfg, out.warnings);
  out.stages.emplace_back("T1", h1);
  out.form = average_over(t2, h1, cfg, out.warnings);
  out.stages.emplace_back("T2", out.form);
  out.all_unitary_residuals["T1"] = invariance_residual(t1, out.form.gram());
  out.all_unitary_residuals["T2"] = invariance_residual(t2, out.form.gram());
  return out;
}

ShortcutReport multiplicity_free_shortcut(const CMatrix& t1, const CMatrix& t2,
                                          const HermitianForm& h0, const ToleranceConfig& cfg) {
  require_bounded(t1, "T1", cfg);
  require_bounded(t2, "T2", cfg);
  require_commuting(t1, t2, "T1,T2", cfg);

  const NagyResult n1 = nagy_metric(t1, h0, cfg);
  ShortcutReport r;
  for (Index k = 0; k < n1.spectrum.num_clusters(); ++k) {
    if (n1.spectrum.clusters[static_cast<std::size_t>(k)].size() > 1) {
      r.degenerate_clusters.push_back(k);
    }
  }
  r.t1_form = n1.invariant_form;
  r.t2_residual = invariance_residual(t2, r.t1_form.gram());
  if (r.degenerate_clusters.empty()) {
    r.verdict = ShortcutVerdict::kShortcutValid;
    if (r.t2_residual > cfg.unitarity_tol) {
      throw Error(ErrorKind::kNumericalFailure,
                  "multiplicity-free h_T1 is not T2-invariant: residual " +
                      std::to_string(r.t2_residual));
    }
  }
  return r;
}

RelationResiduals heisenberg_relations(const CMatrix& t1, const CMatrix& t2, const CMatrix& t3) {
  const Index n = t1.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix i1 = inverse(t1);
  const CMatrix i2 = inverse(t2);
  const CMatrix i3 = inverse(t3);
  RelationResiduals r;
  r.t1_t3 = op_norm(t1 * t3 * i1 * i3 - id);
  r.t2_t3 = op_norm(t2 * t3 * i2 * i3 - id);
  r.t1_t2 = op_norm(t1 * t2 * i1 * i2 - t3);
  return r;
}

FamilyResult heisenberg_metric(const CMatrix& t1, const CMatrix& t2, const CMatrix& t3,
                               const HermitianForm& h0, const ToleranceConfig& cfg) {
  require_bounded(t1, "T1", cfg);
  require_bounded(t2, "T2", cfg);
  require_bounded(t3, "T3", cfg);
  if (t2.rows() != t1.rows() || t3.rows() != t1.rows() || h0.dim() != t1.rows()) {
    throw Error(ErrorKind::kInvalidInput, "dimensions differ");
  }
  const RelationResiduals rel = heisenberg_relations(t1, t2, t3);
  const double tol = cfg.eig_cluster_tol;
  if (rel.t1_t3 > tol) {
    throw Error(ErrorKind::kRelationViolated, "T3 does not commute with T1", "T1T3T1^-1T3^-1");
  }
  if (rel.t2_t3 > tol) {
    throw Error(ErrorKind::kRelationViolated, "T3 does not commute with T2", "T2T3T2^-1T3^-1");
  }
  if (rel.t1_t2 > tol) {
    throw Error(ErrorKind::kRelationViolated, "group commutator of T1, T2 is not T3",
                "T1T2T1^-1T2^-1");
  }

  FamilyResult out;
  const FamilyResult pair = commuting_pair_metric(t1, t3, h0, cfg);
  out.warnings = pair.warnings;
  out.stages.emplace_back("T1", pair.stages[0].second);
  out.stages.emplace_back("T3", pair.form);
  out.form = average_over(t2, pair.form, cfg, out.warnings);
  out.stages.emplace_back("T2", out.form);
  out.all_unitary_residuals["T1"] = invariance_residual(t1, out.form.gram());
  out.all_unitary_residuals["T2"] = invariance_residual(t2, out.form.gram());
  out.all_unitary_residuals["T3"] = invariance_residual(t3, out.form.gram());
  return out;
}

std::tuple<CMatrix, CMatrix, CMatrix> make_clock_shift(int d) {
  if (d < 2) throw Error(ErrorKind::kInvalidInput, "clock/shift needs d >= 2");
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / d);
  CMatrix x = CMatrix::Zero(d, d);
  CMatrix c = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    x(j, (j + 1) % d) = 1.0;
    c(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  return {x, c, omega * CMatrix::Identity(d, d)};
}

}  // namespace unitarize
