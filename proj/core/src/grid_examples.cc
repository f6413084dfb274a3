#include "unitarize/grid_examples.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

namespace unitarize {

std::string_view to_string(GridKind k) {
  switch (k) {
    case GridKind::kWeightedCyclicShift: return "WeightedCyclicShift";
    case GridKind::kParityTimesFunction: return "ParityTimesFunction";
    case GridKind::kWeightedTranslation: return "WeightedTranslation";
  }
  return "Unknown";
}

GridKind grid_kind_from_string(std::string_view s) {
  if (s == "WeightedCyclicShift") return GridKind::kWeightedCyclicShift;
  if (s == "ParityTimesFunction") return GridKind::kParityTimesFunction;
  if (s == "WeightedTranslation") return GridKind::kWeightedTranslation;
  throw Error(ErrorKind::kInvalidInput, "unknown grid kind '" + std::string(s) + "'");
}

namespace {

[[noreturn]] void violated(const std::string& detail) {
  throw Error(ErrorKind::kSpecInvariantViolated, detail);
}

void require_samples(const Eigen::VectorXd& v, int n, const char* name, bool positive) {
  if (v.size() != n) {
    violated(std::string(name) + " must have one sample per grid point");
  }
  for (Index j = 0; j < n; ++j) {
    if (!std::isfinite(v(j)) || (positive && !(v(j) > 0.0))) {
      violated(std::string(name) + " must be finite" + (positive ? " and positive" : ""));
    }
  }
}

int wrap(int j, int n) { return ((j % n) + n) % n; }

}  // namespace

GridOperator build(const GridOperatorSpec& spec) {
  const int n = spec.grid_size;
  if (n < 2) violated("grid_size must be at least 2");
  CMatrix t = CMatrix::Zero(n, n);
  switch (spec.kind) {
    case GridKind::kWeightedCyclicShift: {
      require_samples(spec.rho, n, "rho", true);
      for (int j = 0; j < n; ++j) t(j, wrap(j + spec.shift, n)) = 1.0;
      return {t, HermitianForm(spec.rho.cast<Complex>().asDiagonal().toDenseMatrix())};
    }
    case GridKind::kParityTimesFunction: {
      require_samples(spec.mu, n, "mu", true);
      require_samples(spec.phi, n, "phi", false);
      for (int j = 0; j < n; ++j) {
        const int m = n - 1 - j;
        t(j, m) = std::polar(spec.mu(j) / spec.mu(m), spec.phi(j));
      }
      return {t, HermitianForm::identity(n)};
    }
    case GridKind::kWeightedTranslation: {
      if (n % 2 != 0) violated("weighted translation needs an even grid size");
      require_samples(spec.g, n, "g", true);
      require_samples(spec.phi, n, "phi", false);
      for (int j = 0; j < n; ++j) {
        const double prod = spec.g(wrap(j + spec.shift, n)) * spec.g(j);
        if (std::abs(prod - 1.0) > 1e-12) {
          violated("g(x + a) g(x) = 1 fails at grid point " + std::to_string(j));
        }
        t(j, wrap(j + spec.shift, n)) = std::polar(spec.g(j), spec.phi(j));
      }
      return {t, HermitianForm::identity(n)};
    }
  }
  violated("unknown grid kind");
}

namespace {

Eigen::VectorXd orbit_means(const Eigen::VectorXd& rho, int shift) {
  const int n = static_cast<int>(rho.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> orbit;
    for (int j = start; !seen[static_cast<std::size_t>(j)]; j = wrap(j + shift, n)) {
      seen[static_cast<std::size_t>(j)] = true;
      orbit.push_back(j);
    }
    double sum = 0.0;
    for (int j : orbit) sum += rho(j);
    for (int j : orbit) out(j) = sum / static_cast<double>(orbit.size());
  }
  return out;
}

}  // namespace

Eigen::VectorXd stated_q_squared(const GridOperatorSpec& spec) {
  const int n = spec.grid_size;
  Eigen::VectorXd q2(n);
  switch (spec.kind) {
    case GridKind::kWeightedCyclicShift:
      return orbit_means(spec.rho, spec.shift).cwiseQuotient(spec.rho);
    case GridKind::kParityTimesFunction:
      for (int j = 0; j < n; ++j) {
        const double r = spec.mu(n - 1 - j) / spec.mu(j);
        q2(j) = 0.5 * (1.0 + r * r);
      }
      return q2;
    case GridKind::kWeightedTranslation:
      for (int j = 0; j < n; ++j) q2(j) = 0.5 * (1.0 + spec.g(j) * spec.g(j));
      return q2;
  }
  return q2;
}

Eigen::VectorXd operator_q_squared(const GridOperatorSpec& spec) {
  if (spec.kind != GridKind::kWeightedTranslation) return stated_q_squared(spec);
  const int n = spec.grid_size;
  Eigen::VectorXd q2(n);
  for (int j = 0; j < n; ++j) {
    const double g = spec.g(wrap(j - spec.shift, n));
    q2(j) = 0.5 * (1.0 + g * g);
  }
  return q2;
}

double q_squared_error(const NagyResult& nagy, const Eigen::VectorXd& expected) {
  const CMatrix q2 = nagy.q_factor * nagy.q_factor;
  if (q2.rows() != expected.size()) {
    throw Error(ErrorKind::kInvalidInput, "expected diagonal has the wrong length");
  }
  const CMatrix diff = q2 - CMatrix(expected.cast<Complex>().asDiagonal());
  return diff.cwiseAbs().maxCoeff();
}

SpectrumReport check_closed_form_spectrum(const GridOperatorSpec& spec, const NagyResult& nagy) {
  const int n = spec.grid_size;
  const CVector lam = eigenvalues(nagy.unitarized);

  SpectrumReport r;
  std::vector<double> phases;
  for (Index i = 0; i < lam.size(); ++i) phases.push_back(phase_of(lam(i)));
  std::sort(phases.begin(), phases.end());
  double gap = 2.0 * std::numbers::pi - phases.back() + phases.front();
  for (std::size_t i = 1; i < phases.size(); ++i) gap = std::max(gap, phases[i] - phases[i - 1]);
  r.covering_radius = 0.5 * gap;
  r.covering_bound = 2.0 * std::numbers::pi / n;

  if (spec.kind == GridKind::kParityTimesFunction) {
    std::vector<Complex> predicted;
    for (int j = 0; j <= (n - 1) / 2; ++j) {
      const int m = n - 1 - j;
      if (m == j) {
        predicted.push_back(std::polar(1.0, spec.phi(j)));
      } else {
        const Complex s = std::polar(1.0, 0.5 * (spec.phi(j) + spec.phi(m)));
        predicted.push_back(s);
        predicted.push_back(-s);
      }
    }
    std::vector<bool> used(static_cast<std::size_t>(lam.size()), false);
    double worst = 0.0;
    for (const Complex& p : predicted) {
      Index best = -1;
      for (Index i = 0; i < lam.size(); ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        if (best < 0 || std::abs(lam(i) - p) < std::abs(lam(best) - p)) best = i;
      }
      used[static_cast<std::size_t>(best)] = true;
      worst = std::max(worst, std::abs(lam(best) - p));
    }
    r.pair_error = worst;
  }
  return r;
}

CyclicShiftReport check_cyclic_shift_limit(const GridOperatorSpec& spec, const NagyResult& nagy) {
  if (spec.kind != GridKind::kWeightedCyclicShift) {
    throw Error(ErrorKind::kInvalidInput, "orbit-mean check applies to the weighted cyclic shift");
  }
  const int n = spec.grid_size;
  CyclicShiftReport r;
  r.orbit_means = orbit_means(spec.rho, spec.shift);
  const CMatrix expected = r.orbit_means.cast<Complex>().asDiagonal();
  r.gram_error =
      (nagy.invariant_form.gram() - expected).cwiseAbs().maxCoeff() / spec.rho.maxCoeff();
  CMatrix w = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int k = wrap(j + spec.shift, n);
    w(j, k) = std::sqrt(spec.rho(k) / spec.rho(j));
  }
  r.u_pattern_error = (nagy.unitarized - w).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace unitarize
