// Acceptance runner. `acceptance` runs every criterion, `acceptance N` runs
// one. Prints one PASS/FAIL line per criterion; exit status 1 on any FAIL.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "unitarize/altmetrics.h"
#include "unitarize/boundedness.h"
#include "unitarize/error.h"
#include "unitarize/families.h"
#include "unitarize/fixtures.h"
#include "unitarize/grid_examples.h"
#include "unitarize/hamiltonian.h"
#include "unitarize/intertwine.h"
#include "unitarize/nagy.h"

namespace unitarize {
namespace {

using std::numbers::pi;
const Complex kI{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      failures.push_back(what);
      pass = false;
    }
  }
};

struct Worst {
  double value = 0.0;
  void operator()(double v) { value = std::max(value, v); }
};

CMatrix involution() {
  CMatrix t(2, 2);
  t << 1, 2, 0, -1;
  return t;
}

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / b.norm(); }

// Shared population for criteria 1 and 2.
struct Population {
  std::vector<CMatrix> bounded;
  std::vector<CMatrix> unbounded;
};

const Population& population() {
  static const Population pop = [] {
    Population p;
    Rng rng(seed_from_env());
    for (int i = 0; i < 500; ++i) {
      const Index n = rng.uniform_int(2, 8);
      const double cond = rng.uniform(1.0, 100.0);
      p.bounded.push_back(random_conjugated_unimodular(n, cond, 0.05, i % 4 == 0, rng).t);
    }
    for (int i = 0; i < 500; ++i) {
      const Index n = rng.uniform_int(2, 8);
      const double cond = rng.uniform(1.0, 100.0);
      const DefectKind kind = i % 2 == 0 ? DefectKind::kOffCircle : DefectKind::kJordanBlock;
      p.unbounded.push_back(random_not_bounded(n, cond, kind, rng));
    }
    return p;
  }();
  return pop;
}

void criterion1(Outcome& o) {
  const Population& p = population();
  int misses = 0;
  for (const auto& t : p.bounded) misses += check_uniformly_bounded(t).bounded() ? 0 : 1;
  for (const auto& t : p.unbounded) misses += check_uniformly_bounded(t).bounded() ? 1 : 0;
  o.detail << "misclassified " << misses << " of 1000";
  o.require(misses == 0, "misclassification");
}

void criterion2(Outcome& o) {
  Worst inv, uni;
  for (const auto& t : population().bounded) {
    const NagyResult n = nagy_metric(t, HermitianForm::identity(t.rows()));
    inv(invariance_residual(t, n.invariant_form.gram()));
    const Index d = t.rows();
    uni((n.unitarized.adjoint() * n.unitarized - CMatrix::Identity(d, d)).norm());
  }
  o.detail << "max invariance " << inv.value << ", max unitarity " << uni.value;
  o.require(inv.value <= 1e-9, "invariance");
  o.require(uni.value <= 1e-9, "unitarity");
}

void criterion3(Outcome& o) {
  Rng rng(seed_from_env() + 3);
  Worst err;
  for (int i = 0; i < 200; ++i) {
    const Index n = rng.uniform_int(2, 8);
    const double cond = rng.uniform(1.0, 100.0);
    const ConjugatedFixture f = random_conjugated_unimodular(n, cond, 0.1, i % 4 == 0, rng);
    const HermitianForm id = HermitianForm::identity(n);
    const CesaroResult c = cesaro_oracle(f.t, id, 4096);
    err(rel(c.form.gram(), nagy_metric(f.t, id).invariant_form.gram()));
  }
  CMatrix g(2, 2);
  g << 1, 1, 1, 3;
  const HermitianForm id2 = HermitianForm::identity(2);
  const double closed = (nagy_metric(involution(), id2).invariant_form.gram() - g).cwiseAbs().maxCoeff();
  const double ces = (cesaro_oracle(involution(), id2, 4096).form.gram() - g).cwiseAbs().maxCoeff();
  o.detail << "max relative error " << err.value << "; involution closed " << closed
           << ", cesaro " << ces;
  o.require(err.value <= 1e-3, "random instances");
  o.require(closed <= 1e-12 && ces <= 1e-12, "finite-order fixture");
}

void criterion4(Outcome& o) {
  Rng rng(seed_from_env() + 4);
  Worst q2, pairs;
  for (int i = 0; i < 50; ++i) {
    GridOperatorSpec s;
    s.kind = GridKind::kParityTimesFunction;
    s.grid_size = rng.uniform_int(2, 64);
    s.mu = Eigen::VectorXd(s.grid_size);
    s.phi = Eigen::VectorXd(s.grid_size);
    for (int j = 0; j < s.grid_size; ++j) {
      s.mu(j) = rng.uniform(0.25, 4.0);
      s.phi(j) = rng.uniform(0.0, 2 * pi);
    }
    const GridOperator op = build(s);
    const NagyResult n = nagy_metric(op.t, op.h0);
    q2(q_squared_error(n, stated_q_squared(s)));
    pairs(*check_closed_form_spectrum(s, n).pair_error);
  }
  Worst q2_stated, q2_operator;
  double slack = -1.0;
  for (int d : {8, 16, 32, 64}) {
    GridOperatorSpec s;
    s.kind = GridKind::kWeightedTranslation;
    s.grid_size = d;
    s.shift = 1;
    s.g = Eigen::VectorXd(d);
    s.phi = Eigen::VectorXd(d);
    const double c = rng.uniform(1.2, 3.0);
    for (int j = 0; j < d; ++j) {
      s.g(j) = j % 2 == 0 ? c : 1.0 / c;
      s.phi(j) = rng.uniform(0.0, 2 * pi);
    }
    const GridOperator op = build(s);
    const NagyResult n = nagy_metric(op.t, op.h0);
    q2_stated(q_squared_error(n, stated_q_squared(s)));
    q2_operator(q_squared_error(n, operator_q_squared(s)));
    const SpectrumReport r = check_closed_form_spectrum(s, n);
    slack = std::max(slack, r.covering_radius - (2 * pi / d + 1e-9));
  }
  o.detail << "parity Q^2 " << q2.value << ", parity pairs " << pairs.value << "; translation Q^2 as stated "
           << q2_stated.value << " (for the operator as built " << q2_operator.value
           << "), covering radius excess " << slack;
  o.require(q2.value <= 1e-10, "parity Q^2");
  o.require(pairs.value <= 1e-10, "parity eigenvalue pairs");
  o.require(q2_stated.value <= 1e-10, "translation Q^2 = (1 + g^2(x)) / 2");
  o.require(slack <= 0.0, "translation covering radius");
}

void criterion5(Outcome& o) {
  Rng rng(seed_from_env() + 5);
  Worst r_eq, comm_eq, comm_r;
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.uniform_int(2, 6);
    const ConjugatedFixture f =
        random_conjugated_unimodular(n, rng.uniform(1.0, 20.0), 0.1, i % 3 == 0, rng);
    const CMatrix a = random_conditioned(n, rng.uniform(1.0, 5.0), rng);
    const CMatrix b = random_conditioned(n, rng.uniform(1.0, 5.0), rng);
    const MetricChangeReport m = metric_dependence(f.t, HermitianForm(a.adjoint() * a),
                                                   HermitianForm(b.adjoint() * b));
    r_eq(m.residual_R_eq);
    comm_eq(m.residual_comm_eq);
    comm_r(m.commutator_R);
  }
  o.detail << "R = C + A " << r_eq.value << ", [A,T] = -[C,T] " << comm_eq.value << ", [R,T] "
           << comm_r.value;
  o.require(r_eq.value <= 1e-6, "R = C + A");
  o.require(comm_eq.value <= 1e-6, "[A,T] = -[C,T]");
  o.require(comm_r.value <= 1e-9, "[R,T] = 0");
}

void criterion6(Outcome& o) {
  Rng rng(seed_from_env() + 6);
  Worst comm;
  bool exact = true;
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.uniform_int(2, 8);
    const ConjugatedFixture f =
        random_conjugated_unimodular(n, rng.uniform(1.0, 50.0), 0.1, i % 3 == 0, rng);
    const NagyResult nr = nagy_metric(f.t, HermitianForm::identity(n));
    std::map<Index, double> phi, ones;
    for (Index k = 0; k < nr.spectrum.num_clusters(); ++k) {
      phi[k] = std::exp(rng.uniform(-3.0, 3.0));
      ones[k] = 1.0;
    }
    const PhiMetric p = phi_metric(f.t, nr, phi);
    comm(commutator(f.t, p.c_phi).norm() / (f.t.norm() * p.c_phi.norm()));
    const PhiMetric unit = phi_metric(f.t, nr, ones);
    exact = exact && unit.form.gram() == nr.invariant_form.gram() &&
            unit.c_phi == CMatrix::Identity(n, n);
  }
  o.detail << "max [T, C_phi] " << comm.value << ", phi = 1 exact " << (exact ? "yes" : "no");
  o.require(comm.value <= 1e-9, "[T, C_phi] = 0");
  o.require(exact, "phi = 1 returns the Nagy metric");
}

// T1 = S^-1 D S, T2 = S^-1 V S with V unitary and block diagonal on the
// eigenspaces of D.
std::pair<CMatrix, CMatrix> commuting_pair(Index n, bool degenerate, double cond, Rng& rng) {
  CVector d = random_unimodular_spectrum(n, 0.2, rng);
  const Index block = degenerate ? std::min<Index>(n, 2 + n / 3) : 1;
  for (Index k = 1; k < block; ++k) d(k) = d(0);
  CMatrix v = CMatrix::Zero(n, n);
  const CMatrix w = random_unitary(block, rng);
  const CVector th = random_unimodular_spectrum(block, 0.2, rng);
  v.topLeftCorner(block, block) = w * th.asDiagonal() * w.adjoint();
  const CVector rest = random_unimodular_spectrum(n, 0.2, rng);
  for (Index k = block; k < n; ++k) v(k, k) = rest(k);
  const CMatrix s = random_conditioned(n, cond, rng);
  const CMatrix si = s.inverse();
  return {si * CMatrix(d.asDiagonal()) * s, si * v * s};
}

void criterion7(Outcome& o) {
  Rng rng(seed_from_env() + 7);
  Worst both, shortcut;
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.uniform_int(2, 6);
    const bool degenerate = i % 2 == 0;
    const auto [t1, t2] = commuting_pair(n, degenerate, rng.uniform(1.0, 30.0), rng);
    const HermitianForm id = HermitianForm::identity(n);
    const FamilyResult r = commuting_pair_metric(t1, t2, id);
    for (const auto& [name, res] : r.all_unitary_residuals) both(res);
    if (!degenerate) {
      const ShortcutReport sc = multiplicity_free_shortcut(t1, t2, id);
      o.require(sc.verdict == ShortcutVerdict::kShortcutValid, "shortcut verdict");
      shortcut(rel(r.form.gram(), r.stages.front().second.gram()));
    }
  }
  const auto [c1, c2] = degenerate_commuting_pair(10.0, rng);
  const ShortcutReport sc = multiplicity_free_shortcut(c1, c2, HermitianForm::identity(3));
  const bool counter = sc.verdict == ShortcutVerdict::kShortcutInvalid && sc.t2_residual > 1e-3;
  o.detail << "max invariance " << both.value << ", stage-2 change (multiplicity free) "
           << shortcut.value << ", 3x3 counterexample h_T1 residual under T2 " << sc.t2_residual;
  o.require(both.value <= 1e-9, "joint invariance");
  o.require(shortcut.value <= 1e-10, "shortcut no-op");
  o.require(counter, "degenerate counterexample");
}

void criterion8(Outcome& o) {
  Rng rng(seed_from_env() + 8);
  Worst relations, disjoint, dft;
  int minimum_nonzero = 1 << 30;
  for (int i = 0; i < 100; ++i) {
    const Index n = rng.uniform_int(2, 6);
    const Index shared = rng.uniform_int(1, static_cast<int>(n));
    const CVector z = random_unimodular_spectrum(2 * n, 0.1, rng);
    CVector s1(n), s2(n);
    for (Index k = 0; k < n; ++k) {
      s1(k) = z(k);
      s2(k) = k < shared ? z(k) : z(n + k);
    }
    const ConjugatedFixture f1 = conjugate_spectrum(s1, rng.uniform(1.0, 20.0), rng);
    const ConjugatedFixture f2 = conjugate_spectrum(s2, rng.uniform(1.0, 20.0), rng);
    const IntertwineResult r = intertwiner(f1.t, f2.t, HermitianForm::identity(n));
    for (const auto& [k, v] : r.relation_residuals) relations(v);
    minimum_nonzero = std::min(minimum_nonzero, r.nonzero ? 1 : 0);

    CVector s3(n);
    for (Index k = 0; k < n; ++k) s3(k) = z(n + k);
    const ConjugatedFixture f3 = conjugate_spectrum(s3, rng.uniform(1.0, 20.0), rng);
    const IntertwineResult none = intertwiner(f1.t, f3.t, HermitianForm::identity(n));
    disjoint(none.F_matrix.norm());
    o.require(!none.nonzero, "disjoint flagged nonzero");
  }
  for (int d : {4, 8, 16}) {
    const auto [x, c, w] = make_clock_shift(d);
    const IntertwinerFrames frames = intertwiner_frames(c, x, HermitianForm::identity(d));
    PairWeights ones;
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        if (frames.matched(i, j)) ones[{i, j}] = 1.0;
      }
    }
    dft((intertwiner_scaled(frames, ones) - oracle::dft(d)).cwiseAbs().maxCoeff());
  }
  o.detail << "max relation residual " << relations.value << ", max ||A0|| disjoint "
           << disjoint.value << ", DFT entrywise " << dft.value;
  o.require(relations.value <= 1e-8, "relations 1-4");
  o.require(minimum_nonzero == 1, "overlap flagged zero");
  o.require(disjoint.value <= 1e-10, "disjoint A0 = 0");
  o.require(dft.value <= 1e-12, "unitary DFT");
}

void criterion9(Outcome& o) {
  Rng rng(seed_from_env() + 9);
  Worst res;
  for (int d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto [x, c, w] = make_clock_shift(d);
      const CMatrix s = random_conditioned(d, rng.uniform(1.0, 50.0), rng);
      const CMatrix si = s.inverse();
      const FamilyResult r =
          heisenberg_metric(si * x * s, si * c * s, si * w * s, HermitianForm::identity(d));
      for (const auto& [name, v] : r.all_unitary_residuals) res(v);
    }
  }
  o.detail << "max unitarity residual " << res.value;
  o.require(res.value <= 1e-8, "all three generators unitary");
}

void criterion10(Outcome& o) {
  Rng rng(seed_from_env() + 10);
  Worst bracket, jacobi, ehrenfest, assoc;
  for (int inst = 0; inst < 10; ++inst) {
    const Index n = rng.uniform_int(2, 5);
    const CMatrix g = random_conditioned(n, 3.0, rng);
    const HermitianForm h(g.adjoint() * g);
    const CMatrix gi = h.gram().inverse();
    const QuadraticFunction fa(gi * random_hermitian(n, rng), h),
        fb(gi * random_hermitian(n, rng), h), fc(gi * random_hermitian(n, rng), h);
    const CMatrix comm = kI * (fa.op() * fb.op() - fb.op() * fa.op());
    for (int k = 0; k < 20; ++k) {
      const CVector psi = random_state(n, rng);
      const double expected = 0.5 * psi.dot(h.gram() * comm * psi).real();
      bracket(std::abs(poisson_bracket(fa, fb, psi) - expected) / std::max(1.0, std::abs(expected)));
      jacobi(std::abs(poisson_bracket(fa, bracket_function(fb, fc), psi) +
                      poisson_bracket(fb, bracket_function(fc, fa), psi) +
                      poisson_bracket(fc, bracket_function(fa, fb), psi)));
    }
    const QuadraticFunction fh(gi * random_hermitian(n, rng), h);
    const CVector psi0 = random_state(n, rng);
    const double dt = 1e-4;
    for (double t : {0.0, 0.7, 2.0}) {
      const auto v = ehrenfest_flow(fh, fa, psi0, {t - dt, t + dt});
      const CVector psi_t = oracle::expm(-kI * t * fh.op()) * psi0;
      ehrenfest((std::abs((v[1] - v[0]) / (2 * dt) - poisson_bracket(fh, fa, psi_t))));
    }
    const CMatrix a = CMatrix::Random(n, n), b = CMatrix::Random(n, n), c = CMatrix::Random(n, n);
    const CMatrix r = random_conditioned(n, 5.0, rng);
    const CMatrix lhs = n_product(n_product(a, b, r), c, r);
    assoc((lhs - n_product(a, n_product(b, c, r), r)).norm() / lhs.norm());
  }
  const RMatrix dyn = oscillator_dynamics();
  const ClassicalFactorization f0 = oscillator_positive(), f1 = oscillator_split();
  const double r0 = factorization_check(dyn, f0), r1 = factorization_check(dyn, f1);
  const bool sig = f0.signature() == std::make_pair(4, 0) && f1.signature() == std::make_pair(2, 2);
  o.detail << "bracket " << bracket.value << ", Jacobi " << jacobi.value << ", Ehrenfest "
           << ehrenfest.value << ", associativity " << assoc.value << ", oscillator residuals "
           << r0 << "/" << r1 << ", signatures " << (sig ? "(4,0)/(2,2)" : "wrong");
  o.require(bracket.value <= 1e-9, "bracket = f_{i[A,B]}");
  o.require(jacobi.value <= 1e-9, "Jacobi");
  o.require(ehrenfest.value <= 1e-6, "Ehrenfest");
  o.require(assoc.value <= 1e-13, "associativity");
  o.require(r0 == 0.0 && r1 == 0.0, "oscillator factorizations");
  o.require(sig, "oscillator signatures");
}

void criterion11(Outcome& o) {
  Rng rng(seed_from_env() + 11);
  int wrong = 0, unitarized = 0;
  for (int i = 0; i < 200; ++i) {
    const Index n = rng.uniform_int(2, 8);
    CVector s = random_unimodular_spectrum(n, 0.0, rng);
    const bool unimodular = i % 2 == 0;
    if (!unimodular) {
      const Index bad = rng.uniform_int(1, static_cast<int>(n));
      for (Index k = 0; k < bad; ++k) {
        const double m = i % 4 == 1 ? rng.uniform(0.2, 3.0) : 1.0 + (k % 2 ? -1 : 1) * 0.05;
        s(k) *= std::abs(m - 1.0) < 1e-3 ? 1.5 : m;
      }
    }
    const CMatrix t = random_normal(s, rng);
    const NormalVerdict v = check_normal_dichotomy(t);
    const NormalVerdict want =
        unimodular ? NormalVerdict::kAlreadyUnitary : NormalVerdict::kNotSimilarToUnitary;
    wrong += v == want ? 0 : 1;
    if (!unimodular) {
      try {
        nagy_metric(t, HermitianForm::identity(n));
        ++unitarized;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kNotUniformlyBounded) ++unitarized;
      }
    }
  }
  o.detail << "wrong verdicts " << wrong << " of 200, non-unitary normal unitarized "
           << unitarized;
  o.require(wrong == 0, "dichotomy verdicts");
  o.require(unitarized == 0, "non-unitary normal unitarized");
}

struct Criterion {
  const char* name;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"boundedness verdicts on conjugated and perturbed spectra", criterion1},
      {"invariance and unitarity of the Nagy construction", criterion2},
      {"closed form against the Cesaro oracle", criterion3},
      {"grid example closed forms", criterion4},
      {"fiducial-metric dependence identities", criterion5},
      {"phi-family commutation", criterion6},
      {"commuting pairs and the multiplicity-free shortcut", criterion7},
      {"intertwiners and the Fourier matrix", criterion8},
      {"Heisenberg clock-shift triples", criterion9},
      {"brackets, Ehrenfest flow, N-product, oscillator", criterion10},
      {"normal matrices are unitary or not unitarizable", criterion11},
  };
  return all;
}

bool run_one(std::size_t idx) {
  const Criterion& c = criteria()[idx];
  Outcome o;
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::string detail = o.detail.str();
  for (const auto& f : o.failures) detail += " | failed: " + f;
  std::printf("[%s] criterion %2zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", idx + 1, c.name,
              detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace
}  // namespace unitarize

int main(int argc, char** argv) {
  const auto& all = unitarize::criteria();
  if (argc > 1) {
    const long k = std::strtol(argv[1], nullptr, 10);
    if (k < 1 || k > static_cast<long>(all.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", all.size());
      return 2;
    }
    return unitarize::run_one(static_cast<std::size_t>(k - 1)) ? 0 : 1;
  }
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) ok = unitarize::run_one(i) && ok;
  return ok ? 0 : 1;
}
