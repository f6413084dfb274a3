#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/io.h"
#include "cli/report.h"
#include "cli/run.h"
#include "unitarize/altmetrics.h"
#include "unitarize/boundedness.h"
#include "unitarize/families.h"
#include "unitarize/grid_examples.h"
#include "unitarize/hamiltonian.h"
#include "unitarize/intertwine.h"
#include "unitarize/nagy.h"

namespace unitarize::cli {

namespace {

struct Options {
  std::string in = "-";
  std::string h0 = "identity";
  std::string h0_prime;
  std::string t1, t2, t3;
  std::string spec, phi, weights, psi, a, b, h;
  std::string pairing = "fiducial";
  std::string format = "json";
  std::vector<double> times;
  double tol_cluster = ToleranceConfig{}.eig_cluster_tol;
  double tol_unitary = ToleranceConfig{}.unitarity_tol;
  double tol_psd = ToleranceConfig{}.psd_tol;
  int horizon = ToleranceConfig{}.cesaro_horizon;
  int window = kDefaultPowerWindow;
  int clock_shift = 0;
  bool generator = false;
  bool resolvent = false;
  bool flow = false;
  bool inverse = false;
  bool commutant = false;
  bool shortcut = false;
  bool oscillator = false;

  ToleranceConfig config() const {
    ToleranceConfig c;
    c.eig_cluster_tol = tol_cluster;
    c.unitarity_tol = tol_unitary;
    c.psd_tol = tol_psd;
    c.cesaro_horizon = horizon;
    c.validate();
    return c;
  }
};

class Session {
 public:
  Session(const Options& o, Report& r) : o_(o), r_(r), cfg_(o.config()) {
    r_.set_tolerances(cfg_);
  }

  const ToleranceConfig& cfg() const { return cfg_; }

  CMatrix matrix(const std::string& flag, const std::string& path) {
    const json j = read_json(path);
    r_.add_input(flag, j);
    return matrix_from_json(j, flag);
  }

  CVector vector(const std::string& flag, const std::string& path) {
    const json j = read_json(path);
    r_.add_input(flag, j);
    return vector_from_json(j, flag);
  }

  json raw(const std::string& flag, const std::string& path) {
    json j = read_json(path);
    r_.add_input(flag, j);
    return j;
  }

  HermitianForm form(const std::string& flag, const std::string& path, Index dim) {
    if (path == "identity") {
      r_.add_input(flag, "identity");
      return HermitianForm::identity(dim);
    }
    const json j = read_json(path);
    r_.add_input(flag, j);
    HermitianForm h = form_from_json(j, flag, cfg_.psd_tol);
    if (h.dim() != dim) {
      throw Error(ErrorKind::kShapeMismatch,
                  flag + " has dimension " + std::to_string(h.dim()) + ", expected " +
                      std::to_string(dim),
                  flag);
    }
    return h;
  }

 private:
  const Options& o_;
  Report& r_;
  ToleranceConfig cfg_;
};

void require_dim(const CMatrix& m, Index n, const std::string& flag) {
  if (m.rows() != n) {
    throw Error(ErrorKind::kShapeMismatch,
                flag + " has dimension " + std::to_string(m.rows()) + ", expected " +
                    std::to_string(n),
                flag);
  }
}

json complex_list(const CVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

bool negative_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::kNotAutomorphism:
    case ErrorKind::kNotUniformlyBounded:
    case ErrorKind::kDivergenceDetected:
    case ErrorKind::kSingularShift:
    case ErrorKind::kNotBoundedFlow:
    case ErrorKind::kCesaroDivergence:
    case ErrorKind::kNotCommuting:
    case ErrorKind::kRelationViolated:
    case ErrorKind::kNotSelfAdjoint:
      return true;
    default:
      return false;
  }
}

void add_nagy(Report& r, const NagyResult& n) {
  r.matrices()["G_T"] = form_to_json(n.invariant_form);
  r.matrices()["Q"] = matrix_to_json(n.q_factor);
  r.matrices()["U"] = matrix_to_json(n.unitarized);
  r.residuals()["invariance"] = n.invariance_residual;
  r.residuals()["unitarity"] = n.unitarity_residual;
  r.values()["q_min_eigenvalue"] = n.q_min_eigenvalue;
  r.values()["q_max_eigenvalue"] = n.q_max_eigenvalue;
  r.values()["eigenvalues"] = complex_list(n.spectrum.eigenvalues);
  r.values()["method"] = std::string(to_string(n.method));
  r.warn_all(n.warnings);
}

// --- subcommands ----------------------------------------------------------

int cmd_check(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t = s.matrix("in", o.in);
  if (o.generator) {
    const GeneratorReport g = check_generator(t, s.cfg());
    r.verdicts()["generator"] = std::string(to_string(g.verdict));
    json reasons = json::array();
    for (const auto& d : g.defects) {
      reasons.push_back({{"kind", std::string(to_string(d.kind))},
                         {"eigenvalue", complex_to_json(d.eigenvalue)}});
    }
    r.values()["reasons"] = reasons;
    r.values()["spectrum"] = complex_list(g.spectrum);
    return g.similar_to_self_adjoint() ? kExitOk : kExitNegative;
  }
  const BoundednessReport b = check_uniformly_bounded(t, s.cfg(), o.window);
  r.verdicts()["boundedness"] = std::string(to_string(b.verdict));
  r.verdicts()["normal"] = std::string(to_string(check_normal_dichotomy(t, s.cfg())));
  json reasons = json::array();
  for (const auto& d : b.reasons) {
    reasons.push_back({{"kind", std::string(to_string(d.kind))},
                       {"eigenvalue", complex_to_json(d.eigenvalue)}});
  }
  r.values()["reasons"] = reasons;
  json norms = json::array();
  for (const auto& [k, v] : b.sampled_power_norms) norms.push_back(json::array({k, v}));
  r.values()["sampled_power_norms"] = norms;
  if (b.bound_estimate) r.values()["bound_estimate"] = *b.bound_estimate;
  r.values()["eigenvalues"] = complex_list(b.spectrum.eigenvalues);
  r.values()["diagonalizable"] = b.spectrum.diagonalizable;
  r.values()["eigenvector_rcond"] = b.spectrum.eigenvector_rcond;
  r.warn_all(b.spectrum.warnings);
  if (o.resolvent) {
    const ResolventEstimate e = resolvent_bound_estimate(t, {1.1, 1.01, 1.001}, 1024);
    r.values()["resolvent_estimate"] = e.estimate;
    r.values()["resolvent_per_radius"] = e.per_radius;
    r.values()["resolvent_skipped_samples"] = e.skipped_samples;
  }
  return b.bounded() ? kExitOk : kExitNegative;
}

int cmd_nagy(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t = s.matrix("in", o.in);
  const HermitianForm h0 = s.form("h0", o.h0, t.rows());
  if (o.flow) {
    r.verdicts()["flow"] = "BoundedFlow";
    add_nagy(r, flow_metric(t, h0, s.cfg()));
    return kExitOk;
  }
  r.verdicts()["boundedness"] = "UniformlyBounded";
  add_nagy(r, nagy_metric(t, h0, s.cfg()));
  return kExitOk;
}

int cmd_cayley(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix m = s.matrix("in", o.in);
  if (o.inverse) {
    const CMatrix h = inverse_cayley(m);
    r.matrices()["H"] = matrix_to_json(h);
    r.residuals()["roundtrip"] = op_norm(cayley(h) - m) / std::max(1.0, op_norm(m));
  } else {
    const CMatrix t = cayley(m);
    r.matrices()["T"] = matrix_to_json(t);
    r.residuals()["roundtrip"] = op_norm(inverse_cayley(t) - m) / std::max(1.0, op_norm(m));
  }
  return kExitOk;
}

int cmd_log(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t = s.matrix("in", o.in);
  const HermitianForm h0 = s.form("h0", o.h0, t.rows());
  const NagyResult n = nagy_metric(t, h0, s.cfg());
  const CMatrix a = unitary_log(t, n);
  r.matrices()["A"] = matrix_to_json(a);
  r.matrices()["G_T"] = form_to_json(n.invariant_form);
  r.residuals()["self_adjointness"] = self_adjointness_residual(a, n.invariant_form);
  const CMatrix e = spectral_exp(a, Complex(0.0, 1.0), s.cfg());
  r.residuals()["exp_iA_minus_T"] = op_norm(e - t) / op_norm(t);
  return kExitOk;
}

ScalingSpec scaling_from_json(const json& j, Index n) {
  if (!j.is_object() || !j.contains("weights") || !j["weights"].is_object()) {
    throw Error(ErrorKind::kInvalidInput, "scaling spec needs an object 'weights'");
  }
  ScalingSpec spec;
  for (auto it = j["weights"].begin(); it != j["weights"].end(); ++it) {
    Index k = 0;
    try {
      k = std::stol(it.key());
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidInput, "weight keys must be cluster indices");
    }
    if (it.value().is_number()) {
      spec.weights.emplace(k, it.value().get<double>());
    } else {
      spec.weights.emplace(k, matrix_from_json(it.value(), "weights." + it.key()));
    }
  }
  if (j.contains("frame")) {
    CMatrix f = matrix_from_json(j["frame"], "frame");
    require_dim(f, n, "frame");
    spec.frame = std::move(f);
  }
  return spec;
}

int cmd_altmetric(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t = s.matrix("in", o.in);
  const HermitianForm h0 = s.form("h0", o.h0, t.rows());
  if (o.commutant) {
    const auto basis = commutant_positive_basis(t, s.cfg());
    json list = json::array();
    for (const auto& k : basis) list.push_back(matrix_to_json(k));
    r.values()["commutant_basis"] = list;
    r.values()["commutant_dimension"] = basis.size();
    return kExitOk;
  }
  if (!o.phi.empty()) {
    const json pj = s.raw("phi", o.phi);
    std::map<Index, double> phi;
    if (!pj.is_object()) throw Error(ErrorKind::kInvalidInput, "phi must map cluster -> value");
    for (auto it = pj.begin(); it != pj.end(); ++it) {
      if (!it.value().is_number()) {
        throw Error(ErrorKind::kInvalidInput, "phi values must be numbers");
      }
      phi[std::stol(it.key())] = it.value().get<double>();
    }
    const NagyResult n = nagy_metric(t, h0, s.cfg());
    const PhiMetric pm = phi_metric(t, n, phi, s.cfg());
    r.matrices()["h_phi"] = form_to_json(pm.form);
    r.matrices()["C_phi"] = matrix_to_json(pm.c_phi);
    r.residuals()["commutator"] = pm.commutator_residual;
    r.residuals()["invariance"] = invariance_residual(t, pm.form.gram());
    return kExitOk;
  }
  if (o.spec.empty()) {
    throw Error(ErrorKind::kInvalidInput, "altmetric needs --spec, --phi or --commutant");
  }
  const ScalingSpec spec = scaling_from_json(s.raw("spec", o.spec), t.rows());
  const HermitianForm h = scaled_metric(t, h0, spec, s.cfg());
  const auto [lo, hi] = spec.bounds();
  r.matrices()["form"] = form_to_json(h);
  r.residuals()["invariance"] = invariance_residual(t, h.gram());
  r.values()["weight_min"] = lo;
  r.values()["weight_max"] = hi;
  return kExitOk;
}

int cmd_depend(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t = s.matrix("in", o.in);
  if (o.h0_prime.empty()) throw Error(ErrorKind::kInvalidInput, "depend needs --h0-prime");
  const HermitianForm h0 = s.form("h0", o.h0, t.rows());
  const HermitianForm h0p = s.form("h0_prime", o.h0_prime, t.rows());
  DependencePairing pairing = DependencePairing::kFiducial;
  if (o.pairing == "invariant") {
    pairing = DependencePairing::kInvariant;
  } else if (o.pairing != "fiducial") {
    throw Error(ErrorKind::kInvalidInput, "--pairing must be fiducial or invariant");
  }
  const MetricChangeReport m = metric_dependence(t, h0, h0p, s.cfg(), pairing);
  r.matrices()["C"] = matrix_to_json(m.C);
  r.matrices()["R"] = matrix_to_json(m.R);
  r.matrices()["A"] = matrix_to_json(m.A);
  r.residuals()["R_eq"] = m.residual_R_eq;
  r.residuals()["comm_eq"] = m.residual_comm_eq;
  r.residuals()["commutator_R"] = m.commutator_R;
  r.residuals()["cesaro"] = m.cesaro_residual;
  r.values()["pairing"] = std::string(to_string(m.pairing));
  r.warn_all(m.warnings);
  return kExitOk;
}

void add_family(Report& r, const FamilyResult& f) {
  r.matrices()["form"] = form_to_json(f.form);
  json stages = json::array();
  for (const auto& [id, h] : f.stages) stages.push_back({{"after", id}, {"form", form_to_json(h)}});
  r.values()["stages"] = stages;
  for (const auto& [id, v] : f.all_unitary_residuals) r.residuals()["unitary_" + id] = v;
  r.warn_all(f.warnings);
}

int cmd_pair(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t1 = s.matrix("t1", o.t1);
  const CMatrix t2 = s.matrix("t2", o.t2);
  require_dim(t2, t1.rows(), "t2");
  const HermitianForm h0 = s.form("h0", o.h0, t1.rows());
  if (o.shortcut) {
    const ShortcutReport sr = multiplicity_free_shortcut(t1, t2, h0, s.cfg());
    r.verdicts()["shortcut"] = std::string(to_string(sr.verdict));
    r.values()["degenerate_clusters"] = sr.degenerate_clusters;
    r.residuals()["t2_invariance_of_h_T1"] = sr.t2_residual;
    r.matrices()["h_T1"] = form_to_json(sr.t1_form);
    return kExitOk;
  }
  add_family(r, commuting_pair_metric(t1, t2, h0, s.cfg()));
  return kExitOk;
}

int cmd_heisenberg(const Options& o, Report& r) {
  Session s(o, r);
  CMatrix t1, t2, t3;
  if (o.clock_shift > 0) {
    std::tie(t1, t2, t3) = make_clock_shift(o.clock_shift);
    r.add_input("clock_shift", o.clock_shift);
  } else {
    t1 = s.matrix("t1", o.t1);
    t2 = s.matrix("t2", o.t2);
    t3 = s.matrix("t3", o.t3);
    require_dim(t2, t1.rows(), "t2");
    require_dim(t3, t1.rows(), "t3");
  }
  const HermitianForm h0 = s.form("h0", o.h0, t1.rows());
  const RelationResiduals rel = heisenberg_relations(t1, t2, t3);
  r.residuals()["relation_t1_t3"] = rel.t1_t3;
  r.residuals()["relation_t2_t3"] = rel.t2_t3;
  r.residuals()["relation_t1_t2"] = rel.t1_t2;
  add_family(r, heisenberg_metric(t1, t2, t3, h0, s.cfg()));
  return kExitOk;
}

PairWeights weights_from_json(const json& j, const IntertwinerFrames& frames) {
  PairWeights w;
  if (j.is_object() && j.contains("constant")) {
    const json& c = j["constant"];
    const Complex v = c.is_number() ? Complex(c.get<double>(), 0.0)
                                    : Complex(c.at(0).get<double>(), c.at(1).get<double>());
    const Index n = frames.t1.dim();
    for (Index i = 0; i < n; ++i) {
      for (Index k = 0; k < n; ++k) {
        if (frames.matched(i, k)) w[{i, k}] = v;
      }
    }
    return w;
  }
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) {
    throw Error(ErrorKind::kInvalidInput, "weights need 'constant' or 'pairs'");
  }
  for (const auto& p : j["pairs"]) {
    if (!p.is_array() || p.size() != 3) {
      throw Error(ErrorKind::kInvalidInput, "each pair is [i, j, [re, im]]");
    }
    w[{p[0].get<Index>(), p[1].get<Index>()}] =
        Complex(p[2].at(0).get<double>(), p[2].at(1).get<double>());
  }
  return w;
}

int cmd_intertwine(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t1 = s.matrix("t1", o.t1);
  const CMatrix t2 = s.matrix("t2", o.t2);
  require_dim(t2, t1.rows(), "t2");
  const HermitianForm h0 = s.form("h0", o.h0, t1.rows());
  if (!o.weights.empty()) {
    const IntertwinerFrames frames = intertwiner_frames(t1, t2, h0, s.cfg());
    const CMatrix a = intertwiner_scaled(frames, weights_from_json(s.raw("weights", o.weights), frames));
    const ARelation rel = are_A_related(t1, t2, a, s.cfg());
    r.matrices()["A"] = matrix_to_json(a);
    r.residuals()["T1A_minus_AT2"] = rel.residual;
    r.verdicts()["A_related"] = rel.related;
    r.verdicts()["trivial"] = rel.trivial;
    return kExitOk;
  }
  const IntertwineResult res = intertwiner(t1, t2, h0, s.cfg());
  r.matrices()["A0"] = matrix_to_json(res.F_matrix);
  r.matrices()["A1"] = matrix_to_json(res.A1);
  r.matrices()["A2"] = matrix_to_json(res.A2);
  r.verdicts()["nonzero"] = res.nonzero;
  r.values()["rank"] = res.rank;
  json common = json::array();
  for (const auto& z : res.common_eigenvalues) common.push_back(complex_to_json(z));
  r.values()["common_eigenvalues"] = common;
  for (const auto& [k, v] : res.relation_residuals) r.residuals()[k] = v;
  r.warn_all(res.warnings);
  return kExitOk;
}

int cmd_hamiltonian(const Options& o, Report& r) {
  Session s(o, r);
  if (o.oscillator) {
    const RMatrix a = oscillator_dynamics();
    const ClassicalFactorization f0 = oscillator_positive();
    const ClassicalFactorization f1 = oscillator_split();
    const auto s0 = f0.signature();
    const auto s1 = f1.signature();
    r.residuals()["positive_factorization"] = factorization_check(a, f0);
    r.residuals()["split_factorization"] = factorization_check(a, f1);
    r.values()["positive_signature"] = json::array({s0.first, s0.second});
    r.values()["split_signature"] = json::array({s1.first, s1.second});
    r.verdicts()["signatures_differ"] = s0 != s1;
    return kExitOk;
  }
  if (o.a.empty() || o.psi.empty()) {
    throw Error(ErrorKind::kInvalidInput, "hamiltonian needs --oscillator, or --a and --psi");
  }
  const CMatrix a = s.matrix("a", o.a);
  const HermitianForm form = s.form("h0", o.h0, a.rows());
  const CVector psi = s.vector("psi", o.psi);
  if (psi.size() != a.rows()) {
    throw Error(ErrorKind::kShapeMismatch, "psi dimension differs from A", "psi");
  }
  const QuadraticFunction fa(a, form, s.cfg().unitarity_tol);
  r.values()["f_A"] = fa(psi);
  if (!o.b.empty()) {
    const CMatrix b = s.matrix("b", o.b);
    require_dim(b, a.rows(), "b");
    const QuadraticFunction fb(b, form, s.cfg().unitarity_tol);
    const double bracket = poisson_bracket(fa, fb, psi);
    const double via_commutator = bracket_function(fa, fb)(psi);
    r.values()["bracket"] = bracket;
    r.values()["f_i_commutator"] = via_commutator;
    r.residuals()["bracket_vs_commutator"] = std::abs(bracket - via_commutator);
  }
  if (!o.h.empty()) {
    const CMatrix h = s.matrix("ham", o.h);
    require_dim(h, a.rows(), "ham");
    const QuadraticFunction fh(h, form, s.cfg().unitarity_tol);
    std::vector<double> times = o.times;
    if (times.empty()) times = {0.0, 0.5, 1.0, 2.0};
    r.values()["times"] = times;
    r.values()["ehrenfest_f_A"] = ehrenfest_flow(fh, fa, psi, times, s.cfg());
  }
  return kExitOk;
}

int cmd_example(const Options& o, Report& r) {
  Session s(o, r);
  if (o.spec.empty()) throw Error(ErrorKind::kInvalidInput, "example needs --spec");
  const GridOperatorSpec spec = grid_spec_from_json(s.raw("spec", o.spec));
  const GridOperator op = build(spec);
  const NagyResult n = nagy_metric(op.t, op.h0, s.cfg());
  r.values()["kind"] = std::string(to_string(spec.kind));
  add_nagy(r, n);
  r.residuals()["q_squared_vs_stated"] = q_squared_error(n, stated_q_squared(spec));
  r.residuals()["q_squared_vs_operator"] = q_squared_error(n, operator_q_squared(spec));
  const SpectrumReport sp = check_closed_form_spectrum(spec, n);
  if (sp.pair_error) r.residuals()["spectrum_pairs"] = *sp.pair_error;
  r.values()["covering_radius"] = sp.covering_radius;
  r.values()["covering_bound"] = sp.covering_bound;
  if (spec.kind == GridKind::kWeightedCyclicShift) {
    const CyclicShiftReport e = check_cyclic_shift_limit(spec, n);
    r.residuals()["orbit_mean_gram"] = e.gram_error;
    r.residuals()["u_weight_pattern"] = e.u_pattern_error;
  }
  return kExitOk;
}

int cmd_oracle(const Options& o, Report& r) {
  Session s(o, r);
  const CMatrix t = s.matrix("in", o.in);
  const HermitianForm h0 = s.form("h0", o.h0, t.rows());
  const CesaroResult c = cesaro_oracle(t, h0, s.cfg().cesaro_horizon, s.cfg());
  r.matrices()["G_cesaro"] = form_to_json(c.form);
  r.residuals()["cesaro_decade_change"] = c.residual;
  r.values()["horizon"] = c.horizon;
  r.verdicts()["converged"] = c.converged;
  try {
    const NagyResult n = nagy_metric(t, h0, s.cfg());
    r.residuals()["vs_spectral_projection"] =
        op_norm(c.form.gram() - n.invariant_form.gram()) / op_norm(n.invariant_form.gram());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotUniformlyBounded) throw;
    r.warn("closed form unavailable: T fails the Nagy criterion");
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant Hermitian metrics for power-bounded matrices", "unitarize"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tol-cluster", o.tol_cluster, "Eigenvalue clustering tolerance");
  app.add_option("--tol-unitary", o.tol_unitary, "Unitarity/invariance tolerance");
  app.add_option("--tol-psd", o.tol_psd, "Positive-definiteness tolerance");
  app.add_option("--horizon", o.horizon, "Cesaro horizon");

  using Handler = std::function<int(const Options&, Report&)>;
  std::map<std::string, Handler> handlers;
  auto sub = [&](const std::string& name, const std::string& desc, Handler h) {
    handlers[name] = std::move(h);
    return app.add_subcommand(name, desc);
  };

  auto* check = sub("check", "Nagy criterion verdict", cmd_check);
  check->add_option("--in", o.in, "Operator T (matrix JSON, - for stdin)");
  check->add_flag("--generator", o.generator, "Check H as a flow generator instead");
  check->add_flag("--resolvent", o.resolvent, "Add the resolvent growth estimate");
  check->add_option("--window", o.window, "Power-norm sampling window");

  auto* nagy = sub("nagy", "Invariant metric, Q and U", cmd_nagy);
  nagy->add_option("--in", o.in, "Operator T");
  nagy->add_option("--h0", o.h0, "Fiducial form (identity or file)");
  nagy->add_flag("--flow", o.flow, "Treat input as a flow generator X");

  auto* cay = sub("cayley", "Cayley transform", cmd_cayley);
  cay->add_option("--in", o.in, "H (or T with --inverse)");
  cay->add_flag("--inverse", o.inverse, "Inverse transform");

  auto* lg = sub("log", "Unitary logarithm", cmd_log);
  lg->add_option("--in", o.in, "Operator T");
  lg->add_option("--h0", o.h0, "Fiducial form");

  auto* alt = sub("altmetric", "Alternative invariant metrics", cmd_altmetric);
  alt->add_option("--in", o.in, "Operator T");
  alt->add_option("--h0", o.h0, "Fiducial form");
  alt->add_option("--spec", o.spec, "Scaling spec JSON");
  alt->add_option("--phi", o.phi, "phi JSON: cluster -> positive value");
  alt->add_flag("--commutant", o.commutant, "List the commutant basis");

  auto* dep = sub("depend", "Dependence on the fiducial metric", cmd_depend);
  dep->add_option("--in", o.in, "Operator T");
  dep->add_option("--h0", o.h0, "Fiducial form h0");
  dep->add_option("--h0-prime", o.h0_prime, "Second fiducial form h0'");
  dep->add_option("--pairing", o.pairing, "fiducial or invariant");

  auto* pr = sub("pair", "Commuting pair metric", cmd_pair);
  pr->add_option("--t1", o.t1, "T1")->required();
  pr->add_option("--t2", o.t2, "T2")->required();
  pr->add_option("--h0", o.h0, "Fiducial form");
  pr->add_flag("--shortcut", o.shortcut, "Test the multiplicity-free shortcut");

  auto* hb = sub("heisenberg", "Heisenberg triple metric", cmd_heisenberg);
  hb->add_option("--t1", o.t1, "T1");
  hb->add_option("--t2", o.t2, "T2");
  hb->add_option("--t3", o.t3, "T3 (central)");
  hb->add_option("--h0", o.h0, "Fiducial form");
  hb->add_option("--clock-shift", o.clock_shift, "Use the clock/shift triple of this size");

  auto* it = sub("intertwine", "Intertwining operators", cmd_intertwine);
  it->add_option("--t1", o.t1, "T1")->required();
  it->add_option("--t2", o.t2, "T2")->required();
  it->add_option("--h0", o.h0, "Fiducial form");
  it->add_option("--weights", o.weights, "Pair weights JSON");

  auto* ham = sub("hamiltonian", "Brackets, Ehrenfest flow, oscillator", cmd_hamiltonian);
  ham->add_option("--a", o.a, "Observable A");
  ham->add_option("--b", o.b, "Observable B");
  ham->add_option("--ham", o.h, "Hamiltonian H for the Ehrenfest flow");
  ham->add_option("--psi", o.psi, "State (vector JSON)");
  ham->add_option("--h0", o.h0, "Form");
  ham->add_option("--times", o.times, "Flow sample times")->delimiter(',');
  ham->add_flag("--oscillator", o.oscillator, "Check the oscillator factorizations");

  auto* ex = sub("example", "Grid example operators", cmd_example);
  ex->add_option("--spec", o.spec, "Grid spec JSON");

  auto* orc = sub("oracle", "Cesaro oracle", cmd_oracle);
  orc->add_option("--in", o.in, "Operator T");
  orc->add_option("--h0", o.h0, "Fiducial form");

  std::vector<const char*> argv{"unitarize"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const Format format = o.format == "text" ? Format::kText : Format::kJson;
  Report report(name);
  try {
    const int code = handlers.at(name)(o, report);
    out << report.render(format);
    return code;
  } catch (const Error& e) {
    if (negative_kind(e.kind())) {
      report.verdicts()["error"] = std::string(to_string(e.kind()));
      report.values()["message"] = e.what();
      if (!e.which().empty()) report.values()["which"] = e.which();
      out << report.render(format);
      return kExitNegative;
    }
    err << "unitarize " << name << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const json::exception& e) {
    err << "unitarize " << name << ": malformed input: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace unitarize::cli
