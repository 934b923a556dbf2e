// Copyright 2026 The tnsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tnsprep: thin command-line adapter over the library. Exit codes: 0 on
// success, 1 on domain errors, 2 on usage errors; --replay returns 3 when an
// output digest differs from the manifest.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tnsprep/exact_oracle.hpp"
#include "tnsprep/model_io.hpp"
#include "tnsprep/verify_protocol.hpp"

namespace {

using namespace tnsprep;
using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Collects inputs and outputs of one run for its manifest.
struct Run {
  std::vector<std::string> argv;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs, outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string input(const std::string& path) {
    std::string bytes = read_file(path);
    inputs.emplace_back(path, digest(bytes));
    return bytes;
  }

  // Writes `bytes` to `path` (atomically) or stdout when path is empty.
  void emit(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
      std::cout << bytes;
      return;
    }
    write_atomic(path, bytes);
    outputs.emplace_back(path, digest(bytes));
  }

  // One copy next to every output; nothing for stdout-only runs.
  void finish() {
    if (outputs.empty()) return;
    RunManifest m;
    m.argv = argv;
    m.config = config.dump();
    m.seed = seed;
    m.version = version();
    m.inputs = inputs;
    m.outputs = outputs;
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = m.to_json();
    for (const auto& [path, d] : outputs) write_atomic(path + ".manifest.json", text);
  }
};

int default_workers() {
  if (const char* env = std::getenv("TNSPREP_WORKERS")) {
    try {
      int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    throw UsageError("TNSPREP_WORKERS must be a positive integer");
  }
  return 1;
}

Region parse_region(const std::string& text) {
  std::vector<Vertex> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad vertex list '" + text + "'");
    }
  }
  if (v.empty()) throw UsageError("empty vertex list");
  return Region(v);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

// Model file plus optional beta / t overrides.
struct ModelArgs {
  std::string path;
  double beta = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();

  void add(CLI::App* app, bool required = true) {
    auto* o = app->add_option("--model", path, "Model-spec file");
    if (required) o->required();
    app->add_option("--beta", beta, "Override beta");
    app->add_option("--t", t, "Override t");
  }
  ModelSpec load(Run& run) const {
    ModelSpec m = parse_model(run.input(path));
    if (!std::isnan(beta)) m.beta = beta;
    if (!std::isnan(t)) m.t = t;
    run.config["beta"] = m.beta;
    run.config["t"] = m.t;
    return m;
  }
};

CertifierMode mode_of(const std::string& text, bool projectorized) {
  try {
    return CertifierMode::parse(text, projectorized);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int dispatch(const std::vector<std::string>& args);

int run_replay(const std::string& manifest_path) {
  RunManifest m = RunManifest::from_json(read_file(manifest_path));
  std::vector<std::string> argv(m.argv.begin() + (m.argv.empty() ? 0 : 1), m.argv.end());
  // Recorded outputs are compared after the run overwrote them. Exit code 1
  // is a legitimate result (REJECT, no certificate) and is replayed too.
  int code = dispatch(argv);
  if (code == 2) return code;
  bool same = true;
  for (const auto& [path, want] : m.outputs) {
    std::string got = digest(read_file(path));
    std::cerr << path << ": " << (got == want ? "identical" : "DIFFERS") << " (" << got << ")\n";
    same = same && got == want;
  }
  return same ? code : 3;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"tnsprep: tensor-network state preparation and verification"};
  app.require_subcommand(0, 1);
  Run run;
  run.argv.push_back("tnsprep");
  run.argv.insert(run.argv.end(), args.begin(), args.end());

  int workers = 0;
  std::uint64_t seed = 1;
  std::string out, replay;
  app.add_option("--workers", workers, "Worker threads (default $TNSPREP_WORKERS or 1)");
  app.add_option("--replay", replay, "Re-run a manifest and compare output digests");

  auto* model = app.add_subcommand("model", "Build or validate model-spec files");
  model->require_subcommand(1);
  std::string fixture, validate_path;
  double fx_beta = 0.0;
  auto* model_build = model->add_subcommand("build", "Emit a fixture as a model-spec file");
  model_build->add_option("--fixture", fixture, "Fixture name, e.g. FX-CHAIN4")->required();
  model_build->add_option("--beta", fx_beta, "Inverse temperature");
  model_build->add_option("--out", out, "Output file");
  auto* model_validate = model->add_subcommand("validate", "Check every model invariant");
  model_validate->add_option("file", validate_path, "Model-spec file")->required();

  auto* state = app.add_subcommand("state", "Construct target states");
  state->require_subcommand(1);
  ModelArgs sm;
  std::string format = "text";
  double total_time = 10.0;
  int grid = 0;
  auto* state_build = state->add_subcommand("build", "Dense amplitudes of the target state");
  sm.add(state_build);
  state_build->add_option("--format", format, "text or binary")->check(CLI::IsMember({"text", "binary"}));
  state_build->add_option("--out", out, "Output file");
  auto* state_check = state->add_subcommand("check-annihilation", "max_j |<Psi|h_j|Psi>|");
  sm.add(state_check);
  auto* state_adia = state->add_subcommand("adiabatic", "Adiabatic path from beta = 0");
  sm.add(state_adia);
  state_adia->add_option("--T", total_time, "Total evolution time")->required();
  state_adia->add_option("--grid", grid, "Initial step count (0 picks one)");
  state_adia->add_option("--format", format, "text or binary")->check(CLI::IsMember({"text", "binary"}));
  state_adia->add_option("--out", out, "Final state file");

  auto* gap = app.add_subcommand("gap", "Gap certificates");
  gap->require_subcommand(1);
  ModelArgs gm;
  std::string mode = "overlapping-only";
  bool projectorized = false;
  double beta_target = 0.0, floor = 0.0;
  auto* gap_certify = gap->add_subcommand("certify", "Point certificate at beta");
  gm.add(gap_certify);
  gap_certify->add_option("--mode", mode, "overlapping-only, all-pairs or blocked:k");
  gap_certify->add_flag("--projectorized", projectorized, "Replace h_j by range projectors");
  gap_certify->add_option("--out", out, "Certificate file");
  auto* gap_interval = gap->add_subcommand("interval", "Certificate over [beta, beta-target]");
  gm.add(gap_interval);
  gap_interval->add_option("--beta-target", beta_target, "Right end of the interval")->required();
  gap_interval->add_option("--floor", floor, "Gap floor")->required();
  gap_interval->add_option("--mode", mode, "overlapping-only or all-pairs");
  gap_interval->add_option("--out", out, "Certificate file");
  auto* gap_prescan = gap->add_subcommand("prescan", "Pairwise a_ij + a_ji minima");
  gm.add(gap_prescan);

  auto* obs = app.add_subcommand("obs", "Observables with known expectations");
  obs->require_subcommand(1);
  ModelArgs om;
  std::string lambda, kind = "zplus", pstring;
  int site = -1, gram_n = 3;
  auto* obs_gen = obs->add_subcommand("gen", "Emit one observable and its Pauli expansion");
  om.add(obs_gen);
  obs_gen->add_option("--lambda", lambda, "Comma-separated region");
  obs_gen->add_option("--kind", kind, "zplus, zminus, q, qj1, qj2 or qj3")
      ->check(CLI::IsMember({"zplus", "zminus", "q", "qj1", "qj2", "qj3"}));
  obs_gen->add_option("--P", pstring, "Pauli letters over lambda (q) or over --P-sites (qj)");
  std::string p_sites;
  obs_gen->add_option("--P-sites", p_sites, "Support of P' for the qj kinds");
  obs_gen->add_option("--site", site, "Site j for the qj kinds");
  obs_gen->add_option("--out", out, "Output file");
  auto* obs_gram = obs->add_subcommand("gram", "Completeness Gram matrix");
  ModelArgs gram_model;
  gram_model.add(obs_gram, false);
  obs_gram->add_option("--n", gram_n, "Qubits of FX-GIBBS-PATH-Z(n) when no model is given");

  auto* verify = app.add_subcommand("verify", "Verification game");
  verify->require_subcommand(1);
  ModelArgs vm;
  std::string prover = "honest", transcript_out;
  double epsilon = 0.1, alpha = 0.05, delta = 0.0;
  std::string rounds = "variance";
  auto* verify_run = verify->add_subcommand("run", "Sample a prover and decide");
  vm.add(verify_run);
  verify_run->add_option("--prover", prover, "honest, depolarized:p, marginal or signalling");
  verify_run->add_option("--epsilon", epsilon, "Target infidelity");
  verify_run->add_option("--alpha", alpha, "Confidence parameter");
  verify_run->add_option("--seed", seed, "Master seed");
  verify_run->add_option("--delta", delta, "Gap lower bound (default: certify overlapping-only)");
  verify_run->add_option("--rounds", rounds,
                         "Rounds per term: a number, 'plan' (confidence bound) or 'variance' "
                         "(exact single-round variances of the honest state)");
  verify_run->add_option("--transcript", transcript_out, "Transcript file");
  verify_run->add_option("--out", out, "Report file");

  auto* oracle = app.add_subcommand("oracle", "Exact diagonalization");
  oracle->require_subcommand(1);
  ModelArgs xm;
  int k = 4;
  std::string sweep;
  auto* oracle_spectrum = oracle->add_subcommand("spectrum", "Lowest eigenvalues, or a beta sweep");
  xm.add(oracle_spectrum);
  oracle_spectrum->add_option("--k", k, "Number of eigenvalues");
  oracle_spectrum->add_option("--sweep", sweep, "b0:b1:step, writes CSV (beta, E0, gap, delta_sdp)");
  oracle_spectrum->add_option("--out", out, "Output file");

  try {
    app.parse(static_cast<int>(run.argv.size()), [&] {
      static std::vector<const char*> ptrs;
      ptrs.clear();
      for (const auto& s : run.argv) ptrs.push_back(s.c_str());
      return ptrs.data();
    }());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!replay.empty()) return run_replay(replay);
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  if (workers == 0) workers = default_workers();
  if (workers < 1) throw UsageError("--workers must be positive");
  run.seed = seed;

  if (model_build->parsed()) {
    ModelSpec m = fixtures::by_name(fixture, fx_beta);
    run.config = {{"fixture", fixture}, {"beta", fx_beta}};
    run.emit(out, dump_model(m));
  } else if (model_validate->parsed()) {
    ModelSpec m = parse_model(run.input(validate_path));
    ModelReport r = validate_model(m);
    std::cout << r.describe();
    if (!r.accepted()) return 1;
  } else if (state_build->parsed()) {
    ModelSpec m = sm.load(run);
    StateVector psi = build_state(m);
    run.config["format"] = format;
    run.emit(out, format == "binary" ? dump_state_binary(psi) : dump_state_text(psi));
  } else if (state_check->parsed()) {
    ModelSpec m = sm.load(run);
    ParentHamiltonian ph = build_parent_hamiltonian(m);
    StateVector psi = build_state(m);
    double worst = 0.0;
    for (const auto& t : ph.terms) {
      double e = exact_expectation(psi, t.h);
      worst = std::max(worst, std::abs(e));
      std::cout << "h[" << t.site << "] " << fmt(e) << "\n";
    }
    std::cout << "max |<Psi|h_j|Psi>| = " << fmt(worst) << "\n";
    if (worst > 1e-9) return 1;
  } else if (state_adia->parsed()) {
    ModelSpec m = sm.load(run);
    AdiabaticSchedule s;
    s.total_time = total_time;
    s.target_beta = m.beta;
    s.initial_steps = grid;
    run.config["T"] = total_time;
    run.config["grid"] = grid;
    AdiabaticResult r = adiabatic_evolve(m, s);
    std::cerr << "fidelity " << fmt(r.fidelity) << "  steps " << r.steps << "  norm drift "
              << fmt(r.norm_drift) << "  richardson " << fmt(r.richardson_difference) << "\n";
    if (!out.empty())
      run.emit(out, format == "binary" ? dump_state_binary(r.final_state) : dump_state_text(r.final_state));
    else
      std::cout << "fidelity " << fmt(r.fidelity) << "\n";
  } else if (gap_certify->parsed()) {
    ModelSpec m = gm.load(run);
    CertifierMode cm = mode_of(mode, projectorized);
    run.config["mode"] = cm.name();
    GapCertificate c = certify_point(m, cm);
    run.emit(out, dump_certificate(c, {}));
    std::cerr << (c.issued ? "certified delta = " + fmt(c.delta) : "no certificate: " + c.failure) << "\n";
    if (!c.issued) return 1;
  } else if (gap_interval->parsed()) {
    ModelSpec m = gm.load(run);
    CertifierMode cm = mode_of(mode, false);
    run.config["mode"] = cm.name();
    run.config["beta_target"] = beta_target;
    run.config["floor"] = floor;
    IntervalCertificate ic = certify_interval(m, beta_target, floor, cm);
    run.emit(out, dump_interval(ic, {}));
    std::cerr << (ic.covered ? "covered, delta_min = " + fmt(ic.delta_min)
                             : "not covered: " + ic.stop_reason)
              << "\n";
    if (!ic.covered) return 1;
  } else if (gap_prescan->parsed()) {
    ModelSpec m = gm.load(run);
    PrescanResult r = pairwise_prescan(build_parent_hamiltonian(m));
    for (std::size_t p = 0; p < r.pairs.size(); ++p)
      std::cout << r.pairs[p].first << "," << r.pairs[p].second << " a_ij " << fmt(r.a_ij[p])
                << " a_ji " << fmt(r.a_ji[p]) << " min " << fmt(r.min_sum[p]) << "\n";
    std::cout << "gap plausible: " << (r.gap_plausible ? "yes" : "no") << "\n";
  } else if (obs_gen->parsed()) {
    ModelSpec m = om.load(run);
    // Non-|0> product states go through the rotated frame and back.
    ZeroFrame frame = zero_frame(m);
    const ModelSpec& z = frame.rotated;
    ObservableSpec s;
    run.config["kind"] = kind;
    if (kind == "zplus" || kind == "zminus" || kind == "q") {
      if (lambda.empty()) throw UsageError("--lambda is required for " + kind);
      Region lam = parse_region(lambda);
      run.config["lambda"] = lambda;
      if (kind == "q") {
        if (pstring.size() != lam.size()) throw UsageError("--P needs one letter per site of lambda");
        s = build_Q_lambda(z, lam, pauli_operator(lam, pstring));
      } else {
        auto pm = build_Z_pm(z, lam);
        s = kind == "zplus" ? pm.first : pm.second;
      }
    } else {
      if (site < 0 || p_sites.empty() || pstring.empty())
        throw UsageError("--site, --P-sites and --P are required for " + kind);
      Region ps = parse_region(p_sites);
      if (pstring.size() != ps.size()) throw UsageError("--P needs one letter per site of --P-sites");
      s = build_Q_j(z, site, pauli_operator(ps, pstring), kind.back() - '0');
    }
    run.emit(out, dump_observable(m.all_zero_product() ? s : to_model_frame(s, frame)));
  } else if (obs_gram->parsed()) {
    ModelSpec m = gram_model.path.empty() ? fixtures::gibbs_path_zero(gram_n) : gram_model.load(run);
    if (gram_model.path.empty() && !std::isnan(gram_model.beta)) m.beta = gram_model.beta;
    GramReport g = completeness_gram(m, 4, workers);
    std::cout << "dimension " << g.dimension << "\nsigma_min " << fmt(g.sigma_min) << "\nsigma_max "
              << fmt(g.sigma_max) << "\ncondition " << fmt(g.condition) << "\nnonsingular "
              << (g.nonsingular ? "yes" : "no") << "\n";
    if (!g.nonsingular) return 1;
  } else if (verify_run->parsed()) {
    ModelSpec m = vm.load(run);
    ParentHamiltonian ph = build_parent_hamiltonian(m);
    if (delta <= 0.0) {
      GapCertificate c = certify_point(m, CertifierMode::parse("overlapping-only"));
      if (!c.issued) throw DomainError("no gap certificate for this model: " + c.failure);
      delta = c.delta;
    }
    int locality = 0;
    for (const auto& t : ph.terms) locality = std::max(locality, t.h.qubits());
    VerificationConfig cfg;
    cfg.plan = plan_samples(locality, delta, epsilon, alpha, m.n());
    cfg.delta = delta;
    cfg.seed = seed;
    cfg.workers = workers;
    StateVector psi = build_state(m);
    if (rounds == "plan") {
      cfg.rounds_per_term = cfg.plan.per_term;
    } else if (rounds == "variance") {
      cfg.rounds_per_term = variance_sized_rounds(psi, ph.operators(), delta, epsilon, alpha);
    } else {
      try {
        cfg.rounds_per_term = std::stoul(rounds);
      } catch (const std::exception&) {
        throw UsageError("--rounds must be a number, plan or variance");
      }
    }
    run.config.update({{"prover", prover}, {"epsilon", epsilon}, {"alpha", alpha}, {"delta", delta},
                       {"rounds_per_term", cfg.rounds_per_term}, {"plan_per_term", cfg.plan.per_term}});
    VerificationReport r = run_verification(ph, psi, ProverSpec::parse(prover), cfg);
    if (!transcript_out.empty()) run.emit(transcript_out, transcript(r.samples));
    run.emit(out, r.summary());
    if (!r.accept) {
      run.finish();
      return 1;
    }
  } else if (oracle_spectrum->parsed()) {
    ModelSpec m = xm.load(run);
    if (sweep.empty()) {
      SpectrumReport r = spectrum(build_parent_hamiltonian(m), k);
      std::ostringstream os;
      for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) os << "E" << i << " " << fmt(r.eigenvalues[i]) << "\n";
      os << "gap " << fmt(r.gap) << "\nground_degeneracy " << r.ground_degeneracy << "\n";
      run.emit(out, os.str());
    } else {
      double b0, b1, step;
      char c1, c2;
      std::istringstream ss(sweep);
      if (!(ss >> b0 >> c1 >> b1 >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || b1 < b0)
        throw UsageError("--sweep must be b0:b1:step with step > 0");
      run.config["sweep"] = sweep;
      std::string run_id;
      for (const auto& a : run.argv) run_id += a + "\n";
      for (const auto& [p, d] : run.inputs) run_id += d;
      std::ostringstream os;
      os << "# tnsprep oracle sweep, run " << digest(run_id) << "\n";
      os << "beta,E0,gap,delta_sdp\n";
      const int count = static_cast<int>(std::floor((b1 - b0) / step + 1e-9)) + 1;
      for (int i = 0; i < count; ++i) {
        ModelSpec mb = m.with_beta(b0 + i * step);
        SpectrumReport r = spectrum(build_parent_hamiltonian(mb), 2);
        GapCertificate c = certify_point(mb, CertifierMode::parse("overlapping-only"));
        os << fmt(mb.beta) << "," << fmt(r.eigenvalues[0]) << "," << fmt(r.gap) << ","
           << (c.issued ? fmt(c.delta) : "nan") << "\n";
      }
      run.emit(out, os.str());
    }
  }
  run.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return dispatch(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
