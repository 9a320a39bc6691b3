// Copyright 2026 The gramscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gramscope/batch.hpp"
#include "gramscope/estimator.hpp"
#include "gramscope/io.hpp"
#include "gramscope/theory.hpp"

namespace gramscope::cli {
namespace {

namespace fs = std::filesystem;

// Flag values that override the corresponding config fields when given.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::optional<int> max_iters;
  std::optional<double> tol;
  std::optional<double> tau;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> shots;

  void apply(TrialConfig& cfg) const {
    if (seed) cfg.seed = *seed;
    if (max_iters) cfg.solver.max_iters = *max_iters;
    if (tol) {
      cfg.solver.primal_tol = *tol;
      cfg.solver.dual_tol = *tol;
    }
    if (tau) cfg.tau = *tau;
    if (epsilon) cfg.epsilon = *epsilon;
    if (shots) cfg.shots = *shots;
  }
  void apply(SolverOptions& opts) const {
    if (max_iters) opts.max_iters = *max_iters;
    if (tol) {
      opts.primal_tol = *tol;
      opts.dual_tol = *tol;
    }
  }
};

void add_overrides(CLI::App* cmd, Overrides& o, bool with_jobs) {
  cmd->add_option("--seed", o.seed, "Random seed (master seed for batch)");
  if (with_jobs) cmd->add_option("--jobs", o.jobs, "Parallel trials")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", o.max_iters, "Solver iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.tol, "Primal and dual residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tau", o.tau, "Rank certificate threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", o.epsilon, "Data-block interval half-width")->check(CLI::NonNegativeNumber);
  cmd->add_option("--shots", o.shots, "Shots per state/measurement pair")->check(CLI::PositiveNumber);
}

void validate_or_config_error(const TrialConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

// ---- synth ---------------------------------------------------------------

struct SynthArgs {
  std::string config;
  std::string out;
  Overrides overrides;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  TrialConfig cfg = trial_config_from_json(read_json_file(a.config));
  a.overrides.apply(cfg);
  validate_or_config_error(cfg);

  Rng rng(cfg.seed);
  const Ensemble ens = sample_ensemble(cfg.ensemble_spec(), rng);
  const DataTable table =
      cfg.shots ? finite_shot_table(ens, *cfg.shots, rng) : born_table(ens);
  table.validate();

  const fs::path dir(a.out);
  write_json_file(dir / "ensemble.json", to_json(ens));
  write_json_file(dir / "table.json", to_json(table));
  write_text_file(dir / "table.csv", table_to_csv(table));
  const GramMatrix g = gram(realize(ens, HermBasis(cfg.dim)));
  write_json_file(dir / "gram.json", to_json(g));
  write_text_file(dir / "gram.csv", matrix_to_csv(g.values));
  if (cfg.measurement_kind == MeasurementKind::kProjective) {
    std::vector<std::vector<int>> deg;
    if (!cfg.degeneracies.empty()) deg.push_back(cfg.degeneracies);
    write_json_file(dir / "knowledge.json",
                    to_json(knowledge_relax(
                        knowledge_projective(table, cfg.dim, deg), cfg.epsilon,
                        RelaxScope::kDataBlock)));
  }
  out << "synth: d=" << cfg.dim << " W=" << table.states
      << " V=" << table.measurements << " K=" << table.outcomes
      << " shots=" << (table.shots ? std::to_string(*table.shots) : "inf")
      << " -> " << dir.string() << "\n";
  return kOk;
}

// ---- estimate ------------------------------------------------------------

struct EstimateArgs {
  std::string config;
  std::string data;
  std::string knowledge;
  std::string out;
  int dim = 0;
  std::vector<int> degeneracies;
  double radius = 0.0;
  int rank = -1;
  bool dump = false;
  Overrides overrides;
};

void print_estimate(const GramEstimate& est, std::ostream& out) {
  out << "certified=" << (est.certified ? "true" : "false")
      << " target_rank=" << est.target_rank
      << " rank_tail=" << format_double(est.rank_tail)
      << " augmentations=" << est.augmentations
      << " iterations=" << est.total_iterations
      << " converged=" << (est.report.converged ? "true" : "false") << "\n";
}

void write_estimate(const GramEstimate& est, const fs::path& dir) {
  write_json_file(dir / "estimate.json", to_json(est));
  write_text_file(dir / "ghat.csv", matrix_to_csv(est.g_hat.values));
}

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  const int sources = !a.config.empty() + !a.data.empty() + !a.knowledge.empty();
  if (sources != 1) {
    throw ConfigError(
        "estimate: give exactly one of --config, --data, --knowledge");
  }
  const fs::path dir(a.out);

  if (!a.config.empty()) {
    TrialConfig cfg = trial_config_from_json(read_json_file(a.config));
    a.overrides.apply(cfg);
    validate_or_config_error(cfg);
    const TrialOutcome result = estimate(cfg);
    const Metrics m = evaluate(result.estimate, result.truth,
                               HermBasis(cfg.dim), cfg.failure_threshold);
    write_estimate(result.estimate, dir);
    write_json_file(dir / "metrics.json", to_json(m));
    json rounds = json::array();
    for (const Round& r : result.rounds) rounds.push_back(to_json(r));
    write_json_file(dir / "rounds.json", rounds);
    if (a.dump) {
      write_json_file(dir / "truth.json", to_json(result.truth));
      write_json_file(dir / "table.json", to_json(result.data));
      write_json_file(dir / "knowledge.json", to_json(result.knowledge));
    }
    print_estimate(result.estimate, out);
    out << "max_entry_error=" << format_double(m.max_entry_error)
        << " success=" << (m.success ? "true" : "false") << "\n";
    return kOk;
  }

  SolverOptions opts;
  a.overrides.apply(opts);
  const double tau = a.overrides.tau.value_or(1e-4);

  if (!a.data.empty()) {
    if (a.dim < 1) throw ConfigError("estimate --data needs --dim");
    const std::string text = read_text_file(a.data);
    const DataTable table = fs::path(a.data).extension() == ".csv"
                                ? table_from_csv(text, a.overrides.shots)
                                : table_from_json(parse_json(text, a.data));
    std::vector<std::vector<int>> deg;
    if (!a.degeneracies.empty()) deg.push_back(a.degeneracies);
    GramEstimate est;
    try {
      est = estimate_from_data(table, a.dim, deg, tau,
                               a.overrides.epsilon.value_or(0.0), opts);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    write_estimate(est, dir);
    print_estimate(est, out);
    return kOk;
  }

  const Knowledge kn = knowledge_from_json(read_json_file(a.knowledge));
  if (!(a.radius > 0.0)) throw ConfigError("estimate --knowledge needs --radius");
  if (a.rank < 0) throw ConfigError("estimate --knowledge needs --rank");
  GramEstimate est;
  try {
    est = estimate_from_knowledge(kn, a.radius, a.rank, tau, opts);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_estimate(est, dir);
  print_estimate(est, out);
  return kOk;
}

// ---- batch ---------------------------------------------------------------

struct BatchArgs {
  std::string config;
  std::string out;
  Overrides overrides;
};

int cmd_batch(const BatchArgs& a, std::ostream& out) {
  BatchSpec spec = batch_spec_from_json(read_json_file(a.config));
  if (a.overrides.jobs) spec.jobs = *a.overrides.jobs;
  if (a.overrides.seed) spec.master_seed = *a.overrides.seed;
  for (auto& t : spec.templates) {
    Overrides per_trial = a.overrides;
    per_trial.seed.reset();  // per-trial seeds come from the master seed
    per_trial.apply(t.config);
    validate_or_config_error(t.config);
  }
  if (!a.out.empty()) spec.output_dir = a.out;
  if (spec.output_dir.empty()) {
    throw ConfigError("batch: no output directory (--out or output_dir)");
  }

  const BatchResult result = run_batch(spec);
  write_batch_outputs(result, spec.output_dir);
  for (const auto& s : result.report.templates) {
    out << s.name << ": d=" << s.dim << " start=(" << s.start_states << ","
        << s.start_measurements << ") trials=" << s.trials
        << " successes=" << s.successes << " failures=" << s.failures
        << " uncertified=" << s.uncertified << " errors=" << s.errors
        << " zero_aug=" << s.zero_augmentation << "\n";
  }
  return kOk;
}

// ---- check-theory --------------------------------------------------------

struct TheoryArgs {
  int n = 3;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_check_theory(const TheoryArgs& a, std::ostream& out,
                     std::ostream& err) {
  if (a.n < 1 || a.n > 6) throw ConfigError("check-theory: --n must be 1..6");
  if (a.trials < 1) throw ConfigError("check-theory: --trials must be >= 1");
  const TheoryReport report = check_theory(a.n, a.trials, a.seed);

  json j = json::array();
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " cases=" << c.cases
        << " violations=" << c.violations
        << " equality_cases=" << c.equality_cases
        << " worst=" << format_double(c.worst) << "\n";
    j.push_back({{"name", c.name},
                 {"passed", c.passed},
                 {"cases", c.cases},
                 {"violations", c.violations},
                 {"equality_cases", c.equality_cases},
                 {"worst", c.worst},
                 {"counterexample", c.counterexample}});
  }
  if (!a.out.empty()) write_json_file(a.out, j);
  for (const auto& c : report.checks) {
    if (!c.passed) {
      err << "check '" << c.name << "' failed; first counterexample:\n"
          << c.counterexample << "\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"gramscope: Gram-matrix estimation of states and measurements"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Sample an ensemble and its data table");
  synth_cmd->add_option("--config", synth.config, "Trial/ensemble config JSON")->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  add_overrides(synth_cmd, synth.overrides, false);

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Estimate the Gram matrix");
  est_cmd->add_option("--config", est.config, "Synthetic trial config JSON");
  est_cmd->add_option("--data", est.data, "Data table (.json or .csv)");
  est_cmd->add_option("--knowledge", est.knowledge, "Knowledge JSON");
  est_cmd->add_option("--out", est.out, "Output directory")->required();
  est_cmd->add_option("--dim", est.dim, "Hilbert space dimension (with --data)");
  est_cmd->add_option("--degeneracies", est.degeneracies, "Projector ranks (with --data)")->delimiter(',');
  est_cmd->add_option("--radius", est.radius, "Operator-norm radius (with --knowledge)");
  est_cmd->add_option("--rank", est.rank, "Target rank (with --knowledge)");
  est_cmd->add_flag("--dump", est.dump, "Also write truth, data and knowledge");
  add_overrides(est_cmd, est.overrides, false);

  BatchArgs batch;
  auto* batch_cmd = app.add_subcommand("batch", "Run a batch of trials");
  batch_cmd->add_option("--config", batch.config, "Batch spec JSON")->required();
  batch_cmd->add_option("--out", batch.out, "Output directory");
  add_overrides(batch_cmd, batch.overrides, true);

  TheoryArgs theory;
  auto* theory_cmd = app.add_subcommand("check-theory", "Run the analytic self-checks");
  theory_cmd->add_option("--n", theory.n, "Dimension / matrix size (1..6)");
  theory_cmd->add_option("--trials", theory.trials, "Random cases per check");
  theory_cmd->add_option("--seed", theory.seed, "Random seed");
  theory_cmd->add_option("--out", theory.out, "Optional JSON report path");

  std::vector<const char*> argv{"gramscope"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*synth_cmd) return cmd_synth(synth, out);
    if (*est_cmd) return cmd_estimate(est, out);
    if (*batch_cmd) return cmd_batch(batch, out);
    if (*theory_cmd) return cmd_check_theory(theory, out, err);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace gramscope::cli
