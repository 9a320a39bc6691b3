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

#include "gramscope/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <system_error>
#include <vector>

namespace gramscope {
namespace {

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) {
    throw ConfigError(std::string(what) + ": expected a JSON object");
  }
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                std::string_view what) {
  require_object(j, what);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) {
      throw ConfigError(std::string(what) + ": unknown field '" + key + "'");
    }
  }
}

template <typename T>
T field(const json& j, std::string_view key, std::string_view what) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) {
    throw ConfigError(std::string(what) + ": missing field '" +
                      std::string(key) + "'");
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": bad field '" + std::string(key) +
                      "': " + e.what());
  }
}

template <typename T>
void optional_field(const json& j, std::string_view key, std::string_view what,
                    T& out) {
  if (j.contains(std::string(key))) out = field<T>(j, key, what);
}

json optional_u64(const std::optional<std::uint64_t>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::uint64_t> u64_or_null(const json& j, std::string_view key,
                                         std::string_view what) {
  const auto it = j.find(std::string(key));
  if (it == j.end() || it->is_null()) return std::nullopt;
  return field<std::uint64_t>(j, key, what);
}

const char* to_string(StateKind k) {
  return k == StateKind::kPure ? "pure" : "mixed";
}
const char* to_string(MeasurementKind k) {
  return k == MeasurementKind::kProjective ? "projective" : "povm";
}
const char* to_string(KnowledgeMode k) {
  return k == KnowledgeMode::kProjective ? "projective" : "data_only";
}
const char* to_string(AugmentFirst k) {
  return k == AugmentFirst::kState ? "state" : "measurement";
}

template <typename Enum>
Enum parse_enum(const std::string& s,
                std::initializer_list<std::pair<const char*, Enum>> options,
                std::string_view what) {
  for (const auto& [name, value] : options) {
    if (s == name) return value;
  }
  throw ConfigError(std::string(what) + ": unknown value '" + s + "'");
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": cannot parse number '" +
                      std::string(s) + "'");
  }
  return value;
}

long long parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": cannot parse integer '" +
                      std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("matrix: expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw ConfigError("matrix: non-numeric entry");
      m(i, c) = x.get<double>();
    }
  }
  return m;
}

json complex_matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("complex matrix: expected rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("complex matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() ||
          !z[1].is_number()) {
        throw ConfigError("complex matrix: entries must be [re, im]");
      }
      m(i, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json to_json(const Ensemble& ens) {
  json states = json::array();
  for (const auto& rho : ens.states) states.push_back(complex_matrix_to_json(rho));
  json povms = json::array();
  for (const auto& povm : ens.povms) {
    json effects = json::array();
    for (const auto& e : povm) effects.push_back(complex_matrix_to_json(e));
    povms.push_back(std::move(effects));
  }
  return {{"dim", ens.dim}, {"states", std::move(states)},
          {"povms", std::move(povms)}};
}

Ensemble ensemble_from_json(const json& j) {
  constexpr std::string_view what = "ensemble";
  check_keys(j, {"dim", "states", "povms"}, what);
  Ensemble ens;
  ens.dim = field<int>(j, "dim", what);
  for (const json& s : field<json>(j, "states", what)) {
    ens.states.push_back(complex_matrix_from_json(s));
  }
  for (const json& p : field<json>(j, "povms", what)) {
    std::vector<ComplexMatrix> effects;
    for (const json& e : p) effects.push_back(complex_matrix_from_json(e));
    ens.povms.push_back(std::move(effects));
  }
  try {
    ens.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return ens;
}

json to_json(const DataTable& table) {
  return {{"states", table.states},
          {"measurements", table.measurements},
          {"outcomes", table.outcomes},
          {"shots", optional_u64(table.shots)},
          {"values", matrix_to_json(table.values)}};
}

DataTable table_from_json(const json& j) {
  constexpr std::string_view what = "data table";
  check_keys(j, {"states", "measurements", "outcomes", "shots", "values"},
             what);
  DataTable table;
  table.states = field<int>(j, "states", what);
  table.measurements = field<int>(j, "measurements", what);
  table.outcomes = field<int>(j, "outcomes", what);
  table.shots = u64_or_null(j, "shots", what);
  table.values = matrix_from_json(field<json>(j, "values", what));
  if (table.states == 0) {
    table.values.resize(0, table.measurements * table.outcomes);
  }
  try {
    table.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return table;
}

json to_json(const Knowledge& kn) {
  json constraints = json::array();
  for (const Constraint& c : kn.constraints()) {
    if (c.kind == ConstraintKind::kExact) {
      constraints.push_back(
          {{"i", c.i}, {"j", c.j}, {"kind", "exact"}, {"value", c.lo}});
    } else {
      constraints.push_back({{"i", c.i},
                             {"j", c.j},
                             {"kind", "interval"},
                             {"lo", c.lo},
                             {"hi", c.hi}});
    }
  }
  return {{"n", kn.size()},
          {"data_rows", kn.data_rows()},
          {"constraints", std::move(constraints)}};
}

Knowledge knowledge_from_json(const json& j) {
  constexpr std::string_view what = "knowledge";
  check_keys(j, {"n", "data_rows", "constraints"}, what);
  int data_rows = 0;
  optional_field(j, "data_rows", what, data_rows);
  try {
    Knowledge kn(field<int>(j, "n", what), data_rows);
    for (const json& c : field<json>(j, "constraints", what)) {
      constexpr std::string_view cwhat = "knowledge constraint";
      const auto kind = field<std::string>(c, "kind", cwhat);
      const int i = field<int>(c, "i", cwhat);
      const int jj = field<int>(c, "j", cwhat);
      if (kind == "exact") {
        check_keys(c, {"i", "j", "kind", "value"}, cwhat);
        kn.add_exact(i, jj, field<double>(c, "value", cwhat));
      } else if (kind == "interval") {
        check_keys(c, {"i", "j", "kind", "lo", "hi"}, cwhat);
        kn.add_interval(i, jj, field<double>(c, "lo", cwhat),
                        field<double>(c, "hi", cwhat));
      } else {
        throw ConfigError("knowledge constraint: unknown kind '" + kind + "'");
      }
    }
    return kn;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const GramMatrix& g) {
  return {{"n", g.size()},
          {"states", g.states},
          {"effects", g.effects},
          {"values", matrix_to_json(g.values)}};
}

GramMatrix gram_from_json(const json& j) {
  constexpr std::string_view what = "gram matrix";
  check_keys(j, {"n", "states", "effects", "values"}, what);
  GramMatrix g;
  g.states = field<int>(j, "states", what);
  g.effects = field<int>(j, "effects", what);
  g.values = matrix_from_json(field<json>(j, "values", what));
  const int n = field<int>(j, "n", what);
  if (g.values.rows() != n || g.values.cols() != n) {
    throw ConfigError("gram matrix: values are not n x n");
  }
  return g;
}

json to_json(const SolverOptions& opts) {
  return {{"max_iters", opts.max_iters},
          {"rho", opts.rho},
          {"alpha", opts.alpha},
          {"primal_tol", opts.primal_tol},
          {"dual_tol", opts.dual_tol},
          {"adaptive_rho", opts.adaptive_rho},
          {"adapt_interval", opts.adapt_interval}};
}

SolverOptions solver_options_from_json(const json& j, SolverOptions base) {
  constexpr std::string_view what = "solver options";
  check_keys(j,
             {"max_iters", "rho", "alpha", "primal_tol", "dual_tol",
              "adaptive_rho", "adapt_interval"},
             what);
  optional_field(j, "max_iters", what, base.max_iters);
  optional_field(j, "rho", what, base.rho);
  optional_field(j, "alpha", what, base.alpha);
  optional_field(j, "primal_tol", what, base.primal_tol);
  optional_field(j, "dual_tol", what, base.dual_tol);
  optional_field(j, "adaptive_rho", what, base.adaptive_rho);
  optional_field(j, "adapt_interval", what, base.adapt_interval);
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return base;
}

json to_json(const SolverReport& report) {
  return {{"iterations", report.iterations},
          {"primal_residual", report.primal_residual},
          {"dual_residual", report.dual_residual},
          {"objective", report.objective},
          {"converged", report.converged},
          {"seconds", report.seconds}};
}

SolverReport solver_report_from_json(const json& j) {
  constexpr std::string_view what = "solver report";
  check_keys(j,
             {"iterations", "primal_residual", "dual_residual", "objective",
              "converged", "seconds"},
             what);
  SolverReport r;
  r.iterations = field<int>(j, "iterations", what);
  r.primal_residual = field<double>(j, "primal_residual", what);
  r.dual_residual = field<double>(j, "dual_residual", what);
  r.objective = field<double>(j, "objective", what);
  r.converged = field<bool>(j, "converged", what);
  r.seconds = field<double>(j, "seconds", what);
  return r;
}

json to_json(const TrialConfig& cfg) {
  return {{"dim", cfg.dim},
          {"states", cfg.states},
          {"measurements", cfg.measurements},
          {"outcomes", cfg.outcomes},
          {"state_kind", to_string(cfg.state_kind)},
          {"measurement_kind", to_string(cfg.measurement_kind)},
          {"degeneracies", cfg.degeneracies},
          {"knowledge", to_string(cfg.knowledge)},
          {"augment_first", to_string(cfg.augment_first)},
          {"max_augmentations", cfg.max_augmentations},
          {"tau", cfg.tau},
          {"failure_threshold", cfg.failure_threshold},
          {"epsilon", cfg.epsilon},
          {"shots", optional_u64(cfg.shots)},
          {"seed", cfg.seed},
          {"target_rank",
           cfg.target_rank ? json(*cfg.target_rank) : json(nullptr)},
          {"rank_rel_tol", cfg.rank_rel_tol},
          {"warm_start", cfg.warm_start},
          {"solver", to_json(cfg.solver)}};
}

TrialConfig trial_config_from_json(const json& j, TrialConfig base) {
  constexpr std::string_view what = "trial config";
  check_keys(j,
             {"dim", "states", "measurements", "outcomes", "state_kind",
              "measurement_kind", "degeneracies", "knowledge", "augment_first",
              "max_augmentations", "tau", "failure_threshold", "epsilon",
              "shots", "seed", "target_rank", "rank_rel_tol", "warm_start",
              "solver"},
             what);
  optional_field(j, "dim", what, base.dim);
  optional_field(j, "states", what, base.states);
  optional_field(j, "measurements", what, base.measurements);
  // Non-degenerate projective measurements default to K = d.
  base.outcomes = base.dim;
  optional_field(j, "outcomes", what, base.outcomes);
  if (j.contains("state_kind")) {
    base.state_kind = parse_enum<StateKind>(
        field<std::string>(j, "state_kind", what),
        {{"pure", StateKind::kPure}, {"mixed", StateKind::kMixed}}, what);
  }
  if (j.contains("measurement_kind")) {
    base.measurement_kind = parse_enum<MeasurementKind>(
        field<std::string>(j, "measurement_kind", what),
        {{"projective", MeasurementKind::kProjective},
         {"povm", MeasurementKind::kPovm}},
        what);
  }
  optional_field(j, "degeneracies", what, base.degeneracies);
  if (j.contains("knowledge")) {
    base.knowledge = parse_enum<KnowledgeMode>(
        field<std::string>(j, "knowledge", what),
        {{"projective", KnowledgeMode::kProjective},
         {"data_only", KnowledgeMode::kDataOnly}},
        what);
  }
  if (j.contains("augment_first")) {
    base.augment_first = parse_enum<AugmentFirst>(
        field<std::string>(j, "augment_first", what),
        {{"state", AugmentFirst::kState},
         {"measurement", AugmentFirst::kMeasurement}},
        what);
  }
  optional_field(j, "max_augmentations", what, base.max_augmentations);
  optional_field(j, "tau", what, base.tau);
  optional_field(j, "failure_threshold", what, base.failure_threshold);
  optional_field(j, "epsilon", what, base.epsilon);
  if (j.contains("shots")) base.shots = u64_or_null(j, "shots", what);
  optional_field(j, "seed", what, base.seed);
  if (j.contains("target_rank")) {
    const json& t = j.at("target_rank");
    base.target_rank =
        t.is_null() ? std::nullopt
                    : std::optional<int>(field<int>(j, "target_rank", what));
  }
  optional_field(j, "rank_rel_tol", what, base.rank_rel_tol);
  optional_field(j, "warm_start", what, base.warm_start);
  if (j.contains("solver")) {
    base.solver = solver_options_from_json(j.at("solver"), base.solver);
  }
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return base;
}

json to_json(const GramEstimate& est) {
  return {{"n", est.g_hat.size()},
          {"states", est.g_hat.states},
          {"effects", est.g_hat.effects},
          {"certified", est.certified},
          {"target_rank", est.target_rank},
          {"tau", est.tau},
          {"rank_tail", est.rank_tail},
          {"augmentations", est.augmentations},
          {"added_states", est.added_states},
          {"added_measurements", est.added_measurements},
          {"total_iterations", est.total_iterations},
          {"total_seconds", est.total_seconds},
          {"radius", est.radius},
          {"report", to_json(est.report)},
          {"g_hat", matrix_to_json(est.g_hat.values)},
          {"factor", est.factor ? matrix_to_json(*est.factor) : json(nullptr)}};
}

GramEstimate estimate_from_json(const json& j) {
  constexpr std::string_view what = "gram estimate";
  check_keys(j,
             {"n", "states", "effects", "certified", "target_rank", "tau",
              "rank_tail", "augmentations", "added_states",
              "added_measurements", "total_iterations", "total_seconds",
              "radius", "report", "g_hat", "factor"},
             what);
  GramEstimate est;
  est.g_hat.states = field<int>(j, "states", what);
  est.g_hat.effects = field<int>(j, "effects", what);
  est.g_hat.values = matrix_from_json(field<json>(j, "g_hat", what));
  if (est.g_hat.size() != field<int>(j, "n", what)) {
    throw ConfigError("gram estimate: g_hat is not n x n");
  }
  est.certified = field<bool>(j, "certified", what);
  est.target_rank = field<int>(j, "target_rank", what);
  est.tau = field<double>(j, "tau", what);
  est.rank_tail = field<double>(j, "rank_tail", what);
  est.augmentations = field<int>(j, "augmentations", what);
  est.added_states = field<int>(j, "added_states", what);
  est.added_measurements = field<int>(j, "added_measurements", what);
  est.total_iterations = field<int>(j, "total_iterations", what);
  est.total_seconds = field<double>(j, "total_seconds", what);
  est.radius = field<double>(j, "radius", what);
  est.report = solver_report_from_json(field<json>(j, "report", what));
  const json& f = field<json>(j, "factor", what);
  if (!f.is_null()) est.factor = matrix_from_json(f);
  return est;
}

json to_json(const Metrics& m) {
  return {{"max_entry_error", m.max_entry_error},
          {"frobenius_error", m.frobenius_error},
          {"success", m.success},
          {"rank_tail", m.rank_tail},
          {"data_block_error", m.data_block_error},
          {"trace_gap", m.trace_gap}};
}

Metrics metrics_from_json(const json& j) {
  constexpr std::string_view what = "metrics";
  check_keys(j,
             {"max_entry_error", "frobenius_error", "success", "rank_tail",
              "data_block_error", "trace_gap"},
             what);
  Metrics m;
  m.max_entry_error = field<double>(j, "max_entry_error", what);
  m.frobenius_error = field<double>(j, "frobenius_error", what);
  m.success = field<bool>(j, "success", what);
  m.rank_tail = field<double>(j, "rank_tail", what);
  m.data_block_error = field<double>(j, "data_block_error", what);
  m.trace_gap = field<double>(j, "trace_gap", what);
  return m;
}

json to_json(const Round& r) {
  return {{"states", r.states},
          {"measurements", r.measurements},
          {"constraints", r.constraints},
          {"target_rank", r.target_rank},
          {"rank_tail", r.rank_tail},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

std::string table_to_csv(const DataTable& table) {
  std::string out = "w,v,k,f\n";
  for (int w = 0; w < table.states; ++w) {
    for (int v = 0; v < table.measurements; ++v) {
      for (int k = 0; k < table.outcomes; ++k) {
        out += std::to_string(w) + ',' + std::to_string(v) + ',' +
               std::to_string(k) + ',' + format_double(table.at(w, v, k)) +
               '\n';
      }
    }
  }
  return out;
}

DataTable table_from_csv(std::string_view text,
                         std::optional<std::uint64_t> shots) {
  constexpr std::string_view what = "data table csv";
  const auto lines = lines_of(text);
  if (lines.empty()) throw ConfigError("data table csv: empty input");
  const auto header = split(lines[0], ',');
  if (header.size() != 4 || trim(header[0]) != "w" || trim(header[1]) != "v" ||
      trim(header[2]) != "k" || trim(header[3]) != "f") {
    throw ConfigError("data table csv: header must be w,v,k,f");
  }
  struct Entry {
    long long w, v, k;
    double f;
  };
  std::vector<Entry> entries;
  long long max_w = -1, max_v = -1, max_k = -1;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto cells = split(lines[n], ',');
    if (cells.size() != 4) {
      throw ConfigError("data table csv: line " + std::to_string(n + 1) +
                        " does not have 4 fields");
    }
    Entry e{parse_int(cells[0], what), parse_int(cells[1], what),
            parse_int(cells[2], what), parse_double(cells[3], what)};
    if (e.w < 0 || e.v < 0 || e.k < 0) {
      throw ConfigError("data table csv: negative index");
    }
    max_w = std::max(max_w, e.w);
    max_v = std::max(max_v, e.v);
    max_k = std::max(max_k, e.k);
    entries.push_back(e);
  }
  DataTable table;
  table.states = static_cast<int>(max_w + 1);
  table.measurements = static_cast<int>(max_v + 1);
  table.outcomes = static_cast<int>(max_k + 1);
  table.shots = shots;
  const auto expected = static_cast<std::size_t>(table.states) *
                        table.measurements * table.outcomes;
  if (entries.size() != expected) {
    throw ConfigError("data table csv: expected " + std::to_string(expected) +
                      " entries, got " + std::to_string(entries.size()));
  }
  table.values = RealMatrix::Constant(table.states,
                                      table.measurements * table.outcomes,
                                      std::nan(""));
  for (const Entry& e : entries) {
    double& slot = table.values(e.w, e.v * table.outcomes + e.k);
    if (!std::isnan(slot)) throw ConfigError("data table csv: duplicate entry");
    slot = e.f;
  }
  try {
    table.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return table;
}

std::string matrix_to_csv(const RealMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

RealMatrix matrix_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) return RealMatrix(0, 0);
  const auto cols = static_cast<Eigen::Index>(split(lines[0], ',').size());
  RealMatrix m(static_cast<Eigen::Index>(lines.size()), cols);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (static_cast<Eigen::Index>(cells.size()) != cols) {
      throw ConfigError("matrix csv: ragged rows");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), j) =
          parse_double(cells[static_cast<std::size_t>(j)], "matrix csv");
    }
  }
  return m;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" +
                    path.parent_path().string() + "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, dump(j));
}

}  // namespace gramscope
