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

#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

#include "gramscope/io.hpp"
#include "support.hpp"

using namespace gramscope;

namespace {

Ensemble small_ensemble(std::uint64_t seed, MeasurementKind mk) {
  Rng rng(seed);
  EnsembleSpec spec;
  spec.dim = 2;
  spec.states = 3;
  spec.measurements = 2;
  spec.outcomes = mk == MeasurementKind::kPovm ? 3 : 2;
  spec.measurement_kind = mk;
  spec.state_kind = StateKind::kMixed;
  return sample_ensemble(spec, rng);
}

// write -> read -> write is byte-identical.
template <typename T, typename Parse>
void check_round_trip(const T& value, Parse parse) {
  const std::string first = dump(to_json(value));
  const std::string second = dump(to_json(parse(parse_json(first))));
  CHECK(first == second);
}

}  // namespace

TEST_CASE("format_double is the shortest round-trip form") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int t = 0; t < 1000; ++t) {
    double x = u(rng) * std::pow(10.0, t % 20 - 10);
    std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  double tiny = std::numeric_limits<double>::denorm_min();
  CHECK(std::strtod(format_double(tiny).c_str(), nullptr) == tiny);
}

TEST_CASE("matrices round-trip through JSON and CSV") {
  std::mt19937_64 rng(2);
  RealMatrix m = testing::random_symmetric(5, rng);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK(matrix_from_csv(matrix_to_csv(m)) == m);
  CHECK(matrix_to_csv(matrix_from_csv(matrix_to_csv(m))) == matrix_to_csv(m));
  ComplexMatrix c = testing::random_hermitian(3, rng);
  CHECK(complex_matrix_from_json(complex_matrix_to_json(c)) == c);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1,2],[3]]")), ConfigError);
  CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n"), ConfigError);
}

TEST_CASE("domain objects round-trip byte-identically") {
  for (auto mk : {MeasurementKind::kProjective, MeasurementKind::kPovm}) {
    Ensemble ens = small_ensemble(3, mk);
    check_round_trip(ens, [](const json& j) { return ensemble_from_json(j); });
    DataTable t = born_table(ens);
    check_round_trip(t, [](const json& j) { return table_from_json(j); });
    CHECK(table_from_json(to_json(t)).values == t.values);
    GramMatrix g = gram(realize(ens, HermBasis(2)));
    check_round_trip(g, [](const json& j) { return gram_from_json(j); });
  }

  Rng rng(4);
  DataTable shots = finite_shot_table(small_ensemble(5, MeasurementKind::kProjective),
                                      100, rng);
  check_round_trip(shots, [](const json& j) { return table_from_json(j); });
  CHECK(table_from_json(to_json(shots)).shots == shots.shots);

  Knowledge kn = knowledge_relax(
      knowledge_projective(born_table(small_ensemble(6, MeasurementKind::kProjective)), 2),
      0.01);
  check_round_trip(kn, [](const json& j) { return knowledge_from_json(j); });
  CHECK(knowledge_from_json(to_json(kn)) == kn);

  SolverOptions opts;
  opts.rho = 0.5;
  opts.adaptive_rho = true;
  check_round_trip(opts, [](const json& j) { return solver_options_from_json(j); });

  TrialConfig cfg;
  cfg.dim = 3;
  cfg.outcomes = 2;
  cfg.degeneracies = {2, 1};
  cfg.shots = 1000;
  cfg.epsilon = 0.005;
  cfg.target_rank = 9;
  cfg.seed = 123456789012345ULL;
  check_round_trip(cfg, [](const json& j) { return trial_config_from_json(j); });

  TrialConfig one;
  one.dim = 1;
  one.outcomes = 1;
  one.states = 2;
  one.measurements = 2;
  TrialOutcome out = estimate(one);
  check_round_trip(out.estimate, [](const json& j) { return estimate_from_json(j); });
  check_round_trip(out.estimate.report,
                   [](const json& j) { return solver_report_from_json(j); });
  Metrics m = evaluate(out.estimate, out.truth, HermBasis(1));
  check_round_trip(m, [](const json& j) { return metrics_from_json(j); });
}

TEST_CASE("solver report carries the documented fields") {
  SolverReport r;
  r.iterations = 12;
  r.converged = true;
  json j = to_json(r);
  for (const char* key : {"iterations", "primal_residual", "dual_residual",
                          "objective", "converged", "seconds"})
    CHECK(j.contains(key));
}

TEST_CASE("data tables round-trip through CSV") {
  DataTable t = born_table(small_ensemble(7, MeasurementKind::kPovm));
  std::string csv = table_to_csv(t);
  CHECK(csv.rfind("w,v,k,f\n", 0) == 0);
  DataTable back = table_from_csv(csv);
  CHECK(back.values == t.values);
  CHECK(back.outcomes == 3);
  CHECK(table_to_csv(back) == csv);

  CHECK_THROWS_AS(table_from_csv("a,b,c,d\n"), ConfigError);
  CHECK_THROWS_AS(table_from_csv("w,v,k,f\n0,0,0,0.5\n"), ConfigError);
  CHECK_THROWS_AS(table_from_csv("w,v,k,f\n0,0,0,0.5\n0,0,0,0.5\n"), ConfigError);
  CHECK_THROWS_AS(table_from_csv("w,v,k,f\n0,0,0,x\n0,0,1,0.5\n"), ConfigError);
}

TEST_CASE("config parsing") {
  TrialConfig cfg = trial_config_from_json(json::parse(R"({"dim": 3, "seed": 9})"));
  CHECK(cfg.dim == 3);
  CHECK(cfg.outcomes == 3);
  CHECK(cfg.seed == 9);
  CHECK_FALSE(cfg.shots.has_value());

  cfg = trial_config_from_json(json::parse(
      R"({"shots": 1000000, "epsilon": 0.005, "knowledge": "data_only",
          "augment_first": "measurement", "solver": {"max_iters": 10}})"));
  CHECK(*cfg.shots == 1000000);
  CHECK(cfg.knowledge == KnowledgeMode::kDataOnly);
  CHECK(cfg.augment_first == AugmentFirst::kMeasurement);
  CHECK(cfg.solver.max_iters == 10);
  CHECK(cfg.solver.rho == 1.0);

  CHECK_THROWS_AS(trial_config_from_json(json::parse(R"({"dimension": 3})")),
                  ConfigError);
  CHECK_THROWS_AS(trial_config_from_json(json::parse(R"({"dim": "two"})")),
                  ConfigError);
  CHECK_THROWS_AS(trial_config_from_json(json::parse(R"({"knowledge": "psychic"})")),
                  ConfigError);
  CHECK_THROWS_AS(trial_config_from_json(json::parse("[1, 2]")), ConfigError);
  CHECK_THROWS_AS(parse_json("{oops"), ConfigError);
  CHECK_THROWS_AS(knowledge_from_json(json::parse(
                      R"({"n": 2, "data_rows": 0, "constraints": [
                         {"i": 0, "j": 5, "kind": "exact", "value": 1}]})")),
                  ConfigError);
}

TEST_CASE("file helpers") {
  auto dir = testing::scratch_dir("io");
  write_json_file(dir / "nested" / "a.json", json{{"x", 1}});
  CHECK(read_json_file(dir / "nested" / "a.json")["x"] == 1);
  CHECK(read_text_file(dir / "nested" / "a.json") == "{\n  \"x\": 1\n}\n");
  CHECK_THROWS_AS(read_text_file(dir / "missing.json"), IoError);
  write_text_file(dir / "blocker", "x");
  CHECK_THROWS_AS(write_text_file(dir / "blocker" / "child.txt", "y"), IoError);
}
