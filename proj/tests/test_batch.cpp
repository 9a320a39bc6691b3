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

#include <filesystem>
#include <mutex>
#include <set>

#include "gramscope/batch.hpp"
#include "support.hpp"

using namespace gramscope;

namespace {

BatchSpec quick_spec(int jobs) {
  BatchSpec spec;
  spec.master_seed = 2024;
  spec.jobs = jobs;

  BatchTemplate scalar;
  scalar.name = "d1";
  scalar.config.dim = 1;
  scalar.config.outcomes = 1;
  scalar.config.states = 2;
  scalar.config.measurements = 2;
  scalar.trials = 3;

  BatchTemplate qubit;
  qubit.name = "d2";
  qubit.config.states = 8;
  qubit.config.measurements = 8;
  qubit.config.max_augmentations = 1;
  qubit.trials = 4;

  BatchTemplate broken;
  broken.name = "broken";
  broken.config.dim = 1;
  broken.config.outcomes = 1;
  broken.config.states = 1;
  broken.config.measurements = 1;
  broken.config.target_rank = 50;  // larger than the Gram matrix
  broken.trials = 2;

  spec.templates = {scalar, qubit, broken};
  return spec;
}

}  // namespace

TEST_CASE("trial seeds are fixed and distinct") {
  CHECK(trial_seed(1, 0, 0) == trial_seed(1, 0, 0));
  std::set<std::uint64_t> seen;
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t i = 0; i < 250; ++i) seen.insert(trial_seed(7, t, i));
  CHECK(seen.size() == 1000);
  CHECK(trial_seed(7, 0, 0) != trial_seed(8, 0, 0));
}

TEST_CASE("spec validation and parsing") {
  BatchSpec spec = quick_spec(1);
  CHECK_NOTHROW(spec.validate());
  spec.templates[0].trials = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = quick_spec(0);
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  BatchSpec good = quick_spec(2);
  BatchSpec parsed = batch_spec_from_json(to_json(good));
  CHECK(dump(to_json(parsed)) == dump(to_json(good)));
  CHECK_THROWS_AS(batch_spec_from_json(json::parse(R"({"templates": 3})")),
                  ConfigError);
  CHECK_THROWS_AS(batch_spec_from_json(json::parse(R"({"templates": [], "x": 1})")),
                  ConfigError);
}

TEST_CASE("batch results are independent of the worker count") {
  BatchResult serial = run_batch(quick_spec(1));
  BatchResult parallel = run_batch(quick_spec(3));
  CHECK(dump(to_json(serial.report)) == dump(to_json(parallel.report)));
  REQUIRE(serial.records.size() == 9);
  REQUIRE(parallel.records.size() == 9);
  for (std::size_t i = 0; i < serial.records.size(); ++i)
    CHECK(dump(to_json(serial.records[i])) == dump(to_json(parallel.records[i])));

  const auto& s = serial.report.templates;
  REQUIRE(s.size() == 3);
  CHECK(s[0].certified == 3);
  CHECK(s[0].successes == 3);
  CHECK(s[0].zero_augmentation == 3);
  CHECK(s[2].errors == 2);
  CHECK(s[2].certified == 0);
  for (const auto& t : s) {
    CHECK(t.successes + t.failures == t.certified);
    CHECK(t.certified + t.uncertified + t.errors == t.trials);
  }
  for (const auto& r : serial.records)
    if (r.template_name == "broken") CHECK_FALSE(r.error.empty());
}

TEST_CASE("written outputs agree with the per-trial files") {
  BatchSpec spec = quick_spec(2);
  BatchResult result = run_batch(spec);
  auto dir = testing::scratch_dir("batch");
  write_batch_outputs(result, dir);
  CHECK(std::filesystem::exists(dir / "batch_report.csv"));
  CHECK(std::filesystem::exists(dir / "timing.json"));

  BatchReport report = batch_report_from_json(read_json_file(dir / "batch_report.json"));
  CHECK(dump(to_json(report)) == read_text_file(dir / "batch_report.json"));

  std::vector<TrialRecord> from_files;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "trials")) {
    std::string text = read_text_file(entry.path());
    TrialRecord rec = trial_record_from_json(parse_json(text));
    CHECK(dump(to_json(rec)) == text);
    from_files.push_back(rec);
  }
  CHECK(from_files.size() == 9);
  BatchReport recount = summarize(spec, from_files);
  CHECK(dump(to_json(recount)) == dump(to_json(report)));

  std::string csv = read_text_file(dir / "batch_report.csv");
  CHECK(csv.rfind("template,dim,successes,failures,start_point,solver", 0) == 0);
  CHECK(csv.find("d2,2,") != std::string::npos);
  CHECK(csv.find("\"(8,8)\",admm") != std::string::npos);

  json j = to_json(report);
  CHECK(j["templates"][0].contains("zero_augmentation_rate"));
  CHECK_FALSE(j["templates"][0].contains("mean_seconds"));
}

TEST_CASE("progress callback sees every trial") {
  std::size_t calls = 0;
  std::mutex mu;
  run_batch(quick_spec(2), [&](const TrialRecord&) {
    std::lock_guard<std::mutex> lock(mu);
    ++calls;
  });
  CHECK(calls == 9);
}
