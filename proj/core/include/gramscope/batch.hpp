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

#ifndef GRAMSCOPE_BATCH_HPP
#define GRAMSCOPE_BATCH_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gramscope/estimator.hpp"
#include "gramscope/io.hpp"

namespace gramscope {

struct BatchTemplate {
  std::string name;
  TrialConfig config;
  int trials = 1;
};

struct BatchSpec {
  std::vector<BatchTemplate> templates;
  int jobs = 1;
  std::uint64_t master_seed = 0;
  std::string output_dir;

  void validate() const;
};

/// Seed for trial `trial` of template `tmpl`, fixed before any work starts
/// so results do not depend on scheduling.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t tmpl,
                         std::size_t trial);

struct TrialRecord {
  std::string template_name;
  std::size_t template_index = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool certified = false;
  int augmentations = 0;
  int iterations = 0;
  bool converged = false;
  int final_states = 0;
  int final_measurements = 0;
  Metrics metrics;
  double gauge_distance = -1.0;  // certified trials only
  /// max |P_st^T P_m - D| for the factor of a certified estimate, else -1.
  double factor_data_error = -1.0;
  double seconds = 0.0;          // wall time; kept out of deterministic files
  std::string error;             // non-empty if the trial threw
};

struct TemplateSummary {
  std::string name;
  int dim = 0;
  int start_states = 0;
  int start_measurements = 0;
  int trials = 0;
  int certified = 0;
  int uncertified = 0;
  int successes = 0;  // certified and max entry error < threshold
  int failures = 0;   // certified and max entry error >= threshold
  int errors = 0;
  int zero_augmentation = 0;
  double mean_max_entry_error = 0.0;
  double max_max_entry_error = 0.0;
  double mean_iterations = 0.0;
  double mean_seconds = 0.0;  // timing only
};

struct BatchReport {
  std::uint64_t master_seed = 0;
  std::vector<TemplateSummary> templates;
};

struct BatchResult {
  BatchReport report;
  std::vector<TrialRecord> records;  // sorted by (template, trial)
};

using TrialCallback = std::function<void(const TrialRecord&)>;

/// Runs every trial on a pool of spec.jobs workers.
BatchResult run_batch(const BatchSpec& spec,
                      const TrialCallback& on_trial = {});

/// Aggregates records (any order) into a report.
BatchReport summarize(const BatchSpec& spec,
                      const std::vector<TrialRecord>& records);

BatchSpec batch_spec_from_json(const json& j);
json to_json(const BatchSpec& spec);

/// Deterministic report (no wall times).
json to_json(const BatchReport& report);
BatchReport batch_report_from_json(const json& j);
/// Table-style summary, one row per template.
std::string batch_report_to_csv(const BatchReport& report);

/// Deterministic per-trial record (no wall time).
json to_json(const TrialRecord& record);
TrialRecord trial_record_from_json(const json& j);

/// Writes batch_report.json, batch_report.csv, timing.json and
/// trials/<template>_<trial>.json under `dir`.
void write_batch_outputs(const BatchResult& result,
                         const std::filesystem::path& dir);

}  // namespace gramscope

#endif  // GRAMSCOPE_BATCH_HPP
