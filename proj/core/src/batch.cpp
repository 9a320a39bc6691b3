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

#include "gramscope/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "log.hpp"

namespace gramscope {
namespace {

struct Job {
  std::size_t tmpl;
  std::size_t trial;
};

TrialRecord run_one(const BatchSpec& spec, const Job& job) {
  const BatchTemplate& t = spec.templates[job.tmpl];
  TrialRecord rec;
  rec.template_name = t.name;
  rec.template_index = job.tmpl;
  rec.trial = job.trial;
  rec.seed = trial_seed(spec.master_seed, job.tmpl, job.trial);

  const auto start = std::chrono::steady_clock::now();
  try {
    TrialConfig cfg = t.config;
    cfg.seed = rec.seed;
    const TrialOutcome out = estimate(cfg);
    const HermBasis basis(cfg.dim);
    rec.certified = out.estimate.certified;
    rec.augmentations = out.estimate.augmentations;
    rec.iterations = out.estimate.total_iterations;
    rec.converged = out.estimate.report.converged;
    rec.final_states = out.data.states;
    rec.final_measurements = out.data.measurements;
    rec.metrics = evaluate(out.estimate, out.truth, basis,
                           cfg.failure_threshold);
    if (out.estimate.factor) {
      const RealMatrix& p = *out.estimate.factor;
      const RealMatrix repro = p.leftCols(out.data.states).transpose() *
                               p.rightCols(out.data.values.cols());
      rec.factor_data_error = (repro - out.data.values).cwiseAbs().maxCoeff();
      if (out.estimate.target_rank == basis.size()) {
        rec.gauge_distance =
            gauge_distance(p, realize(out.truth, basis).full());
      }
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
    log::error("trial {}#{} failed: {}", t.name, job.trial, e.what());
  }
  rec.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void BatchSpec::validate() const {
  if (templates.empty()) {
    throw std::invalid_argument("BatchSpec: no templates");
  }
  if (jobs < 1) throw std::invalid_argument("BatchSpec: jobs must be >= 1");
  for (const auto& t : templates) {
    if (t.trials < 1) {
      throw std::invalid_argument("BatchSpec: template '" + t.name +
                                  "' needs trials >= 1");
    }
    t.config.validate();
  }
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t tmpl,
                         std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(tmpl),
                    static_cast<std::uint32_t>(trial)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

BatchResult run_batch(const BatchSpec& spec, const TrialCallback& on_trial) {
  spec.validate();
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < spec.templates.size(); ++t) {
    for (int i = 0; i < spec.templates[t].trials; ++i) {
      jobs.push_back({t, static_cast<std::size_t>(i)});
    }
  }

  std::vector<TrialRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      records[i] = run_one(spec, jobs[i]);
      if (on_trial) {
        std::lock_guard<std::mutex> lock(callback_mutex);
        on_trial(records[i]);
      }
    }
  };

  const auto workers = static_cast<std::size_t>(
      std::min<std::size_t>(static_cast<std::size_t>(spec.jobs), jobs.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BatchResult result;
  result.report = summarize(spec, records);
  result.records = std::move(records);
  return result;
}

BatchReport summarize(const BatchSpec& spec,
                      const std::vector<TrialRecord>& records) {
  BatchReport report;
  report.master_seed = spec.master_seed;
  for (const auto& t : spec.templates) {
    TemplateSummary s;
    s.name = t.name;
    s.dim = t.config.dim;
    s.start_states = t.config.states;
    s.start_measurements = t.config.measurements;
    report.templates.push_back(s);
  }

  std::vector<const TrialRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    return std::tie(a->template_index, a->trial) <
           std::tie(b->template_index, b->trial);
  });

  std::vector<int> evaluated(report.templates.size(), 0);
  for (const TrialRecord* r : sorted) {
    if (r->template_index >= report.templates.size()) {
      throw std::invalid_argument("summarize: record for unknown template");
    }
    TemplateSummary& s = report.templates[r->template_index];
    ++s.trials;
    s.mean_seconds += r->seconds;
    if (!r->error.empty()) {
      ++s.errors;
      continue;
    }
    ++evaluated[r->template_index];
    if (r->certified) {
      ++s.certified;
      if (r->metrics.success) {
        ++s.successes;
      } else {
        ++s.failures;
      }
    } else {
      ++s.uncertified;
    }
    if (r->augmentations == 0) ++s.zero_augmentation;
    s.mean_max_entry_error += r->metrics.max_entry_error;
    s.max_max_entry_error =
        std::max(s.max_max_entry_error, r->metrics.max_entry_error);
    s.mean_iterations += r->iterations;
  }
  for (std::size_t i = 0; i < report.templates.size(); ++i) {
    TemplateSummary& s = report.templates[i];
    if (evaluated[i] > 0) {
      s.mean_max_entry_error /= evaluated[i];
      s.mean_iterations /= evaluated[i];
    }
    if (s.trials > 0) s.mean_seconds /= s.trials;
  }
  return report;
}

BatchSpec batch_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("batch spec: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "templates" && key != "jobs" && key != "master_seed" &&
        key != "output_dir") {
      throw ConfigError("batch spec: unknown field '" + key + "'");
    }
  }
  BatchSpec spec;
  try {
    spec.jobs = j.value("jobs", 1);
    spec.master_seed = j.value("master_seed", std::uint64_t{0});
    spec.output_dir = j.value("output_dir", std::string());
    if (!j.contains("templates") || !j.at("templates").is_array()) {
      throw ConfigError("batch spec: 'templates' must be an array");
    }
    std::size_t index = 0;
    for (const json& t : j.at("templates")) {
      if (!t.is_object() || !t.contains("config")) {
        throw ConfigError("batch spec: each template needs a 'config'");
      }
      for (const auto& [key, value] : t.items()) {
        if (key != "name" && key != "config" && key != "trials") {
          throw ConfigError("batch template: unknown field '" + key + "'");
        }
      }
      BatchTemplate bt;
      bt.name = t.value("name", "template" + std::to_string(index));
      bt.trials = t.value("trials", 1);
      bt.config = trial_config_from_json(t.at("config"));
      spec.templates.push_back(std::move(bt));
      ++index;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("batch spec: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json to_json(const BatchSpec& spec) {
  json templates = json::array();
  for (const auto& t : spec.templates) {
    templates.push_back(
        {{"name", t.name}, {"trials", t.trials}, {"config", to_json(t.config)}});
  }
  return {{"templates", std::move(templates)},
          {"jobs", spec.jobs},
          {"master_seed", spec.master_seed},
          {"output_dir", spec.output_dir}};
}

json to_json(const BatchReport& report) {
  json templates = json::array();
  for (const auto& s : report.templates) {
    const double zero_rate =
        s.trials ? static_cast<double>(s.zero_augmentation) / s.trials : 0.0;
    templates.push_back({{"name", s.name},
                         {"dim", s.dim},
                         {"start_point", {s.start_states, s.start_measurements}},
                         {"trials", s.trials},
                         {"certified", s.certified},
                         {"uncertified", s.uncertified},
                         {"successes", s.successes},
                         {"failures", s.failures},
                         {"errors", s.errors},
                         {"zero_augmentation", s.zero_augmentation},
                         {"zero_augmentation_rate", zero_rate},
                         {"mean_max_entry_error", s.mean_max_entry_error},
                         {"max_max_entry_error", s.max_max_entry_error},
                         {"mean_iterations", s.mean_iterations},
                         {"solver", "admm"}});
  }
  return {{"master_seed", report.master_seed},
          {"templates", std::move(templates)}};
}

BatchReport batch_report_from_json(const json& j) {
  BatchReport report;
  try {
    report.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const json& t : j.at("templates")) {
      TemplateSummary s;
      s.name = t.at("name").get<std::string>();
      s.dim = t.at("dim").get<int>();
      s.start_states = t.at("start_point").at(0).get<int>();
      s.start_measurements = t.at("start_point").at(1).get<int>();
      s.trials = t.at("trials").get<int>();
      s.certified = t.at("certified").get<int>();
      s.uncertified = t.at("uncertified").get<int>();
      s.successes = t.at("successes").get<int>();
      s.failures = t.at("failures").get<int>();
      s.errors = t.at("errors").get<int>();
      s.zero_augmentation = t.at("zero_augmentation").get<int>();
      s.mean_max_entry_error = t.at("mean_max_entry_error").get<double>();
      s.max_max_entry_error = t.at("max_max_entry_error").get<double>();
      s.mean_iterations = t.at("mean_iterations").get<double>();
      report.templates.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("batch report: ") + e.what());
  }
  return report;
}

std::string batch_report_to_csv(const BatchReport& report) {
  std::string out =
      "template,dim,successes,failures,start_point,solver,trials,certified,"
      "uncertified,errors,zero_augmentation_rate,mean_max_entry_error,"
      "max_max_entry_error,mean_iterations\n";
  for (const auto& s : report.templates) {
    const double zero_rate =
        s.trials ? static_cast<double>(s.zero_augmentation) / s.trials : 0.0;
    out += csv_escape(s.name) + ',' + std::to_string(s.dim) + ',' +
           std::to_string(s.successes) + ',' + std::to_string(s.failures) +
           ',' +
           csv_escape("(" + std::to_string(s.start_states) + "," +
                      std::to_string(s.start_measurements) + ")") +
           ",admm," + std::to_string(s.trials) + ',' +
           std::to_string(s.certified) + ',' + std::to_string(s.uncertified) +
           ',' + std::to_string(s.errors) + ',' + format_double(zero_rate) +
           ',' + format_double(s.mean_max_entry_error) + ',' +
           format_double(s.max_max_entry_error) + ',' +
           format_double(s.mean_iterations) + '\n';
  }
  return out;
}

json to_json(const TrialRecord& r) {
  return {{"template", r.template_name},
          {"template_index", r.template_index},
          {"trial", r.trial},
          {"seed", r.seed},
          {"certified", r.certified},
          {"augmentations", r.augmentations},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"final_states", r.final_states},
          {"final_measurements", r.final_measurements},
          {"metrics", to_json(r.metrics)},
          {"gauge_distance", r.gauge_distance},
          {"factor_data_error", r.factor_data_error},
          {"error", r.error}};
}

TrialRecord trial_record_from_json(const json& j) {
  TrialRecord r;
  try {
    r.template_name = j.at("template").get<std::string>();
    r.template_index = j.at("template_index").get<std::size_t>();
    r.trial = j.at("trial").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.certified = j.at("certified").get<bool>();
    r.augmentations = j.at("augmentations").get<int>();
    r.iterations = j.at("iterations").get<int>();
    r.converged = j.at("converged").get<bool>();
    r.final_states = j.at("final_states").get<int>();
    r.final_measurements = j.at("final_measurements").get<int>();
    r.metrics = metrics_from_json(j.at("metrics"));
    r.gauge_distance = j.at("gauge_distance").get<double>();
    r.factor_data_error = j.at("factor_data_error").get<double>();
    r.error = j.at("error").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trial record: ") + e.what());
  }
  return r;
}

void write_batch_outputs(const BatchResult& result,
                         const std::filesystem::path& dir) {
  write_json_file(dir / "batch_report.json", to_json(result.report));
  write_text_file(dir / "batch_report.csv",
                  batch_report_to_csv(result.report));

  json timing = json::object();
  json per_template = json::array();
  for (const auto& s : result.report.templates) {
    per_template.push_back({{"name", s.name}, {"mean_seconds", s.mean_seconds}});
  }
  json per_trial = json::array();
  for (const auto& r : result.records) {
    per_trial.push_back({{"template", r.template_name},
                         {"trial", r.trial},
                         {"seconds", r.seconds}});
  }
  timing["templates"] = std::move(per_template);
  timing["trials"] = std::move(per_trial);
  write_json_file(dir / "timing.json", timing);

  for (const auto& r : result.records) {
    char name[32];
    std::snprintf(name, sizeof(name), "_%05zu.json", r.trial);
    write_json_file(dir / "trials" / (r.template_name + name), to_json(r));
  }
}

}  // namespace gramscope
