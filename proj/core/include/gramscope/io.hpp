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

#ifndef GRAMSCOPE_IO_HPP
#define GRAMSCOPE_IO_HPP

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gramscope/estimator.hpp"
#include "gramscope/gram.hpp"
#include "gramscope/sdp.hpp"
#include "gramscope/synth.hpp"

namespace gramscope {

using json = nlohmann::json;

/// Malformed or inconsistent configuration / input document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrices are row-major nested arrays; complex entries are [re, im].
json matrix_to_json(const RealMatrix& m);
RealMatrix matrix_from_json(const json& j);
json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const json& j);

json to_json(const Ensemble& ens);
json to_json(const DataTable& table);
json to_json(const Knowledge& kn);
json to_json(const GramMatrix& g);
json to_json(const SolverOptions& opts);
json to_json(const SolverReport& report);
json to_json(const TrialConfig& cfg);
json to_json(const GramEstimate& est);
json to_json(const Metrics& m);
json to_json(const Round& r);

// Parsers throw ConfigError with the offending field in the message.
Ensemble ensemble_from_json(const json& j);
DataTable table_from_json(const json& j);
Knowledge knowledge_from_json(const json& j);
GramMatrix gram_from_json(const json& j);
SolverOptions solver_options_from_json(const json& j,
                                       SolverOptions base = {});
SolverReport solver_report_from_json(const json& j);
TrialConfig trial_config_from_json(const json& j, TrialConfig base = {});
GramEstimate estimate_from_json(const json& j);
Metrics metrics_from_json(const json& j);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Header "w,v,k,f", one row per entry, 0-based indices.
std::string table_to_csv(const DataTable& table);
DataTable table_from_csv(std::string_view text,
                         std::optional<std::uint64_t> shots = std::nullopt);

/// Dense row-major, no header.
std::string matrix_to_csv(const RealMatrix& m);
RealMatrix matrix_from_csv(std::string_view text);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);
json parse_json(std::string_view text, std::string_view what = "input");

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     std::string_view content);
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace gramscope

#endif  // GRAMSCOPE_IO_HPP
