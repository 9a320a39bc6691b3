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

#include "log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>
#include <string>

#include "gramscope/logging.hpp"

namespace gramscope {
namespace log {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> instance = [] {
    auto l = spdlog::stderr_color_mt("gramscope");
    l->set_level(spdlog::level::warn);
    l->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
    return l;
  }();
  return instance;
}

}  // namespace log

bool set_log_level(std::string_view level) {
  spdlog::level::level_enum parsed;
  if (level == "error") {
    parsed = spdlog::level::err;
  } else if (level == "warn") {
    parsed = spdlog::level::warn;
  } else if (level == "info") {
    parsed = spdlog::level::info;
  } else if (level == "debug") {
    parsed = spdlog::level::debug;
  } else {
    return false;
  }
  log::logger()->set_level(parsed);
  return true;
}

void init_logging_from_env() {
  const char* env = std::getenv("GRAMSCOPE_LOG");
  if (env == nullptr) return;
  if (!set_log_level(env)) {
    log::warn("ignoring unknown GRAMSCOPE_LOG value '{}'", env);
  }
}

}  // namespace gramscope
