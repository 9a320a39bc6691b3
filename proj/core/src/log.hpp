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

#ifndef GRAMSCOPE_SRC_LOG_HPP
#define GRAMSCOPE_SRC_LOG_HPP

#include <spdlog/spdlog.h>

#include <memory>
#include <utility>

namespace gramscope::log {

std::shared_ptr<spdlog::logger> logger();

template <typename... Args>
void debug(fmt::format_string<Args...> fmt, Args&&... args) {
  logger()->debug(fmt, std::forward<Args>(args)...);
}

template <typename... Args>
void info(fmt::format_string<Args...> fmt, Args&&... args) {
  logger()->info(fmt, std::forward<Args>(args)...);
}

template <typename... Args>
void warn(fmt::format_string<Args...> fmt, Args&&... args) {
  logger()->warn(fmt, std::forward<Args>(args)...);
}

template <typename... Args>
void error(fmt::format_string<Args...> fmt, Args&&... args) {
  logger()->error(fmt, std::forward<Args>(args)...);
}

}  // namespace gramscope::log

#endif  // GRAMSCOPE_SRC_LOG_HPP
