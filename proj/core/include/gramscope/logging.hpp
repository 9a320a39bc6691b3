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

#ifndef GRAMSCOPE_LOGGING_HPP
#define GRAMSCOPE_LOGGING_HPP

#include <string_view>

namespace gramscope {

/// Sets the library log level from GRAMSCOPE_LOG (error, warn, info,
/// debug). Unset or unknown values leave the default (warn).
void init_logging_from_env();

/// Returns false for an unknown level name.
bool set_log_level(std::string_view level);

}  // namespace gramscope

#endif  // GRAMSCOPE_LOGGING_HPP
