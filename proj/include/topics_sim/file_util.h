// Copyright 2026 The Topics Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOPICS_SIM_FILE_UTIL_H_
#define TOPICS_SIM_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace topics_sim {

// Returns NotFound when the file does not exist and Unavailable for other
// read failures.
absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

// Writes `contents` to a sibling temporary file and renames it over `path`.
absl::Status WriteFileAtomic(const std::filesystem::path& path,
                             std::string_view contents);

}  // namespace topics_sim

#endif  // TOPICS_SIM_FILE_UTIL_H_
