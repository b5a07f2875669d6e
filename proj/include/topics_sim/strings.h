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

#ifndef TOPICS_SIM_STRINGS_H_
#define TOPICS_SIM_STRINGS_H_

#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "absl/strings/string_view.h"
#include "fmt/format.h"

namespace topics_sim {
namespace strings_internal {

template <typename T>
decltype(auto) AsFormattable(T&& value) {
  if constexpr (std::is_same_v<std::remove_cvref_t<T>, absl::string_view>) {
    return std::string_view(value.data(), value.size());
  } else {
    return std::forward<T>(value);
  }
}

}  // namespace strings_internal

// Concatenates the fmt "{}" rendering of every argument.
template <typename... Args>
void StrAppend(std::string& out, Args&&... args) {
  (fmt::format_to(std::back_inserter(out), "{}",
                  strings_internal::AsFormattable(std::forward<Args>(args))),
   ...);
}

template <typename... Args>
std::string StrCat(Args&&... args) {
  std::string out;
  StrAppend(out, std::forward<Args>(args)...);
  return out;
}

// Splits on every occurrence of `separator`; keeps empty fields.
std::vector<std::string_view> Split(std::string_view text, char separator);

// Whole-field base-10 parse.
bool ParseInt64(std::string_view text, int64_t& value);

}  // namespace topics_sim

#endif  // TOPICS_SIM_STRINGS_H_
