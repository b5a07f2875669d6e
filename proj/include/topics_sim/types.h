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

#ifndef TOPICS_SIM_TYPES_H_
#define TOPICS_SIM_TYPES_H_

#include <cstdint>

namespace topics_sim {

using TopicId = int64_t;
using UserId = int64_t;
using SiteId = int64_t;
using CallerId = int64_t;

// One epoch is one week of browsing.
using Epoch = int64_t;

}  // namespace topics_sim

#endif  // TOPICS_SIM_TYPES_H_
