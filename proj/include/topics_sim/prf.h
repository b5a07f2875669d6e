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

#ifndef TOPICS_SIM_PRF_H_
#define TOPICS_SIM_PRF_H_

#include <cstdint>
#include <string_view>
#include <type_traits>

namespace topics_sim {

inline constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

// FNV-1a 64-bit over raw bytes.
uint64_t Fnv1a64(std::string_view bytes);

// Incremental keyed hash behind every random decision in the simulator.
//
// The byte stream is the little-endian 8-byte seed followed, for each part,
// by a 0xFF separator and then either the part's UTF-8 bytes (strings) or its
// little-endian 8-byte two's-complement encoding (integers). The stream is
// hashed with FNV-1a 64. This layout is fixed so that other implementations
// can reproduce traces bit for bit.
class PrfHasher {
 public:
  explicit PrfHasher(uint64_t seed);

  PrfHasher& Add(std::string_view part);
  PrfHasher& Add(const char* part) { return Add(std::string_view(part)); }
  template <typename Int,
            typename = std::enable_if_t<std::is_integral_v<Int> &&
                                        !std::is_same_v<Int, bool>>>
  PrfHasher& Add(Int part) {
    return AddWord(static_cast<uint64_t>(part));
  }

  uint64_t value() const { return state_; }

 private:
  void Mix(uint8_t byte);
  void MixWord(uint64_t word);
  PrfHasher& AddWord(uint64_t word);

  uint64_t state_ = kFnvOffsetBasis;
};

template <typename... Parts>
uint64_t Prf64(uint64_t seed, const Parts&... parts) {
  PrfHasher hasher(seed);
  (hasher.Add(parts), ...);
  return hasher.value();
}

// prf64 / 2^64 as a double in [0, 1].
double ToUnit(uint64_t value);

template <typename... Parts>
double PrfUnit(uint64_t seed, const Parts&... parts) {
  return ToUnit(Prf64(seed, parts...));
}

// prf64 mod n. `n` must be positive.
template <typename... Parts>
uint64_t PrfIndex(uint64_t n, uint64_t seed, const Parts&... parts) {
  return Prf64(seed, parts...) % n;
}

}  // namespace topics_sim

#endif  // TOPICS_SIM_PRF_H_
