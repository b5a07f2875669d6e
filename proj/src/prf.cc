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

#include "topics_sim/prf.h"

#include <cmath>

namespace topics_sim {

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t hash = kFnvOffsetBasis;
  for (char c : bytes) {
    hash ^= static_cast<uint8_t>(c);
    hash *= kFnvPrime;
  }
  return hash;
}

PrfHasher::PrfHasher(uint64_t seed) { MixWord(seed); }

void PrfHasher::Mix(uint8_t byte) {
  state_ ^= byte;
  state_ *= kFnvPrime;
}

void PrfHasher::MixWord(uint64_t word) {
  for (int i = 0; i < 8; ++i) {
    Mix(static_cast<uint8_t>(word >> (8 * i)));
  }
}

PrfHasher& PrfHasher::Add(std::string_view part) {
  Mix(0xFF);
  for (char c : part) Mix(static_cast<uint8_t>(c));
  return *this;
}

PrfHasher& PrfHasher::AddWord(uint64_t word) {
  Mix(0xFF);
  MixWord(word);
  return *this;
}

double ToUnit(uint64_t value) {
  return std::ldexp(static_cast<double>(value), -64);
}

}  // namespace topics_sim
