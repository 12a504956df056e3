// Copyright 2026 The Coord Arena Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coord_arena/rng.h"

namespace coord_arena {

Pcg32::Pcg32(std::uint64_t init_state, std::uint64_t init_seq)
    : state_(0), inc_((init_seq << 1u) | 1u) {
  Next();
  state_ += init_state;
  Next();
}

std::uint32_t Pcg32::Next() {
  std::uint64_t old = state_;
  state_ = old * kMultiplier + inc_;
  auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
}

std::uint32_t Pcg32::Bounded(std::uint32_t bound) {
  std::uint32_t threshold = -bound % bound;
  for (;;) {
    std::uint32_t r = Next();
    if (r >= threshold) return r % bound;
  }
}

Pcg32 MakeRng(Seed seed) { return Pcg32(seed.value); }

}  // namespace coord_arena
