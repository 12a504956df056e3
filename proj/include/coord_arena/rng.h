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

#ifndef COORD_ARENA_RNG_H_
#define COORD_ARENA_RNG_H_

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace coord_arena {

struct Seed {
  std::uint64_t value = 0;
};

// PCG32 (XSH-RR, 64-bit state, 32-bit output) seeded the way the reference
// pcg32_srandom_r does it. Every shuffle in the library goes through this
// generator so that other language ports can reproduce deals bit-exactly.
class Pcg32 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kDefaultStream = 54ULL;

  using result_type = std::uint32_t;

  explicit Pcg32(std::uint64_t init_state, std::uint64_t init_seq = kDefaultStream);

  std::uint32_t Next();
  std::uint32_t operator()() { return Next(); }

  // Unbiased integer in [0, bound). bound must be > 0.
  std::uint32_t Bounded(std::uint32_t bound);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = Bounded(static_cast<std::uint32_t>(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t inc_ = 0;
};

Pcg32 MakeRng(Seed seed);

}  // namespace coord_arena

#endif  // COORD_ARENA_RNG_H_
