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

#ifndef COORD_ARENA_TESTS_TEST_UTIL_H_
#define COORD_ARENA_TESTS_TEST_UTIL_H_

#include <string>

#include "coord_arena/resources.h"

namespace coord_arena::testing {

inline std::string GoldenPath(const std::string& name) { return std::string(COORD_ARENA_GOLDEN_DIR) + "/" + name; }

inline std::string Golden(const std::string& name) { return ReadFile(GoldenPath(name)); }

// Golden files end with a newline; rendered text does not.
inline std::string Chomp(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

}  // namespace coord_arena::testing

#endif  // COORD_ARENA_TESTS_TEST_UTIL_H_
