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

#ifndef COORD_ARENA_ERRORS_H_
#define COORD_ARENA_ERRORS_H_

#include <stdexcept>
#include <string>

namespace coord_arena {

// Base for every error raised by the library. Callers that only need to
// report failures can catch this; the subclasses exist so tests and the
// service can map specific failures to specific responses.
class ArenaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COORD_ARENA_DEFINE_ERROR(Name)     \
  class Name : public ArenaError {         \
   public:                                 \
    using ArenaError::ArenaError;          \
  }

COORD_ARENA_DEFINE_ERROR(IllegalAction);
COORD_ARENA_DEFINE_ERROR(TerminalState);
COORD_ARENA_DEFINE_ERROR(MalformedGrid);
COORD_ARENA_DEFINE_ERROR(MalformedMap);
COORD_ARENA_DEFINE_ERROR(NoPath);
COORD_ARENA_DEFINE_ERROR(ParseFailure);
COORD_ARENA_DEFINE_ERROR(BackendFailure);
COORD_ARENA_DEFINE_ERROR(ReplayExhausted);
COORD_ARENA_DEFINE_ERROR(MissingGold);
COORD_ARENA_DEFINE_ERROR(LengthMismatch);
COORD_ARENA_DEFINE_ERROR(DegenerateInput);
COORD_ARENA_DEFINE_ERROR(ConfigError);
COORD_ARENA_DEFINE_ERROR(IoFailure);
COORD_ARENA_DEFINE_ERROR(UnknownSession);
COORD_ARENA_DEFINE_ERROR(NotYourTurn);
COORD_ARENA_DEFINE_ERROR(StaleAction);

#undef COORD_ARENA_DEFINE_ERROR

}  // namespace coord_arena

#endif  // COORD_ARENA_ERRORS_H_
