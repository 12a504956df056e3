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

#ifndef COORD_ARENA_RESOURCES_H_
#define COORD_ARENA_RESOURCES_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace coord_arena {

// Data files (templates, layouts, maps, scenario packs) are compiled into the
// library. Setting COORD_ARENA_DATA_DIR makes the loader read
// $COORD_ARENA_DATA_DIR/<path> first, so wording fixes need no rebuild.
std::string LoadResource(std::string_view path);  // throws IoFailure
bool HasResource(std::string_view path);
// Embedded resource paths starting with `prefix`, sorted.
std::vector<std::string> ListResources(std::string_view prefix);

// Replaces every {key} whose key is present in `vars`; other braces are kept.
std::string FillTemplate(std::string_view tpl, const std::map<std::string, std::string>& vars);

std::string ReadFile(const std::string& path);  // throws IoFailure
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace coord_arena

#endif  // COORD_ARENA_RESOURCES_H_
