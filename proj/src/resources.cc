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

#include "coord_arena/resources.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "coord_arena/errors.h"

namespace coord_arena {
namespace internal {
extern const std::pair<std::string_view, std::string_view> kEmbeddedResources[];
extern const int kEmbeddedResourceCount;
}  // namespace internal

namespace {

std::optional<std::string> OverridePath(std::string_view path) {
  const char* dir = std::getenv("COORD_ARENA_DATA_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  std::filesystem::path p = std::filesystem::path(dir) / std::string(path);
  if (std::filesystem::is_regular_file(p)) return p.string();
  return std::nullopt;
}

const std::string_view* FindEmbedded(std::string_view path) {
  for (int i = 0; i < internal::kEmbeddedResourceCount; ++i) {
    if (internal::kEmbeddedResources[i].first == path) return &internal::kEmbeddedResources[i].second;
  }
  return nullptr;
}

}  // namespace

std::string LoadResource(std::string_view path) {
  if (auto p = OverridePath(path)) return ReadFile(*p);
  if (const auto* s = FindEmbedded(path)) return std::string(*s);
  throw IoFailure("resource not found: " + std::string(path));
}

bool HasResource(std::string_view path) {
  return OverridePath(path).has_value() || FindEmbedded(path) != nullptr;
}

std::vector<std::string> ListResources(std::string_view prefix) {
  std::vector<std::string> out;
  for (int i = 0; i < internal::kEmbeddedResourceCount; ++i) {
    std::string_view name = internal::kEmbeddedResources[i].first;
    if (name.substr(0, prefix.size()) == prefix) out.emplace_back(name);
  }
  return out;
}

std::string FillTemplate(std::string_view tpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      auto close = tpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = vars.find(std::string(tpl.substr(i + 1, close - i - 1)));
        if (it != vars.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tpl[i++];
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoFailure("write failed for " + path);
}

}  // namespace coord_arena
