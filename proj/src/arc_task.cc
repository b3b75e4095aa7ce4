// Copyright 2026 The islandes Authors.
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

#include "islandes/arc_task.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "islandes/error.h"
#include "json.hpp"

namespace islandes {

using nlohmann::json;

Grid::Grid(std::size_t height, std::size_t width,
           std::vector<std::uint8_t> cells)
    : height_(height), width_(width), cells_(std::move(cells)) {
  if (height_ == 0 || width_ == 0) throw TaskFormatError("empty grid");
  if (cells_.size() != height_ * width_) {
    throw TaskFormatError("grid cell count does not match its dimensions");
  }
  for (std::uint8_t c : cells_) {
    if (c >= kNumColors) throw TaskFormatError("color out of range");
  }
}

Grid Grid::FromRows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw TaskFormatError("empty grid");
  const std::size_t width = rows.front().size();
  std::vector<std::uint8_t> cells;
  cells.reserve(rows.size() * width);
  for (const auto& row : rows) {
    if (row.size() != width) throw TaskFormatError("ragged grid");
    for (int v : row) {
      if (v < 0 || v >= kNumColors) throw TaskFormatError("color out of range");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return Grid(rows.size(), width, std::move(cells));
}

std::string SerializeGrid(const Grid& grid) {
  std::string out;
  out.reserve(grid.size() + grid.height() - 1);
  for (std::size_t r = 0; r < grid.height(); ++r) {
    if (r > 0) out.push_back('|');
    for (std::size_t c = 0; c < grid.width(); ++c) {
      out.push_back(static_cast<char>('0' + grid.at(r, c)));
    }
  }
  return out;
}

namespace {

Grid GridFromJson(const json& value, std::string_view what) {
  if (!value.is_array()) {
    throw TaskFormatError(std::string(what) + " is not an array of rows");
  }
  std::vector<std::vector<int>> rows;
  for (const json& row : value) {
    if (!row.is_array()) {
      throw TaskFormatError(std::string(what) + " has a non-array row");
    }
    std::vector<int> cells;
    for (const json& cell : row) {
      if (!cell.is_number_integer()) {
        throw TaskFormatError(std::string(what) + " has a non-integer cell");
      }
      const auto v = cell.get<std::int64_t>();
      if (v < 0 || v >= kNumColors) throw TaskFormatError("color out of range");
      cells.push_back(static_cast<int>(v));
    }
    rows.push_back(std::move(cells));
  }
  return Grid::FromRows(rows);
}

std::vector<GridPair> PairsFromJson(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw TaskFormatError(std::string("missing \"") + key + "\" list");
  }
  const json& list = doc[key];
  if (list.empty()) throw TaskFormatError(std::string("empty ") + key + " list");
  std::vector<GridPair> pairs;
  for (const json& item : list) {
    if (!item.is_object() || !item.contains("input")) {
      throw TaskFormatError(std::string(key) + " pair without \"input\"");
    }
    if (!item.contains("output")) {
      throw TaskFormatError(std::string(key) +
                            " pair without \"output\" (ground truth withheld)");
    }
    pairs.push_back(GridPair{GridFromJson(item["input"], "input"),
                             GridFromJson(item["output"], "output")});
  }
  return pairs;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TaskFormatError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ArcTask ParseTask(std::string_view document, std::string fallback_id) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw TaskFormatError(std::string("malformed task document: ") + e.what());
  }
  if (!doc.is_object()) throw TaskFormatError("task document is not an object");
  ArcTask task;
  task.id = doc.contains("id") && doc["id"].is_string()
                ? doc["id"].get<std::string>()
                : std::move(fallback_id);
  task.train = PairsFromJson(doc, "train");
  task.test = PairsFromJson(doc, "test");
  return task;
}

ArcTask LoadTask(const std::filesystem::path& path) {
  try {
    return ParseTask(ReadFile(path), path.stem().string());
  } catch (const TaskFormatError& e) {
    throw TaskFormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::filesystem::path> ReadTaskSetManifest(
    const std::filesystem::path& manifest) {
  std::istringstream lines(ReadFile(manifest));
  std::vector<std::filesystem::path> paths;
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path path = line.substr(first, last - first + 1);
    if (path.is_relative()) path = manifest.parent_path() / path;
    paths.push_back(path.lexically_normal());
  }
  if (paths.empty()) {
    throw TaskFormatError(manifest.string() + ": task set lists no tasks");
  }
  return paths;
}

std::vector<ArcTask> LoadTaskSet(const std::filesystem::path& manifest) {
  std::vector<ArcTask> tasks;
  for (const auto& path : ReadTaskSetManifest(manifest)) {
    tasks.push_back(LoadTask(path));
  }
  return tasks;
}

}  // namespace islandes
