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

#ifndef ISLANDES_ARC_TASK_H_
#define ISLANDES_ARC_TASK_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace islandes {

inline constexpr int kNumColors = 10;

// Row-major grid of ARC color codes in [0, 9].
class Grid {
 public:
  // Throws TaskFormatError on zero dimensions, a size mismatch or a color
  // outside [0, 9].
  Grid(std::size_t height, std::size_t width, std::vector<std::uint8_t> cells);
  // Throws TaskFormatError("ragged grid") when rows differ in length.
  static Grid FromRows(const std::vector<std::vector<int>>& rows);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<std::uint8_t>& cells() const { return cells_; }
  int at(std::size_t row, std::size_t col) const {
    return cells_[row * width_ + col];
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<std::uint8_t> cells_;
};

struct GridPair {
  Grid input;
  Grid output;
};

struct ArcTask {
  std::string id;
  std::vector<GridPair> train;
  std::vector<GridPair> test;  // output holds the ground truth
};

// One digit per cell, rows joined by '|', no trailing separator:
// [[1,0],[0,1]] -> "10|01".
std::string SerializeGrid(const Grid& grid);

// Parses the ARC-1 JSON shape {"train":[{"input":..,"output":..}],"test":[..]}.
// `fallback_id` is used when the document has no "id" member. Test pairs
// without "output" are rejected since scoring needs ground truth.
ArcTask ParseTask(std::string_view document, std::string fallback_id = "");

// Reads and parses one task file; the id defaults to the file stem.
ArcTask LoadTask(const std::filesystem::path& path);

// Reads a task-set manifest: one task path per line, blank lines and '#'
// comments ignored, relative paths resolved against the manifest directory.
std::vector<std::filesystem::path> ReadTaskSetManifest(
    const std::filesystem::path& manifest);

std::vector<ArcTask> LoadTaskSet(const std::filesystem::path& manifest);

}  // namespace islandes

#endif  // ISLANDES_ARC_TASK_H_
