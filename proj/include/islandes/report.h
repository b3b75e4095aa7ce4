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

#ifndef ISLANDES_REPORT_H_
#define ISLANDES_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "islandes/evolution.h"

namespace islandes {

// Column order is part of the file format.
inline constexpr char kCurveHeader[] =
    "generation,best_gen,mean_gen,best_ever,evals,failures";

std::string FormatCurveRow(const GenerationRecord& record);
std::string FormatCurve(std::span<const GenerationRecord> records);

// Throws std::runtime_error on a wrong header, a malformed row, or
// ("no data rows") when the log has only a header.
std::vector<GenerationRecord> ParseCurve(std::string_view text);

// Line chart of best_ever and mean_gen per generation. Output depends only on
// the records.
std::string RenderCurveSvg(std::span<const GenerationRecord> records);

}  // namespace islandes

#endif  // ISLANDES_REPORT_H_
