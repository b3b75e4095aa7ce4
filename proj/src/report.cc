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

#include "islandes/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace islandes {

std::string FormatCurveRow(const GenerationRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.6f,%zu,%zu", r.generation,
                r.best_gen, r.mean_gen, r.best_ever, r.evaluations,
                r.failures);
  return buf;
}

std::string FormatCurve(std::span<const GenerationRecord> records) {
  std::string out = std::string(kCurveHeader) + "\n";
  for (const GenerationRecord& r : records) out += FormatCurveRow(r) + "\n";
  return out;
}

namespace {

template <typename T>
T Field(std::string_view text, int line) {
  T value{};
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::runtime_error("malformed log row " + std::to_string(line) +
                             ": bad field '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<GenerationRecord> ParseCurve(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty log");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCurveHeader) {
    throw std::runtime_error("unexpected log header '" + line + "'");
  }
  std::vector<GenerationRecord> records;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != rest.npos;) {
      fields.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 6) {
      throw std::runtime_error("malformed log row " + std::to_string(number) +
                               ": expected 6 fields");
    }
    records.push_back(GenerationRecord{
        Field<std::size_t>(fields[0], number), Field<double>(fields[1], number),
        Field<double>(fields[2], number), Field<double>(fields[3], number),
        Field<std::size_t>(fields[4], number),
        Field<std::size_t>(fields[5], number)});
  }
  if (records.empty()) throw std::runtime_error("no data rows");
  return records;
}

std::string RenderCurveSvg(std::span<const GenerationRecord> records) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double g_min = 0, g_max = 1, y_max = 1;
  if (!records.empty()) {
    g_min = static_cast<double>(records.front().generation);
    g_max = g_min;
    for (const GenerationRecord& r : records) {
      g_min = std::min(g_min, static_cast<double>(r.generation));
      g_max = std::max(g_max, static_cast<double>(r.generation));
      y_max = std::max({y_max, r.best_ever, r.mean_gen});
    }
    if (g_max == g_min) g_max = g_min + 1;
  }
  auto x_of = [&](double g) { return kLeft + (g - g_min) / (g_max - g_min) * plot_w; };
  auto y_of = [&](double s) {
    return kTop + plot_h - std::clamp(s, 0.0, y_max) / y_max * plot_h;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  auto points = [&](auto value) {
    std::string out;
    for (const GenerationRecord& r : records) {
      if (!out.empty()) out += ' ';
      out += num(x_of(static_cast<double>(r.generation))) + "," +
             num(y_of(value(r)));
    }
    return out;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"white\"/>\n";
  // Axes.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double s = y_max * tick / 4.0;
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y_of(s) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << num(s)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 20
      << "\" font-size=\"11\">" << num(g_min) << "</text>\n";
  svg << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kHeight - 20
      << "\" font-size=\"11\" text-anchor=\"end\">" << num(g_max)
      << "</text>\n";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">generation</text>\n";
  // Legend.
  svg << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop - 10
      << "\" font-size=\"12\" fill=\"#c0392b\">best_ever</text>\n";
  svg << "<text x=\"" << kLeft + 90 << "\" y=\"" << kTop - 10
      << "\" font-size=\"12\" fill=\"#2471a3\">mean_gen</text>\n";
  svg << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" "
         "points=\""
      << points([](const GenerationRecord& r) { return r.best_ever; })
      << "\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#2471a3\" stroke-width=\"2\" "
         "points=\""
      << points([](const GenerationRecord& r) { return r.mean_gen; })
      << "\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace islandes
