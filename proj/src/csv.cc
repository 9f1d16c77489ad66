// Copyright 2026 The mrcmip Authors
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

#include "mrcmip/csv.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/ascii.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"

namespace mrcmip {
namespace {

std::optional<double> ParseNumber(absl::string_view cell) {
  cell = absl::StripAsciiWhitespace(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

absl::StatusOr<std::vector<std::vector<double>>> ParseCsv(
    std::string_view text, const CsvOptions& options) {
  std::vector<std::vector<double>> rows;
  bool first = true;
  std::size_t line_number = 0;
  const absl::string_view input(text.data(), text.size());
  for (absl::string_view line : absl::StrSplit(input, '\n')) {
    ++line_number;
    line = absl::StripSuffix(line, "\r");
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<absl::string_view> cells =
        absl::StrSplit(line, options.delimiter);
    if (first) {
      first = false;
      if (options.header == HeaderMode::kPresent) continue;
      if (options.header == HeaderMode::kAuto) {
        bool any_numeric = false;
        for (auto cell : cells) any_numeric |= ParseNumber(cell).has_value();
        if (!any_numeric) continue;
      }
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto value = ParseNumber(cells[c]);
      if (!value) {
        return absl::InvalidArgumentError(
            absl::StrCat("parse error at row ", line_number, ", column ",
                         c + 1, ": '", cells[c], "' is not a number"));
      }
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::StatusOr<std::vector<std::vector<double>>> ReadCsvFile(
    const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("file not found: ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseCsv(buffer.str(), options);
}

}  // namespace mrcmip
