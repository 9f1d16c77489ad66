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

#ifndef MRCMIP_CSV_H_
#define MRCMIP_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace mrcmip {

enum class HeaderMode {
  kNone,
  kPresent,
  // Skip the first row only when none of its cells parse as numbers.
  kAuto,
};

struct CsvOptions {
  char delimiter = ',';
  HeaderMode header = HeaderMode::kAuto;
};

// Numeric table parse. Blank lines are skipped. A cell that is not a number
// yields InvalidArgument naming its 1-based row and column.
absl::StatusOr<std::vector<std::vector<double>>> ParseCsv(
    std::string_view text, const CsvOptions& options = {});

// NotFound when the file cannot be opened.
absl::StatusOr<std::vector<std::vector<double>>> ReadCsvFile(
    const std::string& path, const CsvOptions& options = {});

}  // namespace mrcmip

#endif  // MRCMIP_CSV_H_
