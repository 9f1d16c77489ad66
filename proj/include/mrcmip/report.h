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
// Structured run reports and plot data.
//
// Reports are JSON objects. Doubles are written in shortest round-trip form,
// so parsing a report gives back every number bit for bit. When a run is
// deterministic, wall-clock fields (timestamps, elapsed seconds) are left out
// so that reruns produce identical bytes.

#ifndef MRCMIP_REPORT_H_
#define MRCMIP_REPORT_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "json.hpp"
#include "mrcmip/best_subset.h"
#include "mrcmip/core.h"
#include "mrcmip/estimate.h"
#include "mrcmip/simulate.h"

namespace mrcmip {

inline constexpr char kVersion[] = "1.0.0";

struct ReportContext {
  std::string command;
  // Effective settings in the order they should be echoed.
  std::vector<std::pair<std::string, nlohmann::ordered_json>> config;
  bool deterministic = false;
};

nlohmann::ordered_json DatasetJson(const Dataset& d);
nlohmann::ordered_json MipJson(const MipSolution& mip, bool deterministic);
nlohmann::ordered_json MethodJson(const MethodResult& result,
                                  bool deterministic);
nlohmann::ordered_json SubsetJson(const SubsetSolution& fit,
                                  bool deterministic);
nlohmann::ordered_json UnJson(const UnEstimate& estimate);
nlohmann::ordered_json MonteCarloJson(const MonteCarloResult& result,
                                      bool deterministic);

// Header fields (tool, version, command, config, timestamp) followed by the
// entries of `body`.
nlohmann::ordered_json MakeReport(const ReportContext& context,
                                  const nlohmann::ordered_json& body);

std::string FormatReport(const nlohmann::ordered_json& report);

// One row per replication and method.
std::string ComparisonCsv(const MonteCarloResult& result, bool deterministic);
// One row per method.
std::string SummaryCsv(const MonteCarloResult& result, bool deterministic);

std::string ProfileCsv(const std::vector<ProfilePoint>& points);
// Static step chart of the profile.
std::string ProfileSvg(const std::vector<ProfilePoint>& points);

absl::Status WriteTextFile(const std::string& path, const std::string& text);

}  // namespace mrcmip

#endif  // MRCMIP_REPORT_H_
