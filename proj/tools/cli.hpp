// Copyright 2026 The hullcut Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hullcut/mesh.hpp"
#include "hullcut/pipeline.hpp"

namespace hullcut::cli {

enum ExitCode : int { kOk = 0, kInvalid = 1, kCapExceeded = 2, kIoError = 3 };

inline constexpr int kReportSchema = 1;

struct RunInfo {
  std::string input;
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  std::optional<double> score;
};

/// Report with a fixed key order; `wall_time_s` is the only
/// non-deterministic field. Volumes, concavities and the score are in
/// normalized units.
nlohmann::ordered_json make_report(const RunInfo& info, const DecomposeParams& params,
                                   const Decomposition& result);

/// Parses flags and runs one input or a directory batch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hullcut::cli
