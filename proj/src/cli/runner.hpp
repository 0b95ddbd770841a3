// Copyright 2026 The phasequant Authors.
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

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "cli/config.hpp"

namespace pq::cli {

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;
  bool quiet = false;
  /// Thread cap recorded in the manifest (0: default).
  int threads = 0;
};

/// Materializes a window on the grid.
WaveFunction make_window(const WindowSpec& spec, const PhaseGrid& grid);
/// Samples a symbol or measure on the grid (not defined for atoms).
PhaseFunction make_field(const FieldSpec& spec, const PhaseGrid& grid);

/// Runs every task in order, writing reports and the manifest. Returns 0 on
/// success and 1 when a task fails; later tasks are then skipped and earlier
/// outputs are kept.
int run_config(const ExperimentConfig& config, const RunOptions& options, std::ostream& log);

}  // namespace pq::cli
