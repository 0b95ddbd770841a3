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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pq/toeplitz.hpp"

namespace pq::cli {

/// Malformed or inconsistent configuration. The message starts with a
/// "file:line" or field-path prefix.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WindowSpec {
  std::string id;
  /// gaussian | hermite1 | displaced_gaussian | samples
  std::string kind;
  PhasePoint z0;
  std::filesystem::path file;
  bool normalize = true;
};

/// A function on the phase grid: a symbol or a measure.
struct FieldSpec {
  /// gaussian | constant | indicator | samples | atoms
  std::string type;
  double x0 = 0.0;
  double p0 = 0.0;
  double variance_x = 1.0;
  double variance_p = 1.0;
  double amplitude = 1.0;
  double half_x = 1.0;
  double half_p = 1.0;
  std::filesystem::path file;
  std::vector<LatticeAtom> atoms;
};

struct TaskSpec {
  std::string name;
  std::string kind;
  /// Location in the config, e.g. "tasks[2]", for diagnostics.
  std::string where;
  std::string window;
  std::string other;
  std::optional<FieldSpec> field;
  std::string path = "conv";
  int thinning = 0;
  double tol_trace = 1e-6;
  double tol_psd = 1e-8;
  std::vector<std::vector<std::string>> words;
  double b_scale = 1.0;
  std::vector<int> points{24, 32};
  std::vector<int> sizes{64, 128};
};

struct ExperimentConfig {
  std::filesystem::path source;
  std::filesystem::path output_dir = "pq_output";
  int n_points = 128;
  double half_width = 8.0;
  double hbar = 1.0;
  std::map<std::string, WindowSpec> windows;
  std::vector<TaskSpec> tasks;
};

const std::vector<std::string>& task_kinds();

/// Parses and validates a TOML experiment description. Relative file paths
/// are resolved against the config's directory.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& source);

}  // namespace pq::cli
