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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pq/grid.hpp"

namespace pq::cli {

/// "%.16e": 17 significant digits, locale independent.
std::string format_number(double v);

/// Phase-grid CSV: one header row, then one row per x_j (ascending) with one
/// column per p_k (ascending).
void write_grid_csv(const std::filesystem::path& file, const Eigen::MatrixXd& values,
                    const std::string& quantity, const std::string& unit);

/// Index/value CSV for a descending spectrum.
void write_spectrum_csv(const std::filesystem::path& file, const std::vector<double>& eigenvalues);

/// grid_x.csv and grid_p.csv coordinate files.
void write_coordinates(const std::filesystem::path& dir, const PhaseGrid& grid);

/// Reads a numeric CSV, skipping a leading non-numeric header row.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& file);

}  // namespace pq::cli
