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


#include "cli/output.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pq::cli {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_grid_csv(const std::filesystem::path& file, const Eigen::MatrixXd& values,
                    const std::string& quantity, const std::string& unit) {
  std::ofstream out = open_out(file);
  for (Eigen::Index k = 0; k < values.cols(); ++k) {
    out << (k ? "," : "") << quantity << "[p" << k << "] (" << unit << ")";
  }
  out << "\n";
  for (Eigen::Index j = 0; j < values.rows(); ++j) {
    for (Eigen::Index k = 0; k < values.cols(); ++k) out << (k ? "," : "") << format_number(values(j, k));
    out << "\n";
  }
}

void write_spectrum_csv(const std::filesystem::path& file, const std::vector<double>& eigenvalues) {
  std::ofstream out = open_out(file);
  out << "index (1),eigenvalue (1)\n";
  for (size_t i = 0; i < eigenvalues.size(); ++i) out << i << "," << format_number(eigenvalues[i]) << "\n";
}

void write_coordinates(const std::filesystem::path& dir, const PhaseGrid& grid) {
  std::ofstream x = open_out(dir / "grid_x.csv");
  x << "j (1),x (length)\n";
  for (int j = 0; j < grid.size(); ++j) x << j << "," << format_number(grid.x(j)) << "\n";
  std::ofstream p = open_out(dir / "grid_p.csv");
  p << "k (1),p (momentum)\n";
  for (int k = 0; k < grid.size(); ++k) p << k << "," << format_number(grid.p(k)) << "\n";
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;
      throw std::runtime_error(file.string() + ":" + std::to_string(line_no) + ": non-numeric value");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pq::cli
