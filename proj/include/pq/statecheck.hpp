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

#include <vector>

#include "pq/grid.hpp"

namespace pq {

struct DensityReport {
  /// sup |K - K^H| over kernel entries.
  double hermiticity_defect = 0.0;
  double trace = 0.0;
  double trace_defect = 0.0;
  /// Raw smallest eigenvalue, never clamped.
  double min_eigenvalue = 0.0;
  /// Descending.
  std::vector<double> eigenvalues;
  /// sum lambda^2 with eigenvalues below the positivity threshold set to 0.
  double purity = 0.0;
  bool verdict = false;
  double tol_trace = 0.0;
  double tol_psd = 0.0;
  double tol_hermitian = 1e-8;
};

/// Checks self-adjointness (defect <= 1e-8), |Tr - 1| <= tol_trace and
/// lambda_min >= -tol_psd * max(1, lambda_max), diagonalizing (A + A^H)/2.
/// Throws std::invalid_argument on non-positive tolerances and
/// std::runtime_error if the eigensolver fails.
DensityReport validate_density(const OperatorMatrix& a, double tol_trace = 1e-6,
                               double tol_psd = 1e-8);

struct Spectrum {
  /// Descending.
  Eigen::VectorXd eigenvalues;
  /// Unit-norm eigenvectors (dx-weighted), in the same order.
  std::vector<WaveFunction> eigenvectors;
};

/// Eigensystem of a hermitian operator. Throws std::invalid_argument when
/// sup |K - K^H| exceeds 1e-8 * max(1, sup |K|).
Spectrum spectral(const OperatorMatrix& a);

/// weyl_symbol(A) / (2 pi hbar). Same hermiticity requirement as spectral.
PhaseFunction wigner_of_density(const OperatorMatrix& a);

}  // namespace pq
