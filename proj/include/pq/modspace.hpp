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

#include <string>

#include "pq/grid.hpp"

namespace pq {

/// A quadrature estimate of a modulation-space norm. It is a diagnostic, not
/// a bound: `resolution` records how it was obtained.
struct NormEstimate {
  double value = 0.0;
  std::string window_id;
  std::string resolution;
  /// Estimation nodes per axis (N for m1_norm).
  int points = 0;
  /// Half-widths of the z box that was integrated over.
  double box_x = 0.0;
  double box_p = 0.0;
};

/// ||psi||_phi = int |W(psi, phi)(z)| dz on the phase grid.
NormEstimate m1_norm(const WaveFunction& psi, const WaveFunction& phi);

/// int sup_zeta |W(a, b)(z, zeta)| dz, with W the cross-Wigner transform on
/// R^2 x R^2 and b(z) = (pi s^2)^-1/2 exp(-|z|^2 / 2 s^2), s = b_scale.
///
/// z runs over a `points` x `points` lattice covering the region where a
/// (threshold 1e-12 of its peak) or b is non-negligible, capped at the phase
/// grid box; a is read between nodes by trigonometric interpolation.
/// Throws std::invalid_argument when points < 8 or b_scale <= 0.
NormEstimate m1inf_norm(const PhaseFunction& a, double b_scale = 1.0, int points = 24);

/// int int |W(a, b)(z, zeta)| dz dzeta on the same lattice: the M^1 norm of a
/// as a function on R^2.
NormEstimate m1_phase_norm(const PhaseFunction& a, double b_scale = 1.0, int points = 24);

}  // namespace pq
