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
#include "pq/transforms.hpp"

namespace pq {

/// A non-negative density on the phase grid with unit Riemann integral.
struct ProbabilityDensity {
  PhaseFunction mu;
  /// Integral of the raw input before rescaling.
  double normalization = 1.0;

  /// Validates and rescales `raw` to unit mass. Throws std::invalid_argument
  /// on negative or complex values and on zero or non-finite mass.
  static ProbabilityDensity from_values(const PhaseFunction& raw);
};

struct LatticeAtom {
  PhasePoint z;
  double weight = 0.0;
};

/// Finite atomic measure sum_l w_l delta(z - z_l). Weights are non-negative
/// and sum to one within 1e-12.
struct LatticeMixture {
  std::vector<LatticeAtom> atoms;

  /// Throws std::invalid_argument when the weights are invalid.
  void validate() const;
};

enum class ToeplitzPath { direct, conv };

/// A density operator together with its Wigner distribution.
struct DensityState {
  OperatorMatrix rho;
  PhaseFunction wigner;
  /// Trace before normalization.
  double raw_trace = 1.0;
  /// Node stride used by the direct path (1 for the other constructions).
  int thinning = 1;
};

/// Direct-path stride for a grid: 1 up to N = 64, 2 above.
int default_thinning(const PhaseGrid& grid);

/// Op_phi(a) = sum_z a(z) |T(z) phi)(T(z) phi| dx dp over every
/// `thinning`-th node in each axis (weight thinning^2 dx dp). Position shifts
/// are cyclic, so the node set resolves the identity exactly.
/// thinning <= 0 selects default_thinning.
OperatorMatrix toeplitz_direct(const PhaseFunction& a, const WaveFunction& phi, int thinning = 0);

/// Op_phi(a) = 2 pi hbar Op_W(a * W phi) with a circular FFT convolution.
/// Warns when a or W phi has not decayed to 1e-12 of its peak at the border.
OperatorMatrix toeplitz_conv(const PhaseFunction& a, const WaveFunction& phi);

/// Circular convolution (a * b)(z) = sum_z' a(z') b(z - z') dx dp, with b's
/// origin at grid index (N/2, N/2).
PhaseFunction convolve(const PhaseFunction& a, const PhaseFunction& b);

/// f(z - z0) by band-limited translation; z0 need not be a grid node.
PhaseFunction shift_phase_function(const PhaseFunction& f, PhasePoint z0);

/// rho = Op_phi(mu) divided by its trace, with Wigner distribution
/// mu * W phi (conv) or weyl_symbol(rho) / 2 pi hbar (direct).
DensityState density_from_measure(const ProbabilityDensity& mu, const WaveFunction& phi,
                                  ToeplitzPath path, int thinning = 0);
/// Atomic measures go through lattice_mixed_state.
DensityState density_from_measure(const LatticeMixture& mix, const WaveFunction& phi);

/// rho = sum_l w_l |T(z_l) phi)(T(z_l) phi| and W rho = sum_l w_l W phi(z - z_l),
/// the latter evaluated as W(T(z_l) phi).
DensityState lattice_mixed_state(const LatticeMixture& mix, const WaveFunction& phi);

}  // namespace pq
