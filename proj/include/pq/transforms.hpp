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
#include <variant>
#include <vector>

#include "pq/grid.hpp"

namespace pq {

struct PhasePoint {
  double x = 0.0;
  double p = 0.0;
};

/// Heisenberg-Weyl displacement:
///   (T(z0) psi)(x) = exp(i/hbar (p0 x - p0 x0 / 2)) psi(x - x0).
/// A state with a generator is displaced analytically and resampled.
/// Otherwise the translation is a cyclic Fourier phase ramp, so x0 need not
/// be a grid multiple.
WaveFunction displace(PhasePoint z0, const WaveFunction& psi);

/// Values of psi on the half-grid x = -L + q dx/2, q = 0..2N-1: from the
/// generator when present, otherwise by 2x spectral interpolation.
Eigen::VectorXcd half_grid_values(const WaveFunction& psi);

/// W(psi, phi)(x, p) = (2 pi hbar)^-1 int exp(-i p y / hbar) psi(x + y/2) phi*(x - y/2) dy
/// on the N x N phase grid. States vanish outside [-L, L); the lag window
/// y in [-2L, 2L) is folded onto the FFT length N.
PhaseFunction cross_wigner(const WaveFunction& psi, const WaveFunction& phi);
PhaseFunction wigner(const WaveFunction& psi);

/// Pointwise evaluation of the same quadrature at an arbitrary (x, p).
cplx cross_wigner_at(const WaveFunction& psi, const WaveFunction& phi, double x, double p);
Eigen::VectorXcd cross_wigner_at(const WaveFunction& psi, const WaveFunction& phi,
                                 const std::vector<PhasePoint>& points);

/// Amb(psi, phi)(x, p) = (2 pi hbar)^-1 int exp(-i p y / hbar) psi(y + x/2) phi*(y - x/2) dy.
/// Satisfies (psi | T(z) phi) = 2 pi hbar Amb(psi, phi)(z).
PhaseFunction cross_ambiguity(const WaveFunction& psi, const WaveFunction& phi);

/// a_sigma(z) = (2 pi hbar)^-1 int exp(-i sigma(z, z') / hbar) a(z') dz' with
/// sigma(z, z') = p x' - x p'. An exact involution on the grid.
PhaseFunction symplectic_fourier(const PhaseFunction& a);

/// Evaluates psi at any x: generator if present, else its trigonometric
/// interpolant. Zero outside [-L, L].
class StateEvaluator {
 public:
  explicit StateEvaluator(const WaveFunction& psi);
  cplx operator()(double x) const;

 private:
  PhaseGrid grid_;
  Generator generator_;
  Eigen::VectorXcd coeffs_;
};

namespace window {
struct Gaussian {};
struct Hermite1 {};
struct DisplacedGaussian {
  PhasePoint z0;
};
}  // namespace window

using WindowKind = std::variant<window::Gaussian, window::Hermite1, window::DisplacedGaussian>;

/// Unit-norm analytic states with attached generators:
///   gaussian            (pi hbar)^-1/4 exp(-x^2 / 2 hbar)
///   hermite1            (pi hbar)^-1/4 sqrt(2/hbar) x exp(-x^2 / 2 hbar)
///   displaced_gaussian  (pi hbar)^-1/4 exp(i p0 (x - x0) / hbar) exp(-(x - x0)^2 / 2 hbar)
WaveFunction standard_window(const WindowKind& kind, const PhaseGrid& grid);

/// Parses "gaussian", "hermite1" or "displaced_gaussian" (with z0).
WindowKind parse_window_kind(const std::string& name, PhasePoint z0 = {});

}  // namespace pq
