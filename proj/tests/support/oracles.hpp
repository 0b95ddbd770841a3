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


// Independent reference computations for the test suites. Nothing here
// calls an FFT or the library's interpolation code.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pq/grid.hpp"

namespace pq::oracle {

using Fn = std::function<cplx(double)>;

/// Normalized oscillator eigenfunction h_k(x) for the given hbar, by the
/// three-term recurrence.
double hermite_function(int k, double x, double hbar);

/// (pi hbar)^-1/4 exp(-x^2 / 2 hbar).
double ground_state(double x, double hbar);

/// W phi0(x, p) = (pi hbar)^-1 exp(-(x^2 + p^2) / hbar).
double wigner_ground(double x, double p, double hbar);
/// W h1(x, p) = (pi hbar)^-1 (2 |z|^2 / hbar - 1) exp(-|z|^2 / hbar).
double wigner_hermite1(double x, double p, double hbar);
/// W(h1, phi0)(x, p) = (pi hbar)^-1 sqrt(2/hbar) (x - i p) exp(-|z|^2 / hbar).
cplx cross_wigner_h1_ground(double x, double p, double hbar);

/// Samples f on the grid positions.
Eigen::VectorXcd sample(const PhaseGrid& g, const Fn& f);

/// W(f, h)(x, p) by the lag sum over y = m dx, m in [-N, N), with f and h
/// evaluated directly and taken as zero outside [-L, L).
cplx direct_cross_wigner(const PhaseGrid& g, const Fn& f, const Fn& h, double x, double p);

/// Amb(f, h)(x, p) by the same lag sum over y = m dx with f(y + x/2) h*(y - x/2).
cplx direct_cross_ambiguity(const PhaseGrid& g, const Fn& f, const Fn& h, double x, double p);

/// (2 pi hbar)^-1 sum_z' exp(-i (p x' - x p') / hbar) a(z') dx dp over all nodes.
Eigen::MatrixXcd direct_symplectic_fourier(const PhaseGrid& g, const Eigen::MatrixXcd& a);

/// Weyl kernel by explicit sums: the midpoint symbol is the real-preserving
/// trigonometric interpolant of each p-column, and pairs with |j - k| > N/2
/// (= N/2) use (the mean over) the periodic image.
Eigen::MatrixXcd direct_weyl_kernel(const PhaseGrid& g, const Eigen::MatrixXcd& a);

/// sum_z a(z) |T(z) phi)(T(z) phi| dx dp, built one outer product at a time.
/// The window is translated by whole samples (cyclically).
Eigen::MatrixXcd direct_toeplitz(const PhaseGrid& g, const Eigen::MatrixXcd& a, const Eigen::VectorXcd& phi);

/// tr(K^2) dx^2 for a kernel.
double kernel_purity(const PhaseGrid& g, const Eigen::MatrixXcd& k);

}  // namespace pq::oracle
