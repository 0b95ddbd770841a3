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

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pq {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when two objects that must share a discretization do not.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Phase-space discretization of the line [-L, L) and its conjugate momenta.
///
/// Positions are x_j = -L + j*dx (j = 0..N-1, dx = 2L/N). Momenta are
/// p_k = (k - N/2)*dp with dp = 2*pi*hbar/(N*dx), so dx*dp*N = 2*pi*hbar.
/// Both axes are listed in ascending order; index N/2 is the origin.
class PhaseGrid {
 public:
  PhaseGrid(int n_points, double half_width, double hbar);

  int size() const { return n_; }
  double half_width() const { return half_width_; }
  double hbar() const { return hbar_; }

  double dx() const { return 2.0 * half_width_ / n_; }
  double dp() const { return 2.0 * kPi * hbar_ / (n_ * dx()); }
  /// Phase-space cell area dx*dp.
  double cell() const { return dx() * dp(); }
  /// Half-extent of the momentum axis, N*dp/2.
  double momentum_half_width() const { return 0.5 * n_ * dp(); }

  double x(int j) const { return -half_width_ + j * dx(); }
  double p(int k) const { return (k - n_ / 2) * dp(); }

  Eigen::VectorXd positions() const;
  Eigen::VectorXd momenta() const;

  bool operator==(const PhaseGrid& other) const = default;

 private:
  int n_;
  double half_width_;
  double hbar_;
};

PhaseGrid make_grid(int n_points, double half_width, double hbar);

/// Throws GridMismatch naming `what` when the two grids differ.
void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const std::string& what);

/// Exact evaluation of a state at an arbitrary position.
using Generator = std::function<cplx(double)>;

/// Samples of a state on the position grid, optionally with an analytic
/// evaluator used wherever values between grid nodes are needed.
struct WaveFunction {
  PhaseGrid grid;
  Eigen::VectorXcd samples;
  Generator generator;

  bool has_generator() const { return static_cast<bool>(generator); }

  /// Samples `gen` on the grid and keeps it as the generator.
  static WaveFunction from_generator(const PhaseGrid& grid, Generator gen);
  static WaveFunction from_samples(const PhaseGrid& grid, Eigen::VectorXcd samples);
};

/// Complex samples on the N x N phase grid; rows index x_j, columns p_k.
struct PhaseFunction {
  PhaseGrid grid;
  Eigen::MatrixXcd values;

  static PhaseFunction zeros(const PhaseGrid& grid);
  /// Samples f(x, p) on every node.
  static PhaseFunction from_function(const PhaseGrid& grid,
                                     const std::function<cplx(double, double)>& f);

  /// Riemann sum with weight dx*dp.
  cplx integral() const;
  double sup_norm() const;
};

/// Discretized kernel K(x_j, x_k) acting as (A psi)(x_j) = sum_k K_jk psi_k dx.
struct OperatorMatrix {
  PhaseGrid grid;
  Eigen::MatrixXcd kernel;

  static OperatorMatrix identity(const PhaseGrid& grid);

  /// Matrix acting on raw samples: kernel * dx.
  Eigen::MatrixXcd action() const { return kernel * grid.dx(); }
  /// Tr(A) = sum_j K_jj dx.
  cplx trace() const;
  OperatorMatrix adjoint() const;
  WaveFunction apply(const WaveFunction& psi) const;
  /// Relative Frobenius distance ||A - B|| / ||B||.
  double relative_distance(const OperatorMatrix& reference) const;
};

/// Operator product A * B under the dx-weighted kernel composition.
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);

/// (psi|chi) = sum_j psi_j conj(chi_j) dx.
cplx l2_inner(const WaveFunction& psi, const WaveFunction& chi);
double l2_norm(const WaveFunction& psi);

/// Rescales to unit norm; the generator, if any, is rescaled with it.
WaveFunction normalize(const WaveFunction& psi);

WaveFunction scale(const WaveFunction& psi, cplx factor);

}  // namespace pq
