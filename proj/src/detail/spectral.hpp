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

// FFT conventions shared by every module.
//
//   fft_forward:  out[k] = sum_n in[n] exp(-2 pi i k n / N)   (unscaled)
//   fft_backward: out[n] = sum_k in[k] exp(+2 pi i k n / N)   (unscaled)
//
// Frequency index i of a length-N transform maps to the signed integer
// l = i for i < N/2 and l = i - N otherwise, so the Nyquist bin is l = -N/2.
// Two treatments of that bin exist below:
//   Nyquist::one_sided  keeps exp(-i pi t) as is: shifts are exactly unitary
//                       and the interpolated identity kernel stays a function
//                       of x - y only.
//   Nyquist::split      replaces it by cos(pi t): real samples interpolate to
//                       real values.
// For well-resolved states the Nyquist coefficient is below roundoff and the
// two agree.

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace pq::detail {

using cplx = std::complex<double>;

enum class Nyquist { one_sided, split };

void fft_forward(Eigen::Ref<Eigen::VectorXcd> v);
void fft_backward(Eigen::Ref<Eigen::VectorXcd> v);

/// 2-D unscaled transforms over both axes of a matrix.
void fft2_forward(Eigen::MatrixXcd& m);
void fft2_backward(Eigen::MatrixXcd& m);

inline int signed_frequency(int i, int n) { return i < n / 2 ? i : i - n; }

/// out[k] = sum_m exp(sign * 2 pi i (k - N/2)(m - N/2) / N) v[m].
Eigen::VectorXcd centered_dft(const Eigen::VectorXcd& v, int sign);

/// Trigonometric interpolation of periodic samples onto the half-grid:
/// out[q] approximates f(t = q/2) in sample-index units, q = 0..2N-1.
Eigen::VectorXcd upsample2(const Eigen::VectorXcd& samples, Nyquist mode);

/// Cyclic band-limited translation by `shift` samples: out(t) = f(t - shift).
Eigen::VectorXcd fourier_shift(const Eigen::VectorXcd& samples, double shift);

/// Sum over the lag window m in [-N, N) folded onto the N-periodic kernel
/// exp(-2 pi i (k - N/2) m / N):
///   out[k] = sum_{m=-N}^{N-1} exp(-2 pi i (k - N/2) m / N) g(m).
/// This is the y-integration of every Wigner-type transform on the grid.
Eigen::VectorXcd folded_lag_transform(int n, const std::function<cplx(int)>& g);

/// Periodic trigonometric interpolant of samples f_0..f_{N-1} taken at t = 0..N-1.
class TrigInterpolant {
 public:
  TrigInterpolant(const Eigen::VectorXcd& samples, Nyquist mode);

  /// Value at fractional index t; zero outside [0, N].
  cplx operator()(double t) const;
  /// Row of basis values b_l(t), so that f(t) = basis(t) . coefficients().
  Eigen::RowVectorXcd basis(double t) const;
  const Eigen::VectorXcd& coefficients() const { return coeffs_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

 private:
  Eigen::VectorXcd coeffs_;
  Nyquist mode_;
};

/// Basis row for an N-point interpolant, shared by the 1-D and 2-D cases.
Eigen::RowVectorXcd trig_basis(int n, double t, Nyquist mode);

/// Separable 2-D trigonometric interpolant of an N x M sample matrix.
class TrigInterpolant2D {
 public:
  TrigInterpolant2D(const Eigen::MatrixXcd& samples, Nyquist mode);

  /// Values at the points (t1[i], t2[i]); zero outside the sampled box.
  Eigen::VectorXcd at_points(const Eigen::VectorXd& t1, const Eigen::VectorXd& t2) const;
  /// Values on the tensor grid t1 x t2.
  Eigen::MatrixXcd on_tensor_grid(const Eigen::VectorXd& t1, const Eigen::VectorXd& t2) const;

 private:
  Eigen::MatrixXcd basis_matrix(const Eigen::VectorXd& t, int n) const;

  Eigen::MatrixXcd coeffs_;
  Nyquist mode_;
};

}  // namespace pq::detail
