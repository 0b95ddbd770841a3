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

#include "detail/spectral.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace pq::detail {

namespace {

constexpr double kPiD = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPiD;

Eigen::FFT<double>& engine() {
  // kissfft caches twiddles per length; one engine per thread keeps it lock-free.
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

thread_local std::vector<cplx> scratch;

}  // namespace

void fft_forward(Eigen::Ref<Eigen::VectorXcd> v) {
  const auto n = v.size();
  scratch.resize(static_cast<size_t>(n));
  engine().fwd(scratch.data(), v.data(), n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = scratch[static_cast<size_t>(i)];
}

void fft_backward(Eigen::Ref<Eigen::VectorXcd> v) {
  const auto n = v.size();
  scratch.resize(static_cast<size_t>(n));
  engine().inv(scratch.data(), v.data(), n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = scratch[static_cast<size_t>(i)];
}

void fft2_forward(Eigen::MatrixXcd& m) {
  Eigen::VectorXcd tmp;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    tmp = m.col(c);
    fft_forward(tmp);
    m.col(c) = tmp;
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    tmp = m.row(r).transpose();
    fft_forward(tmp);
    m.row(r) = tmp.transpose();
  }
}

void fft2_backward(Eigen::MatrixXcd& m) {
  Eigen::VectorXcd tmp;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    tmp = m.col(c);
    fft_backward(tmp);
    m.col(c) = tmp;
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    tmp = m.row(r).transpose();
    fft_backward(tmp);
    m.row(r) = tmp.transpose();
  }
}

Eigen::VectorXcd centered_dft(const Eigen::VectorXcd& v, int sign) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXcd w(n);
  for (int m = 0; m < n; ++m) w[m] = (m % 2 == 0) ? v[m] : -v[m];
  if (sign < 0) {
    fft_forward(w);
  } else {
    fft_backward(w);
  }
  // exp(sign * 2 pi i c^2 / N) with c = N/2.
  const cplx global = std::polar(1.0, sign * kPiD * (n / 2));
  for (int k = 0; k < n; ++k) w[k] *= (k % 2 == 0) ? global : -global;
  return w;
}

Eigen::VectorXcd upsample2(const Eigen::VectorXcd& samples, Nyquist mode) {
  const int n = static_cast<int>(samples.size());
  Eigen::VectorXcd c = samples;
  fft_forward(c);
  c /= static_cast<double>(n);
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    const int l = signed_frequency(i, n);
    if (l == -n / 2 && mode == Nyquist::split) {
      padded[2 * n - n / 2] += 0.5 * c[i];
      padded[n / 2] += 0.5 * c[i];
    } else {
      padded[(l + 2 * n) % (2 * n)] += c[i];
    }
  }
  fft_backward(padded);
  return padded;
}

Eigen::VectorXcd fourier_shift(const Eigen::VectorXcd& samples, double shift) {
  const int n = static_cast<int>(samples.size());
  Eigen::VectorXcd c = samples;
  fft_forward(c);
  for (int i = 0; i < n; ++i) {
    const int l = signed_frequency(i, n);
    c[i] *= std::polar(1.0, -kTwoPi * l * shift / n);
  }
  fft_backward(c);
  return c / static_cast<double>(n);
}

Eigen::VectorXcd folded_lag_transform(int n, const std::function<cplx(int)>& g) {
  Eigen::VectorXcd folded(n);
  for (int r = 0; r < n; ++r) {
    const cplx v = g(r) + g(r - n);
    folded[r] = (r % 2 == 0) ? v : -v;
  }
  fft_forward(folded);
  return folded;
}

Eigen::RowVectorXcd trig_basis(int n, double t, Nyquist mode) {
  Eigen::RowVectorXcd b(n);
  for (int i = 0; i < n; ++i) {
    const int l = signed_frequency(i, n);
    if (l == -n / 2 && mode == Nyquist::split) {
      b[i] = std::cos(kPiD * t);
    } else {
      b[i] = std::polar(1.0, kTwoPi * l * t / n);
    }
  }
  return b;
}

TrigInterpolant::TrigInterpolant(const Eigen::VectorXcd& samples, Nyquist mode)
    : coeffs_(samples), mode_(mode) {
  fft_forward(coeffs_);
  coeffs_ /= static_cast<double>(coeffs_.size());
}

Eigen::RowVectorXcd TrigInterpolant::basis(double t) const {
  return trig_basis(size(), t, mode_);
}

cplx TrigInterpolant::operator()(double t) const {
  if (t < 0.0 || t > size()) return 0.0;
  return basis(t) * coeffs_;
}

TrigInterpolant2D::TrigInterpolant2D(const Eigen::MatrixXcd& samples, Nyquist mode)
    : coeffs_(samples), mode_(mode) {
  fft2_forward(coeffs_);
  coeffs_ /= static_cast<double>(coeffs_.rows() * coeffs_.cols());
}

Eigen::MatrixXcd TrigInterpolant2D::basis_matrix(const Eigen::VectorXd& t, int n) const {
  Eigen::MatrixXcd b(t.size(), n);
  for (Eigen::Index i = 0; i < t.size(); ++i) b.row(i) = trig_basis(n, t[i], mode_);
  return b;
}

Eigen::VectorXcd TrigInterpolant2D::at_points(const Eigen::VectorXd& t1,
                                              const Eigen::VectorXd& t2) const {
  const int n1 = static_cast<int>(coeffs_.rows());
  const int n2 = static_cast<int>(coeffs_.cols());
  const Eigen::MatrixXcd partial = basis_matrix(t1, n1) * coeffs_;
  const Eigen::MatrixXcd b2 = basis_matrix(t2, n2);
  Eigen::VectorXcd out(t1.size());
  for (Eigen::Index i = 0; i < t1.size(); ++i) {
    const bool inside = t1[i] >= 0.0 && t1[i] <= n1 && t2[i] >= 0.0 && t2[i] <= n2;
    out[i] = inside ? partial.row(i).cwiseProduct(b2.row(i)).sum() : cplx(0.0);
  }
  return out;
}

Eigen::MatrixXcd TrigInterpolant2D::on_tensor_grid(const Eigen::VectorXd& t1,
                                                   const Eigen::VectorXd& t2) const {
  const int n1 = static_cast<int>(coeffs_.rows());
  const int n2 = static_cast<int>(coeffs_.cols());
  Eigen::MatrixXcd out = basis_matrix(t1, n1) * coeffs_ * basis_matrix(t2, n2).transpose();
  for (Eigen::Index i = 0; i < t1.size(); ++i) {
    if (t1[i] < 0.0 || t1[i] > n1) out.row(i).setZero();
  }
  for (Eigen::Index k = 0; k < t2.size(); ++k) {
    if (t2[k] < 0.0 || t2[k] > n2) out.col(k).setZero();
  }
  return out;
}

}  // namespace pq::detail
