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


#include "pq/weyl.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "detail/spectral.hpp"
#include "pq/parallel.hpp"

namespace pq {

using detail::Nyquist;

OperatorMatrix weyl_quantize(const WeylSymbol& a) {
  const PhaseGrid& g = a.grid;
  const int n = g.size();

  // Row q of `spectra` holds the backward FFT over p of a(x_q/2, .), where
  // x_q/2 = -L + q dx/2 is the q-th half-grid position.
  Eigen::MatrixXcd spectra(2 * n, n);
  for (int k = 0; k < n; ++k) {
    spectra.col(k) = detail::upsample2(a.values.col(k), Nyquist::split);
  }
  parallel_for(0, 2 * n, [&](int q) {
    Eigen::VectorXcd row = spectra.row(q).transpose();
    detail::fft_backward(row);
    spectra.row(q) = row.transpose();
  });

  const double scale = 1.0 / (n * g.dx());
  OperatorMatrix out{g, Eigen::MatrixXcd::Zero(n, n)};
  parallel_for(0, n, [&](int j) {
    for (int k = 0; k < n; ++k) {
      const int d = j - k;
      const int col = ((d % n) + n) % n;
      const double sign = (std::abs(d) % 2 == 0) ? 1.0 : -1.0;
      const int q = j + k;
      cplx v;
      if (2 * std::abs(d) < n) {
        v = spectra(q, col);
      } else if (2 * std::abs(d) > n) {
        v = spectra((q + n) % (2 * n), col);
      } else {
        v = 0.5 * (spectra(q, col) + spectra((q + n) % (2 * n), col));
      }
      out.kernel(j, k) = sign * scale * v;
    }
  });
  return out;
}

WeylSymbol weyl_symbol(const OperatorMatrix& op) {
  const PhaseGrid& g = op.grid;
  const int n = g.size();

  // Kernel on the 2N x 2N half-grid. The second argument carries the
  // conjugated convention so that translation-invariant kernels stay
  // functions of x - y after interpolation.
  Eigen::MatrixXcd cols(2 * n, n);
  for (int k = 0; k < n; ++k) cols.col(k) = detail::upsample2(op.kernel.col(k), Nyquist::one_sided);
  Eigen::MatrixXcd half(2 * n, 2 * n);
  parallel_for(0, 2 * n, [&](int r) {
    const Eigen::VectorXcd row = cols.row(r).transpose().conjugate();
    half.row(r) = detail::upsample2(row, Nyquist::one_sided).conjugate().transpose();
  });

  WeylSymbol out = PhaseFunction::zeros(g);
  const double dx = g.dx();
  parallel_for(0, n, [&](int j) {
    const auto lag = [&](int m) -> cplx {
      const int u = 2 * j + m;
      const int v = 2 * j - m;
      if (u < 0 || u >= 2 * n || v < 0 || v >= 2 * n) return 0.0;
      return half(u, v);
    };
    out.values.row(j) = dx * detail::folded_lag_transform(n, lag).transpose();
  });
  return out;
}

OperatorMatrix projector(const WaveFunction& phi) {
  const double norm = l2_norm(phi);
  if (!(std::abs(norm - 1.0) <= 1e-8)) {
    std::ostringstream msg;
    msg << "projector: window must have unit norm, got " << norm;
    throw std::invalid_argument(msg.str());
  }
  return OperatorMatrix{phi.grid, phi.samples * phi.samples.adjoint()};
}

double trace_via_symbol(const WeylSymbol& a) {
  return a.integral().real() / (2.0 * kPi * a.grid.hbar());
}

}  // namespace pq
