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


#include "pq/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "detail/spectral.hpp"
#include "pq/diagnostics.hpp"
#include "pq/parallel.hpp"
#include "pq/weyl.hpp"

namespace pq {

namespace {

void require_unit_window(const WaveFunction& phi, const char* what) {
  const double norm = l2_norm(phi);
  if (!(std::abs(norm - 1.0) <= 1e-8)) {
    std::ostringstream msg;
    msg << what << ": window must have unit norm, got " << norm;
    throw std::invalid_argument(msg.str());
  }
}

double border_max(const Eigen::MatrixXcd& v) {
  const Eigen::Index n = v.rows();
  const Eigen::Index m = v.cols();
  return std::max({v.row(0).cwiseAbs().maxCoeff(), v.row(n - 1).cwiseAbs().maxCoeff(),
                   v.col(0).cwiseAbs().maxCoeff(), v.col(m - 1).cwiseAbs().maxCoeff()});
}

void check_decay(const PhaseFunction& f, const char* name) {
  const double peak = f.sup_norm();
  if (peak == 0.0) return;
  const double edge = border_max(f.values);
  if (edge > 1e-12 * peak) {
    std::ostringstream msg;
    msg << name << " has not decayed at the grid border (border/peak = " << edge / peak
        << "); the circular convolution wraps around";
    warn(msg.str());
  }
}

// Cyclic roll: out[m] = v[m - s mod N].
Eigen::VectorXcd roll(const Eigen::VectorXcd& v, int s) {
  const int n = static_cast<int>(v.size());
  Eigen::VectorXcd out(n);
  for (int m = 0; m < n; ++m) out[m] = v[((m - s) % n + n) % n];
  return out;
}

}  // namespace

ProbabilityDensity ProbabilityDensity::from_values(const PhaseFunction& raw) {
  const double peak = raw.sup_norm();
  if (!std::isfinite(peak)) throw std::invalid_argument("probability density has non-finite values");
  if (raw.values.imag().cwiseAbs().maxCoeff() > 1e-12 * peak) {
    throw std::invalid_argument("probability density must be real");
  }
  if (raw.values.real().minCoeff() < 0.0) {
    throw std::invalid_argument("probability density has negative values");
  }
  const double mass = raw.integral().real();
  if (!(mass > 0.0)) throw std::invalid_argument("probability density has zero mass");
  PhaseFunction mu{raw.grid, raw.values.real().cast<cplx>() / mass};
  return ProbabilityDensity{std::move(mu), mass};
}

void LatticeMixture::validate() const {
  if (atoms.empty()) throw std::invalid_argument("lattice mixture has no atoms");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!(a.weight >= 0.0)) throw std::invalid_argument("lattice mixture has a negative weight");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "lattice weights must sum to 1, got " << total;
    throw std::invalid_argument(msg.str());
  }
}

int default_thinning(const PhaseGrid& grid) { return grid.size() > 64 ? 2 : 1; }

OperatorMatrix toeplitz_direct(const PhaseFunction& a, const WaveFunction& phi, int thinning) {
  require_same_grid(a.grid, phi.grid, "toeplitz_direct");
  require_unit_window(phi, "toeplitz_direct");
  const PhaseGrid& g = a.grid;
  const int n = g.size();
  const int t = thinning > 0 ? thinning : default_thinning(g);
  if (n % t != 0) throw std::invalid_argument("toeplitz_direct: thinning must divide N");
  const int c = n / 2;
  const double weight = g.cell() * t * t;
  const int rows = n / t;

  // Fixed chunking over node rows keeps the summation order independent of
  // the thread count.
  const int chunks = std::min(rows, 8);
  std::vector<Eigen::MatrixXcd> partial(static_cast<size_t>(chunks));
  parallel_for(0, chunks, [&](int ch) {
    const int r0 = rows * ch / chunks;
    const int r1 = rows * (ch + 1) / chunks;
    const int cols_per_row = n / t;
    Eigen::MatrixXcd v(n, (r1 - r0) * cols_per_row);
    Eigen::MatrixXcd vw(n, v.cols());
    Eigen::Index col = 0;
    for (int r = r0; r < r1; ++r) {
      const int j = r * t;
      const Eigen::VectorXcd shifted = roll(phi.samples, j - c);
      for (int k = 0; k < n; k += t) {
        const double p = g.p(k);
        for (int m = 0; m < n; ++m) {
          v(m, col) = std::polar(1.0, p * g.x(m) / g.hbar()) * shifted[m];
        }
        vw.col(col) = v.col(col) * (a.values(j, k) * weight);
        ++col;
      }
    }
    partial[static_cast<size_t>(ch)].noalias() = vw * v.adjoint();
  });
  OperatorMatrix out{g, Eigen::MatrixXcd::Zero(n, n)};
  for (const auto& p : partial) out.kernel += p;
  return out;
}

PhaseFunction convolve(const PhaseFunction& a, const PhaseFunction& b) {
  require_same_grid(a.grid, b.grid, "convolve");
  const int n = a.grid.size();
  const int c = n / 2;
  Eigen::MatrixXcd fa = a.values;
  Eigen::MatrixXcd fb(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) fb(j, k) = b.values((j + c) % n, (k + c) % n);
  }
  detail::fft2_forward(fa);
  detail::fft2_forward(fb);
  Eigen::MatrixXcd prod = fa.cwiseProduct(fb);
  detail::fft2_backward(prod);
  return PhaseFunction{a.grid, prod * (a.grid.cell() / (static_cast<double>(n) * n))};
}

OperatorMatrix toeplitz_conv(const PhaseFunction& a, const WaveFunction& phi) {
  require_same_grid(a.grid, phi.grid, "toeplitz_conv");
  require_unit_window(phi, "toeplitz_conv");
  const PhaseFunction w = wigner(phi);
  check_decay(a, "symbol");
  check_decay(w, "window Wigner function");
  OperatorMatrix op = weyl_quantize(convolve(a, w));
  op.kernel *= 2.0 * kPi * a.grid.hbar();
  return op;
}

PhaseFunction shift_phase_function(const PhaseFunction& f, PhasePoint z0) {
  const PhaseGrid& g = f.grid;
  const int n = g.size();
  PhaseFunction out = f;
  if (z0.x != 0.0) {
    for (int k = 0; k < n; ++k) {
      out.values.col(k) = detail::fourier_shift(out.values.col(k), z0.x / g.dx());
    }
  }
  if (z0.p != 0.0) {
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXcd row = out.values.row(j).transpose();
      out.values.row(j) = detail::fourier_shift(row, z0.p / g.dp()).transpose();
    }
  }
  return out;
}

DensityState density_from_measure(const ProbabilityDensity& mu, const WaveFunction& phi,
                                  ToeplitzPath path, int thinning) {
  require_same_grid(mu.mu.grid, phi.grid, "density_from_measure");
  require_unit_window(phi, "density_from_measure");
  const double two_pi_hbar = 2.0 * kPi * phi.grid.hbar();
  if (path == ToeplitzPath::conv) {
    const PhaseFunction w = wigner(phi);
    check_decay(mu.mu, "measure");
    check_decay(w, "window Wigner function");
    PhaseFunction rho_w = convolve(mu.mu, w);
    const double raw = rho_w.integral().real();
    rho_w.values /= raw;
    PhaseFunction symbol = rho_w;
    symbol.values *= two_pi_hbar;
    return DensityState{weyl_quantize(symbol), rho_w, raw, 1};
  }
  const int t = thinning > 0 ? thinning : default_thinning(phi.grid);
  OperatorMatrix rho = toeplitz_direct(mu.mu, phi, t);
  const double raw = rho.trace().real();
  rho.kernel /= raw;
  PhaseFunction rho_w = weyl_symbol(rho);
  rho_w.values /= two_pi_hbar;
  return DensityState{std::move(rho), std::move(rho_w), raw, t};
}

DensityState density_from_measure(const LatticeMixture& mix, const WaveFunction& phi) {
  return lattice_mixed_state(mix, phi);
}

DensityState lattice_mixed_state(const LatticeMixture& mix, const WaveFunction& phi) {
  mix.validate();
  require_unit_window(phi, "lattice_mixed_state");
  const PhaseGrid& g = phi.grid;
  const int n = g.size();
  OperatorMatrix rho{g, Eigen::MatrixXcd::Zero(n, n)};
  PhaseFunction rho_w = PhaseFunction::zeros(g);
  for (const auto& atom : mix.atoms) {
    if (atom.weight == 0.0) continue;
    // W(T(z) phi) = W phi(. - z). Transforming the displaced state avoids a
    // band-limited shift of W phi in p, whose lag product need not have
    // decayed at |y| = L.
    const WaveFunction shifted = displace(atom.z, phi);
    rho.kernel += atom.weight * shifted.samples * shifted.samples.adjoint();
    rho_w.values += atom.weight * wigner(shifted).values;
  }
  const double raw = rho.trace().real();
  return DensityState{std::move(rho), std::move(rho_w), raw, 1};
}

}  // namespace pq
