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

#include "pq/transforms.hpp"

#include <cmath>

#include "detail/spectral.hpp"
#include "pq/parallel.hpp"

namespace pq {

using detail::Nyquist;

WaveFunction displace(PhasePoint z0, const WaveFunction& psi) {
  const PhaseGrid& g = psi.grid;
  const double hbar = g.hbar();
  if (psi.has_generator()) {
    return WaveFunction::from_generator(g, [gen = psi.generator, z0, hbar](double x) {
      return std::polar(1.0, (z0.p * x - 0.5 * z0.p * z0.x) / hbar) * gen(x - z0.x);
    });
  }
  Eigen::VectorXcd s = (z0.x == 0.0) ? Eigen::VectorXcd(psi.samples)
                                     : detail::fourier_shift(psi.samples, z0.x / g.dx());
  for (int j = 0; j < g.size(); ++j) {
    s[j] *= std::polar(1.0, (z0.p * g.x(j) - 0.5 * z0.p * z0.x) / hbar);
  }
  return WaveFunction{g, std::move(s), {}};
}

Eigen::VectorXcd half_grid_values(const WaveFunction& psi) {
  const PhaseGrid& g = psi.grid;
  if (!psi.has_generator()) return detail::upsample2(psi.samples, Nyquist::one_sided);
  Eigen::VectorXcd h(2 * g.size());
  const double step = 0.5 * g.dx();
  for (int q = 0; q < 2 * g.size(); ++q) h[q] = psi.generator(-g.half_width() + q * step);
  return h;
}

PhaseFunction cross_wigner(const WaveFunction& psi, const WaveFunction& phi) {
  require_same_grid(psi.grid, phi.grid, "cross_wigner");
  const PhaseGrid& g = psi.grid;
  const int n = g.size();
  const Eigen::VectorXcd h = half_grid_values(psi);
  const Eigen::VectorXcd f = half_grid_values(phi);
  const double factor = g.dx() / (2.0 * kPi * g.hbar());

  PhaseFunction out = PhaseFunction::zeros(g);
  parallel_for(0, n, [&](int j) {
    const auto lag = [&](int m) -> cplx {
      const int a = 2 * j + m;
      const int b = 2 * j - m;
      if (a < 0 || a >= 2 * n || b < 0 || b >= 2 * n) return 0.0;
      return h[a] * std::conj(f[b]);
    };
    out.values.row(j) = factor * detail::folded_lag_transform(n, lag).transpose();
  });
  return out;
}

PhaseFunction wigner(const WaveFunction& psi) { return cross_wigner(psi, psi); }

StateEvaluator::StateEvaluator(const WaveFunction& psi)
    : grid_(psi.grid), generator_(psi.generator) {
  if (!generator_) {
    coeffs_ = psi.samples;
    detail::fft_forward(coeffs_);
    coeffs_ /= static_cast<double>(grid_.size());
  }
}

cplx StateEvaluator::operator()(double x) const {
  if (x < -grid_.half_width() || x > grid_.half_width()) return 0.0;
  if (generator_) return generator_(x);
  const double t = (x + grid_.half_width()) / grid_.dx();
  return detail::trig_basis(grid_.size(), t, Nyquist::one_sided) * coeffs_;
}

Eigen::VectorXcd cross_wigner_at(const WaveFunction& psi, const WaveFunction& phi,
                                 const std::vector<PhasePoint>& points) {
  require_same_grid(psi.grid, phi.grid, "cross_wigner_at");
  const PhaseGrid& g = psi.grid;
  const StateEvaluator ev_psi(psi);
  const StateEvaluator ev_phi(phi);
  const int n = g.size();
  const double dx = g.dx();
  const double factor = dx / (2.0 * kPi * g.hbar());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(points.size()));
  parallel_for(0, static_cast<int>(points.size()), [&](int i) {
    const PhasePoint z = points[static_cast<size_t>(i)];
    cplx acc = 0.0;
    for (int m = -n; m < n; ++m) {
      const double y = m * dx;
      const cplx a = ev_psi(z.x + 0.5 * y);
      if (a == 0.0) continue;
      acc += std::polar(1.0, -z.p * y / g.hbar()) * a * std::conj(ev_phi(z.x - 0.5 * y));
    }
    out[i] = acc * factor;
  });
  return out;
}

cplx cross_wigner_at(const WaveFunction& psi, const WaveFunction& phi, double x, double p) {
  return cross_wigner_at(psi, phi, std::vector<PhasePoint>{{x, p}})[0];
}

PhaseFunction cross_ambiguity(const WaveFunction& psi, const WaveFunction& phi) {
  require_same_grid(psi.grid, phi.grid, "cross_ambiguity");
  const PhaseGrid& g = psi.grid;
  const int n = g.size();
  const int c = n / 2;
  const Eigen::VectorXcd h = half_grid_values(psi);
  const Eigen::VectorXcd f = half_grid_values(phi);
  const double factor = g.dx() / (2.0 * kPi * g.hbar());

  PhaseFunction out = PhaseFunction::zeros(g);
  parallel_for(0, n, [&](int j) {
    // y_m = x_m, so psi(y_m + x_j/2) and phi(y_m - x_j/2) sit on half-grid
    // indices 2m + j - c and 2m - j + c.
    Eigen::VectorXcd prod(n);
    for (int m = 0; m < n; ++m) {
      const int a = 2 * m + j - c;
      const int b = 2 * m - j + c;
      const bool inside = a >= 0 && a < 2 * n && b >= 0 && b < 2 * n;
      prod[m] = inside ? h[a] * std::conj(f[b]) : cplx(0.0);
    }
    out.values.row(j) = factor * detail::centered_dft(prod, -1).transpose();
  });
  return out;
}

PhaseFunction symplectic_fourier(const PhaseFunction& a) {
  const PhaseGrid& g = a.grid;
  const int n = g.size();
  // sigma(z, z') / hbar on the grid is 2 pi [(k - c)(j' - c) - (j - c)(l' - c)] / N:
  // x' is paired with the output momentum index and p' with the output
  // position index, with opposite signs.
  Eigen::MatrixXcd over_x(n, n);  // (k, l')
  for (int l = 0; l < n; ++l) over_x.col(l) = detail::centered_dft(a.values.col(l), -1);
  PhaseFunction out = PhaseFunction::zeros(g);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXcd row = over_x.row(k).transpose();
    out.values.col(k) = detail::centered_dft(row, +1) / static_cast<double>(n);
  }
  return out;
}

WaveFunction standard_window(const WindowKind& kind, const PhaseGrid& grid) {
  const double hbar = grid.hbar();
  const double amp = std::pow(kPi * hbar, -0.25);
  return std::visit(
      [&](const auto& k) -> WaveFunction {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, window::Gaussian>) {
          return WaveFunction::from_generator(
              grid, [amp, hbar](double x) { return cplx(amp * std::exp(-x * x / (2.0 * hbar))); });
        } else if constexpr (std::is_same_v<K, window::Hermite1>) {
          const double c = amp * std::sqrt(2.0 / hbar);
          return WaveFunction::from_generator(
              grid, [c, hbar](double x) { return cplx(c * x * std::exp(-x * x / (2.0 * hbar))); });
        } else {
          const PhasePoint z0 = k.z0;
          return WaveFunction::from_generator(grid, [amp, hbar, z0](double x) {
            const double u = x - z0.x;
            return std::polar(amp * std::exp(-u * u / (2.0 * hbar)), z0.p * u / hbar);
          });
        }
      },
      kind);
}

WindowKind parse_window_kind(const std::string& name, PhasePoint z0) {
  if (name == "gaussian") return window::Gaussian{};
  if (name == "hermite1") return window::Hermite1{};
  if (name == "displaced_gaussian") return window::DisplacedGaussian{z0};
  throw std::invalid_argument("unknown window kind '" + name + "'");
}

}  // namespace pq
