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


#include "pq/modspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "detail/spectral.hpp"
#include "pq/parallel.hpp"
#include "pq/transforms.hpp"

namespace pq {

namespace {

// Largest |coordinate| along each axis where |a| exceeds 1e-12 of its peak.
std::pair<double, double> support_extent(const PhaseFunction& a) {
  const PhaseGrid& g = a.grid;
  const double peak = a.sup_norm();
  double rx = 0.0;
  double rp = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    for (int k = 0; k < g.size(); ++k) {
      if (std::abs(a.values(j, k)) > 1e-12 * peak) {
        rx = std::max(rx, std::abs(g.x(j)));
        rp = std::max(rp, std::abs(g.p(k)));
      }
    }
  }
  return {rx, rp};
}

struct Transform4 {
  double sup_integral = 0.0;
  double full_integral = 0.0;
  double rx = 0.0;
  double rp = 0.0;
};

Transform4 cross_wigner_4d(const PhaseFunction& a, double b_scale, int m) {
  if (m < 8) {
    throw std::invalid_argument("modulation norm needs at least 8 points per axis, got " +
                                std::to_string(m));
  }
  if (!(b_scale > 0.0)) throw std::invalid_argument("b_scale must be positive");
  const PhaseGrid& g = a.grid;
  const double hbar = g.hbar();

  const double b_reach = b_scale * std::sqrt(2.0 * std::log(1e12));
  const auto [ax, ap] = support_extent(a);
  Transform4 out;
  out.rx = std::min(std::max(ax, b_reach), g.half_width());
  out.rp = std::min(std::max(ap, b_reach), g.momentum_half_width());
  const double h1 = 2.0 * out.rx / m;
  const double h2 = 2.0 * out.rp / m;

  // a on the 2m x 2m half-lattice, in fractional grid-index coordinates.
  Eigen::VectorXd t1(2 * m);
  Eigen::VectorXd t2(2 * m);
  for (int q = 0; q < 2 * m; ++q) {
    t1[q] = (-out.rx + 0.5 * q * h1 + g.half_width()) / g.dx();
    t2[q] = (-out.rp + 0.5 * q * h2) / g.dp() + g.size() / 2;
  }
  const detail::TrigInterpolant2D interp(a.values, detail::Nyquist::split);
  const Eigen::MatrixXcd a_half = interp.on_tensor_grid(t1, t2);

  const double b_amp = 1.0 / (std::sqrt(kPi) * b_scale);
  const auto b = [&](int q1, int q2) {
    const double x = -out.rx + 0.5 * q1 * h1;
    const double p = -out.rp + 0.5 * q2 * h2;
    return b_amp * std::exp(-(x * x + p * p) / (2.0 * b_scale * b_scale));
  };

  const double factor = h1 * h2 / std::pow(2.0 * kPi * hbar, 2);
  const double dzeta = (2.0 * kPi * hbar / (m * h1)) * (2.0 * kPi * hbar / (m * h2));
  std::vector<double> sup(static_cast<size_t>(m) * m);
  std::vector<double> full(static_cast<size_t>(m) * m);
  parallel_for(0, m * m, [&](int idx) {
    const int j1 = idx / m;
    const int j2 = idx % m;
    Eigen::MatrixXcd folded = Eigen::MatrixXcd::Zero(m, m);
    for (int m1 = -m; m1 < m; ++m1) {
      const int u1 = 2 * j1 + m1;
      if (u1 < 0 || u1 >= 2 * m) continue;
      for (int m2 = -m; m2 < m; ++m2) {
        const int u2 = 2 * j2 + m2;
        if (u2 < 0 || u2 >= 2 * m) continue;
        const cplx v = a_half(u1, u2) * b(2 * j1 - m1, 2 * j2 - m2);
        const int r1 = (m1 + m) % m;
        const int r2 = (m2 + m) % m;
        folded(r1, r2) += ((r1 + r2) % 2 == 0) ? v : -v;
      }
    }
    detail::fft2_forward(folded);
    const Eigen::MatrixXd mag = folded.cwiseAbs() * factor;
    sup[static_cast<size_t>(idx)] = mag.maxCoeff();
    full[static_cast<size_t>(idx)] = mag.sum() * dzeta;
  });
  for (size_t i = 0; i < sup.size(); ++i) {
    out.sup_integral += sup[i];
    out.full_integral += full[i];
  }
  out.sup_integral *= h1 * h2;
  out.full_integral *= h1 * h2;
  return out;
}

NormEstimate describe(double value, double b_scale, int m, const Transform4& t) {
  NormEstimate est;
  est.value = value;
  std::ostringstream id;
  id << "gaussian_b(scale=" << b_scale << ")";
  est.window_id = id.str();
  std::ostringstream res;
  res << m << "x" << m << " z-lattice on [-" << t.rx << "," << t.rx << "]x[-" << t.rp << ","
      << t.rp << "], " << m << "x" << m << " zeta-lattice";
  est.resolution = res.str();
  est.points = m;
  est.box_x = t.rx;
  est.box_p = t.rp;
  return est;
}

}  // namespace

NormEstimate m1_norm(const WaveFunction& psi, const WaveFunction& phi) {
  require_same_grid(psi.grid, phi.grid, "m1_norm");
  const PhaseFunction w = cross_wigner(psi, phi);
  NormEstimate est;
  est.value = w.values.cwiseAbs().sum() * psi.grid.cell();
  est.window_id = "phi";
  std::ostringstream res;
  res << psi.grid.size() << "x" << psi.grid.size() << " phase grid";
  est.resolution = res.str();
  est.points = psi.grid.size();
  est.box_x = psi.grid.half_width();
  est.box_p = psi.grid.momentum_half_width();
  return est;
}

NormEstimate m1inf_norm(const PhaseFunction& a, double b_scale, int points) {
  const Transform4 t = cross_wigner_4d(a, b_scale, points);
  return describe(t.sup_integral, b_scale, points, t);
}

NormEstimate m1_phase_norm(const PhaseFunction& a, double b_scale, int points) {
  const Transform4 t = cross_wigner_4d(a, b_scale, points);
  return describe(t.full_integral, b_scale, points, t);
}

}  // namespace pq
