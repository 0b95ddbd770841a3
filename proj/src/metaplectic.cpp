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


#include "pq/metaplectic.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "detail/spectral.hpp"
#include "pq/diagnostics.hpp"
#include "pq/parallel.hpp"
#include "pq/weyl.hpp"
#include "pq/toeplitz.hpp"

namespace pq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sign_of(const mp::Fourier& f) { return f.inverse ? 1.0 : -1.0; }

WaveFunction apply_fourier(const mp::Fourier& f, const WaveFunction& psi) {
  const PhaseGrid& g = psi.grid;
  const int n = g.size();
  const double hbar = g.hbar();
  const double s = sign_of(f);
  const double amp = g.dx() / std::sqrt(2.0 * kPi * hbar);
  auto samples = std::make_shared<const Eigen::VectorXcd>(psi.samples);
  auto xs = std::make_shared<const Eigen::VectorXd>(g.positions());
  Generator gen = [samples, xs, s, amp, hbar, n](double xi) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::polar(1.0, s * xi * (*xs)[j] / hbar) * (*samples)[j];
    return amp * acc;
  };
  Eigen::VectorXcd out(n);
  parallel_for(0, n, [&](int m) { out[m] = gen(g.x(m)); });
  return WaveFunction{g, std::move(out), std::move(gen)};
}

WaveFunction apply_chirp(const mp::Chirp& ch, const WaveFunction& psi) {
  const PhaseGrid& g = psi.grid;
  const double c = ch.c;
  const double hbar = g.hbar();
  auto ev = std::make_shared<const StateEvaluator>(psi);
  Generator gen = [ev, c, hbar](double x) {
    return std::polar(1.0, c * x * x / (2.0 * hbar)) * (*ev)(x);
  };
  Eigen::VectorXcd out(g.size());
  for (int j = 0; j < g.size(); ++j) {
    out[j] = std::polar(1.0, c * g.x(j) * g.x(j) / (2.0 * hbar)) * psi.samples[j];
  }
  return WaveFunction{g, std::move(out), std::move(gen)};
}

WaveFunction apply_dilate(const mp::Dilate& d, const WaveFunction& psi) {
  const PhaseGrid& g = psi.grid;
  const double lambda = d.lambda;
  const double amp = 1.0 / std::sqrt(lambda);
  auto ev = std::make_shared<const StateEvaluator>(psi);
  const double l = g.half_width();
  Generator gen = [ev, lambda, amp, l](double x) {
    if (x < -l || x >= l) return cplx(0.0);
    return amp * (*ev)(x / lambda);
  };
  WaveFunction out = WaveFunction::from_generator(g, std::move(gen));
  const double before = psi.samples.squaredNorm();
  const double lost = (before - out.samples.squaredNorm()) * g.dx();
  if (lost > 1e-12) {
    std::ostringstream msg;
    msg << "dilate(" << lambda << ") pushes " << lost << " of the mass outside the box";
    warn(msg.str());
  }
  return out;
}

}  // namespace

void MetaplecticWord::validate() const {
  for (const auto& g : generators) {
    if (const auto* d = std::get_if<mp::Dilate>(&g)) {
      if (!(d->lambda > 0.0) || !std::isfinite(d->lambda)) {
        throw std::invalid_argument("dilate parameter must be positive and finite");
      }
    } else if (const auto* c = std::get_if<mp::Chirp>(&g)) {
      if (!std::isfinite(c->c)) throw std::invalid_argument("chirp parameter must be finite");
    }
  }
}

MetaplecticGenerator parse_generator(const std::string& text) {
  if (text == "fourier") return mp::Fourier{false};
  if (text == "fourier_inv") return mp::Fourier{true};
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (colon == std::string::npos || (head != "chirp" && head != "dilate")) {
    throw std::invalid_argument("unknown metaplectic generator '" + text + "'");
  }
  const std::string arg = text.substr(colon + 1);
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad parameter in metaplectic generator '" + text + "'");
  }
  if (head == "chirp") return mp::Chirp{v};
  if (!(v > 0.0)) throw std::invalid_argument("dilate parameter must be positive in '" + text + "'");
  return mp::Dilate{v};
}

MetaplecticWord parse_word(const std::vector<std::string>& items) {
  MetaplecticWord w;
  for (const auto& s : items) w.generators.push_back(parse_generator(s));
  return w;
}

std::string to_string(const MetaplecticGenerator& g) {
  std::ostringstream out;
  out.precision(17);
  std::visit(overloaded{[&](const mp::Fourier& f) { out << (f.inverse ? "fourier_inv" : "fourier"); },
                        [&](const mp::Chirp& c) { out << "chirp:" << c.c; },
                        [&](const mp::Dilate& d) { out << "dilate:" << d.lambda; }},
             g);
  return out.str();
}

MetaplecticWord concat(const MetaplecticWord& a, const MetaplecticWord& b) {
  MetaplecticWord out = a;
  out.generators.insert(out.generators.end(), b.generators.begin(), b.generators.end());
  return out;
}

MetaplecticWord inverse(const MetaplecticWord& word) {
  MetaplecticWord out;
  for (auto it = word.generators.rbegin(); it != word.generators.rend(); ++it) {
    out.generators.push_back(std::visit(
        overloaded{[](const mp::Fourier& f) -> MetaplecticGenerator { return mp::Fourier{!f.inverse}; },
                   [](const mp::Chirp& c) -> MetaplecticGenerator { return mp::Chirp{-c.c}; },
                   [](const mp::Dilate& d) -> MetaplecticGenerator { return mp::Dilate{1.0 / d.lambda}; }},
        *it));
  }
  return out;
}

// W(F psi)(x, p) = W psi(-p, x), i.e. S^-1 (x, p) = (-p, x).
const SymplecticMat kFourierProjection = (SymplecticMat() << 0.0, 1.0, -1.0, 0.0).finished();

SymplecticMat generator_symplectic(const MetaplecticGenerator& g) {
  return std::visit(
      overloaded{[](const mp::Fourier& f) -> SymplecticMat {
                   return f.inverse ? SymplecticMat(-kFourierProjection) : kFourierProjection;
                 },
                 [](const mp::Chirp& c) -> SymplecticMat {
                   return (SymplecticMat() << 1.0, 0.0, c.c, 1.0).finished();
                 },
                 [](const mp::Dilate& d) -> SymplecticMat {
                   return (SymplecticMat() << d.lambda, 0.0, 0.0, 1.0 / d.lambda).finished();
                 }},
      g);
}

SymplecticMat word_symplectic(const MetaplecticWord& word) {
  SymplecticMat s = SymplecticMat::Identity();
  for (const auto& g : word.generators) s = s * generator_symplectic(g);
  return s;
}

WaveFunction metaplectic_apply(const MetaplecticWord& word, const WaveFunction& psi) {
  word.validate();
  WaveFunction cur = psi;
  for (auto it = word.generators.rbegin(); it != word.generators.rend(); ++it) {
    cur = std::visit(overloaded{[&](const mp::Fourier& f) { return apply_fourier(f, cur); },
                                [&](const mp::Chirp& c) { return apply_chirp(c, cur); },
                                [&](const mp::Dilate& d) { return apply_dilate(d, cur); }},
                     *it);
  }
  return cur;
}

Eigen::MatrixXcd metaplectic_matrix(const MetaplecticWord& word, const PhaseGrid& grid) {
  word.validate();
  const int n = grid.size();
  const double hbar = grid.hbar();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
  for (auto it = word.generators.rbegin(); it != word.generators.rend(); ++it) {
    Eigen::MatrixXcd g(n, n);
    if (const auto* f = std::get_if<mp::Fourier>(&*it)) {
      const double amp = grid.dx() / std::sqrt(2.0 * kPi * hbar);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) g(r, c) = amp * std::polar(1.0, sign_of(*f) * grid.x(r) * grid.x(c) / hbar);
      }
    } else if (const auto* ch = std::get_if<mp::Chirp>(&*it)) {
      g.setZero();
      for (int r = 0; r < n; ++r) g(r, r) = std::polar(1.0, ch->c * grid.x(r) * grid.x(r) / (2.0 * hbar));
    } else {
      const double lambda = std::get<mp::Dilate>(*it).lambda;
      // Row r evaluates the interpolant of the samples at x_r / lambda:
      // basis(t_r) . DFT / N.
      Eigen::MatrixXcd dft(n, n);
      for (int c = 0; c < n; ++c) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Unit(n, c);
        detail::fft_forward(e);
        dft.col(c) = e / static_cast<double>(n);
      }
      for (int r = 0; r < n; ++r) {
        const double x = grid.x(r) / lambda;
        if (x < -grid.half_width() || x > grid.half_width()) {
          g.row(r).setZero();
          continue;
        }
        const double t = (x + grid.half_width()) / grid.dx();
        g.row(r) = detail::trig_basis(n, t, detail::Nyquist::one_sided) * dft / std::sqrt(lambda);
      }
    }
    m = g * m;
  }
  return m;
}

OperatorMatrix conjugate(const MetaplecticWord& word, const OperatorMatrix& op) {
  const Eigen::MatrixXcd s = metaplectic_matrix(word, op.grid);
  const Eigen::MatrixXcd s_inv = metaplectic_matrix(inverse(word), op.grid);
  return OperatorMatrix{op.grid, s * op.kernel * s_inv};
}

PhaseFunction compose_linear(const PhaseFunction& a, const SymplecticMat& s) {
  const PhaseGrid& g = a.grid;
  const int n = g.size();
  const SymplecticMat s_inv = s.inverse();
  Eigen::VectorXd t1(n * n);
  Eigen::VectorXd t2(n * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector2d z = s_inv * Eigen::Vector2d(g.x(j), g.p(k));
      t1[j * n + k] = (z[0] + g.half_width()) / g.dx();
      t2[j * n + k] = z[1] / g.dp() + n / 2;
    }
  }
  const detail::TrigInterpolant2D interp(a.values, detail::Nyquist::split);
  const Eigen::VectorXcd v = interp.at_points(t1, t2);
  PhaseFunction out = PhaseFunction::zeros(g);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) out.values(j, k) = v[j * n + k];
  }
  return out;
}

double weyl_covariance_residual(const PhaseFunction& a, const MetaplecticWord& word) {
  const OperatorMatrix lhs = weyl_quantize(compose_linear(a, word_symplectic(word)));
  return conjugate(word, weyl_quantize(a)).relative_distance(lhs);
}

double toeplitz_covariance_residual(const PhaseFunction& a, const WaveFunction& phi,
                                    const MetaplecticWord& word) {
  const OperatorMatrix lhs = toeplitz_conv(compose_linear(a, word_symplectic(word)), phi);
  const WaveFunction pulled = metaplectic_apply(inverse(word), phi);
  return conjugate(word, toeplitz_conv(a, pulled)).relative_distance(lhs);
}

double wigner_covariance_residual(const WaveFunction& psi, const MetaplecticWord& word,
                                  const SymplecticMat& s_used) {
  const PhaseGrid& g = psi.grid;
  const int n = g.size();
  const PhaseFunction lhs = wigner(metaplectic_apply(word, psi));
  const SymplecticMat s_inv = s_used.inverse();
  std::vector<PhasePoint> pts;
  pts.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector2d z = s_inv * Eigen::Vector2d(g.x(j), g.p(k));
      pts.push_back({z[0], z[1]});
    }
  }
  const Eigen::VectorXcd rhs = cross_wigner_at(psi, psi, pts);
  double diff = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) diff = std::max(diff, std::abs(lhs.values(j, k) - rhs[j * n + k]));
  }
  return diff / wigner(psi).sup_norm();
}

double wigner_covariance_residual(const WaveFunction& psi, const MetaplecticWord& word) {
  return wigner_covariance_residual(psi, word, word_symplectic(word));
}

double displacement_conjugation_residual(const MetaplecticWord& word, PhasePoint z,
                                         const WaveFunction& phi) {
  const WaveFunction lhs =
      metaplectic_apply(word, displace(z, metaplectic_apply(inverse(word), phi)));
  const Eigen::Vector2d sz = word_symplectic(word) * Eigen::Vector2d(z.x, z.p);
  const WaveFunction rhs = displace({sz[0], sz[1]}, phi);
  const PhaseFunction wl = wigner(lhs);
  const PhaseFunction wr = wigner(rhs);
  return (wl.values - wr.values).cwiseAbs().maxCoeff() / wigner(phi).sup_norm();
}

}  // namespace pq
