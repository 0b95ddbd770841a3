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

#include "pq/grid.hpp"

#include <cmath>
#include <sstream>

namespace pq {

PhaseGrid::PhaseGrid(int n_points, double half_width, double hbar)
    : n_(n_points), half_width_(half_width), hbar_(hbar) {
  if (n_points < 8 || n_points % 2 != 0) {
    throw std::invalid_argument("PhaseGrid: n_points must be even and >= 8, got " +
                                std::to_string(n_points));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("PhaseGrid: half_width must be positive");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw std::invalid_argument("PhaseGrid: hbar must be positive");
  }
}

Eigen::VectorXd PhaseGrid::positions() const {
  Eigen::VectorXd out(n_);
  for (int j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

Eigen::VectorXd PhaseGrid::momenta() const {
  Eigen::VectorXd out(n_);
  for (int k = 0; k < n_; ++k) out[k] = p(k);
  return out;
}

PhaseGrid make_grid(int n_points, double half_width, double hbar) {
  return PhaseGrid(n_points, half_width, hbar);
}

void require_same_grid(const PhaseGrid& a, const PhaseGrid& b, const std::string& what) {
  if (a == b) return;
  std::ostringstream msg;
  msg << what << ": grid mismatch (N=" << a.size() << ", L=" << a.half_width()
      << ", hbar=" << a.hbar() << " vs N=" << b.size() << ", L=" << b.half_width()
      << ", hbar=" << b.hbar() << ")";
  throw GridMismatch(msg.str());
}

WaveFunction WaveFunction::from_generator(const PhaseGrid& grid, Generator gen) {
  Eigen::VectorXcd s(grid.size());
  for (int j = 0; j < grid.size(); ++j) s[j] = gen(grid.x(j));
  return WaveFunction{grid, std::move(s), std::move(gen)};
}

WaveFunction WaveFunction::from_samples(const PhaseGrid& grid, Eigen::VectorXcd samples) {
  if (samples.size() != grid.size()) {
    throw GridMismatch("WaveFunction: sample count does not match grid size");
  }
  return WaveFunction{grid, std::move(samples), {}};
}

PhaseFunction PhaseFunction::zeros(const PhaseGrid& grid) {
  return PhaseFunction{grid, Eigen::MatrixXcd::Zero(grid.size(), grid.size())};
}

PhaseFunction PhaseFunction::from_function(const PhaseGrid& grid,
                                           const std::function<cplx(double, double)>& f) {
  PhaseFunction out = zeros(grid);
  for (int j = 0; j < grid.size(); ++j) {
    for (int k = 0; k < grid.size(); ++k) out.values(j, k) = f(grid.x(j), grid.p(k));
  }
  return out;
}

cplx PhaseFunction::integral() const { return values.sum() * grid.cell(); }

double PhaseFunction::sup_norm() const { return values.cwiseAbs().maxCoeff(); }

OperatorMatrix OperatorMatrix::identity(const PhaseGrid& grid) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(grid.size(), grid.size()) / grid.dx();
  return OperatorMatrix{grid, std::move(k)};
}

cplx OperatorMatrix::trace() const { return kernel.trace() * grid.dx(); }

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix{grid, kernel.adjoint()}; }

WaveFunction OperatorMatrix::apply(const WaveFunction& psi) const {
  require_same_grid(grid, psi.grid, "OperatorMatrix::apply");
  return WaveFunction::from_samples(grid, action() * psi.samples);
}

double OperatorMatrix::relative_distance(const OperatorMatrix& reference) const {
  require_same_grid(grid, reference.grid, "OperatorMatrix::relative_distance");
  const double denom = reference.kernel.norm();
  const double diff = (kernel - reference.kernel).norm();
  return denom > 0.0 ? diff / denom : diff;
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_grid(a.grid, b.grid, "compose");
  return OperatorMatrix{a.grid, a.kernel * b.kernel * a.grid.dx()};
}

cplx l2_inner(const WaveFunction& psi, const WaveFunction& chi) {
  require_same_grid(psi.grid, chi.grid, "l2_inner");
  // Eigen's dot conjugates its first argument.
  return chi.samples.dot(psi.samples) * psi.grid.dx();
}

double l2_norm(const WaveFunction& psi) {
  return std::sqrt(psi.samples.squaredNorm() * psi.grid.dx());
}

WaveFunction scale(const WaveFunction& psi, cplx factor) {
  WaveFunction out{psi.grid, psi.samples * factor, {}};
  if (psi.has_generator()) {
    out.generator = [gen = psi.generator, factor](double x) { return factor * gen(x); };
  }
  return out;
}

WaveFunction normalize(const WaveFunction& psi) {
  const double n = l2_norm(psi);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("normalize: state has zero or non-finite norm");
  }
  return scale(psi, 1.0 / n);
}

}  // namespace pq
