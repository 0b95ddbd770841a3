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


#include "pq/statecheck.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pq/weyl.hpp"

namespace pq {

namespace {

double defect(const OperatorMatrix& a) {
  return (a.kernel - a.kernel.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const OperatorMatrix& a, const char* what) {
  const double d = defect(a);
  const double scale = std::max(1.0, a.kernel.cwiseAbs().maxCoeff());
  if (d > 1e-8 * scale) {
    std::ostringstream msg;
    msg << what << ": operator is not hermitian (sup |K - K^H| = " << d << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Eigen returns ascending order; we want descending.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solve(const OperatorMatrix& a, bool vectors) {
  const Eigen::MatrixXcd sym = 0.5 * (a.kernel + a.kernel.adjoint()) * a.grid.dx();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      sym, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver did not converge");
  return es;
}

}  // namespace

DensityReport validate_density(const OperatorMatrix& a, double tol_trace, double tol_psd) {
  if (!(tol_trace > 0.0) || !(tol_psd > 0.0)) {
    throw std::invalid_argument("validate_density: tolerances must be positive");
  }
  DensityReport r;
  r.tol_trace = tol_trace;
  r.tol_psd = tol_psd;
  r.hermiticity_defect = defect(a);
  r.trace = a.trace().real();
  r.trace_defect = std::abs(r.trace - 1.0);

  const auto es = solve(a, false);
  const Eigen::VectorXd ev = es.eigenvalues().reverse();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  r.min_eigenvalue = ev.minCoeff();
  const double threshold = tol_psd * std::max(1.0, ev.maxCoeff());
  for (double l : r.eigenvalues) {
    if (l >= threshold) r.purity += l * l;
  }
  r.verdict = r.hermiticity_defect <= r.tol_hermitian && r.trace_defect <= tol_trace &&
              r.min_eigenvalue >= -threshold;
  return r;
}

Spectrum spectral(const OperatorMatrix& a) {
  require_hermitian(a, "spectral");
  const auto es = solve(a, true);
  const int n = a.grid.size();
  Spectrum s;
  s.eigenvalues = es.eigenvalues().reverse();
  const double inv_sqrt_dx = 1.0 / std::sqrt(a.grid.dx());
  s.eigenvectors.reserve(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    s.eigenvectors.push_back(WaveFunction::from_samples(a.grid, es.eigenvectors().col(i) * inv_sqrt_dx));
  }
  return s;
}

PhaseFunction wigner_of_density(const OperatorMatrix& a) {
  require_hermitian(a, "wigner_of_density");
  PhaseFunction w = weyl_symbol(a);
  w.values /= 2.0 * kPi * a.grid.hbar();
  return w;
}

}  // namespace pq
