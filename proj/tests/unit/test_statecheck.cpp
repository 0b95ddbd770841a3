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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "pq/statecheck.hpp"
#include "pq/toeplitz.hpp"
#include "pq/transforms.hpp"
#include "pq/weyl.hpp"
#include "support/oracles.hpp"

namespace pq {
namespace {

const PhaseGrid kGrid(128, 8.0, 1.0);

// Anti-Wick quantization of a variance-1 Gaussian with the ground-state
// window: Wigner variance 3/2, so rho = (1 - q) sum q^k |h_k)(h_k| with q = 1/2.
DensityState thermal() {
  const PhaseFunction raw = PhaseFunction::from_function(kGrid, [](double x, double p) {
    return cplx(std::exp(-0.5 * (x * x + p * p)));
  });
  return density_from_measure(ProbabilityDensity::from_values(raw),
                              standard_window(window::Gaussian{}, kGrid), ToeplitzPath::conv);
}

TEST(ValidateDensity, Projector) {
  for (const WindowKind& k : std::vector<WindowKind>{window::Gaussian{}, window::Hermite1{},
                                                     window::DisplacedGaussian{{1.0, 0.5}}}) {
    const DensityReport r = validate_density(projector(standard_window(k, kGrid)));
    EXPECT_TRUE(r.verdict);
    EXPECT_NEAR(r.trace, 1.0, 1e-12);
    EXPECT_NEAR(r.purity, 1.0, 1e-12);
    EXPECT_NEAR(r.eigenvalues.front(), 1.0, 1e-12);
    EXPECT_LE(r.hermiticity_defect, 1e-12);
    EXPECT_GE(r.min_eigenvalue, -1e-12);
    EXPECT_EQ(r.eigenvalues.size(), 128u);
  }
}

TEST(ValidateDensity, ThermalState) {
  const DensityReport r = validate_density(thermal().rho);
  EXPECT_TRUE(r.verdict);
  EXPECT_NEAR(r.trace, 1.0, 1e-12);
  EXPECT_NEAR(r.purity, 1.0 / 3.0, 1e-8);
  for (int k = 0; k < 6; ++k) EXPECT_NEAR(r.eigenvalues[k], std::pow(0.5, k + 1), 1e-8) << k;
}

TEST(ValidateDensity, NegativeEigenvalueCounterexample) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(128, 128);
  k(0, 0) = 1.5 / kGrid.dx();
  k(1, 1) = -0.5 / kGrid.dx();
  const DensityReport r = validate_density(OperatorMatrix{kGrid, k});
  EXPECT_FALSE(r.verdict);
  EXPECT_NEAR(r.trace, 1.0, 1e-14);
  EXPECT_NEAR(r.trace_defect, 0.0, 1e-14);
  EXPECT_NEAR(r.min_eigenvalue, -0.5, 1e-14);
  EXPECT_NEAR(r.eigenvalues.front(), 1.5, 1e-14);
  EXPECT_NEAR(r.purity, 2.25, 1e-14);
}

TEST(ValidateDensity, TraceAndHermiticityFailures) {
  OperatorMatrix half = projector(standard_window(window::Gaussian{}, kGrid));
  half.kernel *= 0.5;
  const DensityReport r = validate_density(half);
  EXPECT_FALSE(r.verdict);
  EXPECT_NEAR(r.trace_defect, 0.5, 1e-12);
  EXPECT_TRUE(validate_density(half, 0.6).verdict);

  OperatorMatrix skew = projector(standard_window(window::Gaussian{}, kGrid));
  skew.kernel(0, 1) += cplx(0.0, 1e-3);
  const DensityReport s = validate_density(skew);
  EXPECT_FALSE(s.verdict);
  EXPECT_NEAR(s.hermiticity_defect, 1e-3, 1e-12);
}

TEST(ValidateDensity, ToleranceErrors) {
  const OperatorMatrix p = projector(standard_window(window::Gaussian{}, kGrid));
  EXPECT_THROW(validate_density(p, 0.0), std::invalid_argument);
  EXPECT_THROW(validate_density(p, -1.0), std::invalid_argument);
  EXPECT_THROW(validate_density(p, 1e-6, 0.0), std::invalid_argument);
  EXPECT_THROW(validate_density(p, 1e-6, -1e-8), std::invalid_argument);
}

TEST(Spectral, Projector) {
  const WaveFunction phi = standard_window(window::DisplacedGaussian{{0.5, -1.0}}, kGrid);
  const Spectrum s = spectral(projector(phi));
  EXPECT_NEAR(s.eigenvalues[0], 1.0, 1e-12);
  EXPECT_LE(s.eigenvalues.tail(127).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(std::abs(l2_inner(s.eigenvectors[0], phi)), 1.0, 1e-12);
}

TEST(Spectral, ThermalEigenvectorsAreHermiteFunctions) {
  const Spectrum s = spectral(thermal().rho);
  for (int k = 0; k < 4; ++k) {
    const WaveFunction hk = WaveFunction::from_samples(
        kGrid, oracle::sample(kGrid, [k](double x) { return cplx(oracle::hermite_function(k, x, 1.0)); }));
    EXPECT_NEAR(std::abs(l2_inner(s.eigenvectors[k], hk)), 1.0, 1e-3) << k;
  }
}

TEST(Spectral, OrthonormalAndReconstructs) {
  const OperatorMatrix rho = thermal().rho;
  const Spectrum s = spectral(rho);
  const int n = kGrid.size();
  Eigen::MatrixXcd v(n, n);
  for (int i = 0; i < n; ++i) v.col(i) = s.eigenvectors[static_cast<size_t>(i)].samples;
  const Eigen::MatrixXcd gram = v.adjoint() * v * kGrid.dx();
  EXPECT_LE((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  const Eigen::MatrixXcd rebuilt = v * s.eigenvalues.asDiagonal() * v.adjoint();
  EXPECT_LE((rebuilt - rho.kernel).cwiseAbs().maxCoeff(), 1e-8);
  for (int i = 1; i < n; ++i) EXPECT_GE(s.eigenvalues[i - 1], s.eigenvalues[i]);
}

TEST(Spectral, RejectsNonHermitian) {
  OperatorMatrix op = projector(standard_window(window::Gaussian{}, kGrid));
  op.kernel(3, 5) += 1e-3;
  EXPECT_THROW(spectral(op), std::invalid_argument);
  EXPECT_THROW(wigner_of_density(op), std::invalid_argument);
}

TEST(WignerOfDensity, ProjectorMatchesClosedForm) {
  const PhaseFunction w = wigner_of_density(projector(standard_window(window::Gaussian{}, kGrid)));
  double err = 0.0;
  for (int j = 0; j < kGrid.size(); ++j) {
    for (int k = 0; k < kGrid.size(); ++k) {
      err = std::max(err, std::abs(w.values(j, k) - oracle::wigner_ground(kGrid.x(j), kGrid.p(k), 1.0)));
    }
  }
  EXPECT_LE(err, 1e-7);
  EXPECT_NEAR(w.integral().real(), 1.0, 1e-8);
}

TEST(WignerOfDensity, MatchesStateWigner) {
  const WaveFunction psi = standard_window(window::DisplacedGaussian{{1.0, 0.5}}, kGrid);
  const PhaseFunction a = wigner_of_density(projector(psi));
  const PhaseFunction b = wigner(psi);
  EXPECT_LE((a.values - b.values).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(StatecheckProperty, SpectrumInvariants) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  const WaveFunction phi = standard_window(window::Gaussian{}, kGrid);
  for (int trial = 0; trial < 6; ++trial) {
    LatticeMixture mix;
    const int atoms = 1 + trial;
    double total = 0.0;
    for (int i = 0; i < atoms; ++i) {
      mix.atoms.push_back({{pos(rng), pos(rng)}, w(rng)});
      total += mix.atoms.back().weight;
    }
    for (auto& a : mix.atoms) a.weight /= total;
    const DensityReport r = validate_density(lattice_mixed_state(mix, phi).rho);
    EXPECT_TRUE(r.verdict) << trial;
    const double sum = std::accumulate(r.eigenvalues.begin(), r.eigenvalues.end(), 0.0);
    EXPECT_NEAR(sum, r.trace, 1e-10);
    for (double l : r.eigenvalues) {
      EXPECT_GE(l, -r.tol_psd);
      EXPECT_LE(l, 1.0 + 1e-8);
    }
    EXPECT_LE(r.purity, 1.0 + 1e-8);
    EXPECT_GT(r.purity, 0.0);
  }
}

}  // namespace
}  // namespace pq
