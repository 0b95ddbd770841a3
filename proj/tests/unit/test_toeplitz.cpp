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
#include <random>

#include <gtest/gtest.h>

#include "pq/diagnostics.hpp"
#include "pq/statecheck.hpp"
#include "pq/toeplitz.hpp"
#include "pq/transforms.hpp"
#include "pq/weyl.hpp"
#include "support/oracles.hpp"

namespace pq {
namespace {

const PhaseGrid kGrid(128, 8.0, 1.0);
const PhaseGrid kGrid64(64, 8.0, 1.0);

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

PhaseFunction gaussian(const PhaseGrid& g, double x0, double p0, double vx, double vp) {
  return PhaseFunction::from_function(g, [=](double x, double p) {
    return cplx(std::exp(-(x - x0) * (x - x0) / (2 * vx) - (p - p0) * (p - p0) / (2 * vp)));
  });
}

PhaseFunction constant(const PhaseGrid& g, double v) {
  return PhaseFunction::from_function(g, [v](double, double) { return cplx(v); });
}

std::vector<WaveFunction> windows(const PhaseGrid& g) {
  return {standard_window(window::Gaussian{}, g), standard_window(window::Hermite1{}, g),
          standard_window(window::DisplacedGaussian{{1.0, 0.5}}, g)};
}

Eigen::VectorXd eigenvalues(const OperatorMatrix& op) {
  const Eigen::MatrixXcd h = 0.5 * (op.action() + op.action().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

TEST(DefaultThinning, BySize) {
  EXPECT_EQ(default_thinning(PhaseGrid(32, 8.0, 1.0)), 1);
  EXPECT_EQ(default_thinning(kGrid64), 1);
  EXPECT_EQ(default_thinning(kGrid), 2);
  EXPECT_EQ(default_thinning(PhaseGrid(256, 8.0, 1.0)), 2);
}

TEST(ToeplitzDirect, ConstantSymbolResolvesIdentity) {
  for (const auto& phi : windows(kGrid64)) {
    const OperatorMatrix op = toeplitz_direct(constant(kGrid64, 1.0), phi);
    OperatorMatrix expect = OperatorMatrix::identity(kGrid64);
    expect.kernel *= 2.0 * kPi * kGrid64.hbar();
    EXPECT_LE(op.relative_distance(expect), 2e-3);
    // The cyclic node set makes the resolution exact up to roundoff.
    EXPECT_LE(op.relative_distance(expect), 1e-10);
  }
}

TEST(ToeplitzDirect, PositiveSymbolGivesPositiveOperator) {
  for (const auto& phi : windows(kGrid64)) {
    const Eigen::VectorXd ev = eigenvalues(toeplitz_direct(gaussian(kGrid64, 0.5, 0.0, 1.0, 0.7), phi));
    EXPECT_GE(ev.minCoeff(), -1e-8 * std::max(1.0, ev.maxCoeff()));
  }
}

TEST(ToeplitzDirect, MatchesOuterProductOracle) {
  const PhaseGrid g(16, 4.0, 1.0);
  std::mt19937 rng(12);
  std::normal_distribution<double> n01;
  PhaseFunction a = PhaseFunction::zeros(g);
  for (int i = 0; i < 256; ++i) a.values.data()[i] = n01(rng);
  for (const auto& phi : windows(g)) {
    const WaveFunction unit = normalize(phi);
    EXPECT_LE(max_abs(toeplitz_direct(a, unit, 1).kernel - oracle::direct_toeplitz(g, a.values, unit.samples)),
              1e-12);
    // Thinning 2 keeps every other node in both axes with weight 4 dx dp.
    Eigen::MatrixXcd thinned = Eigen::MatrixXcd::Zero(16, 16);
    for (int j = 0; j < 16; j += 2) {
      for (int k = 0; k < 16; k += 2) thinned(j, k) = 4.0 * a.values(j, k);
    }
    EXPECT_LE(max_abs(toeplitz_direct(a, unit, 2).kernel - oracle::direct_toeplitz(g, thinned, unit.samples)),
              1e-12);
  }
}

TEST(ToeplitzDirect, RejectsBadInput) {
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid64);
  const PhaseFunction a = gaussian(kGrid64, 0.0, 0.0, 1.0, 1.0);
  EXPECT_THROW(toeplitz_direct(a, scale(phi0, 1.1)), std::invalid_argument);
  EXPECT_THROW(toeplitz_direct(a, phi0, 3), std::invalid_argument);
  EXPECT_THROW(toeplitz_direct(a, standard_window(window::Gaussian{}, kGrid)), GridMismatch);
  EXPECT_THROW(toeplitz_conv(a, scale(phi0, 0.9)), std::invalid_argument);
  EXPECT_THROW(toeplitz_conv(a, standard_window(window::Gaussian{}, kGrid)), GridMismatch);
}

TEST(ToeplitzConv, ConstantSymbolIsScaledIdentity) {
  WarningCapture capture;
  for (double hbar : {1.0, 0.5}) {
    const PhaseGrid g(64, 8.0, hbar);
    const OperatorMatrix op = toeplitz_conv(constant(g, 1.0), standard_window(window::Gaussian{}, g));
    OperatorMatrix expect = OperatorMatrix::identity(g);
    expect.kernel *= 2.0 * kPi * hbar;
    EXPECT_LE(op.relative_distance(expect), 1e-6);
  }
  // A constant symbol never decays, and that is reported.
  EXPECT_FALSE(capture.messages().empty());
}

TEST(ToeplitzConv, TraceOfProbabilityMeasureIsOne) {
  // Tr Op_phi(mu) = int mu * int W phi = 1 for every hbar.
  for (double hbar : {1.0, 0.5}) {
    const PhaseGrid g(128, 8.0, hbar);
    const auto mu = ProbabilityDensity::from_values(gaussian(g, 0.2, -0.4, hbar, hbar));
    const OperatorMatrix op = toeplitz_conv(mu.mu, standard_window(window::Gaussian{}, g));
    EXPECT_NEAR(op.trace().real(), 1.0, 1e-6) << "hbar " << hbar;
    EXPECT_NEAR(op.trace().imag(), 0.0, 1e-12);
  }
}

TEST(ToeplitzConv, ThermalSpectrum) {
  const auto mu = ProbabilityDensity::from_values(gaussian(kGrid, 0.0, 0.0, 1.0, 1.0));
  const Eigen::VectorXd ev = eigenvalues(toeplitz_conv(mu.mu, standard_window(window::Gaussian{}, kGrid)));
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(ev[k], std::ldexp(1.0, -(k + 1)), 1e-4) << k;
  // Brute-force direct sum as the independent path.
  const auto mu64 = ProbabilityDensity::from_values(gaussian(kGrid64, 0.0, 0.0, 1.0, 1.0));
  const Eigen::VectorXd ed = eigenvalues(toeplitz_direct(mu64.mu, standard_window(window::Gaussian{}, kGrid64), 1));
  for (int k = 0; k <= 6; ++k) EXPECT_NEAR(ed[k], std::ldexp(1.0, -(k + 1)), 1e-4) << k;
}

TEST(ToeplitzConv, WarnsOnlyWhenNotDecayed) {
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid);
  {
    WarningCapture capture;
    toeplitz_conv(gaussian(kGrid, 0.0, 0.0, 1.0, 1.0), phi0);
    EXPECT_TRUE(capture.messages().empty());
  }
  {
    WarningCapture capture;
    toeplitz_conv(gaussian(kGrid, 0.0, 0.0, 9.0, 9.0), phi0);
    ASSERT_EQ(capture.messages().size(), 1u);
    EXPECT_NE(capture.messages()[0].find("border"), std::string::npos);
  }
}

TEST(ToeplitzProperty, PathEquivalence) {
  const std::vector<PhaseFunction> symbols = {
      gaussian(kGrid64, 0.0, 0.0, 1.0, 1.0), gaussian(kGrid64, 1.0, -0.5, 1.0, 1.0),
      gaussian(kGrid64, -0.8, 0.7, 0.6, 1.8),
      PhaseFunction::from_function(kGrid64, [](double x, double p) {
        return cplx((x * x - p) * std::exp(-0.5 * (x * x + p * p)));
      })};
  for (const auto& a : symbols) {
    for (const auto& phi : windows(kGrid64)) {
      EXPECT_LE(toeplitz_direct(a, phi, 1).relative_distance(toeplitz_conv(a, phi)), 1e-6);
    }
  }
}

TEST(ToeplitzProperty, LinearInSymbol) {
  const PhaseFunction a = gaussian(kGrid64, 0.3, 0.0, 1.0, 1.0);
  const PhaseFunction b = gaussian(kGrid64, -1.0, 1.0, 0.5, 1.5);
  const double alpha = 0.7, beta = -2.1;
  const PhaseFunction mix{kGrid64, alpha * a.values + beta * b.values};
  const WaveFunction phi = standard_window(window::Hermite1{}, kGrid64);
  for (auto path : {0, 1}) {
    const auto op = [&](const PhaseFunction& s) { return path == 0 ? toeplitz_direct(s, phi, 1) : toeplitz_conv(s, phi); };
    const Eigen::MatrixXcd lhs = op(mix).kernel;
    const Eigen::MatrixXcd rhs = alpha * op(a).kernel + beta * op(b).kernel;
    EXPECT_LE(max_abs(lhs - rhs), 1e-12 * max_abs(rhs) * 10);
  }
}

TEST(ToeplitzProperty, FullSizeDirectPath) {
  const PhaseFunction a = gaussian(kGrid, 0.5, -0.5, 1.0, 1.0);
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid);
  const OperatorMatrix conv = toeplitz_conv(a, phi0);
  EXPECT_LE(toeplitz_direct(a, phi0, 1).relative_distance(conv), 1e-6);
  // Every other node: with momentum spacing 2 dp the node sum mixes kernel
  // entries whose separations differ by L, which a unit-width symbol does
  // not suppress fully.
  EXPECT_LE(toeplitz_direct(a, phi0).relative_distance(conv), 1e-4);
}

TEST(ProbabilityDensity, Validation) {
  const PhaseFunction g = gaussian(kGrid64, 0.0, 0.0, 1.0, 1.0);
  const auto mu = ProbabilityDensity::from_values(g);
  EXPECT_NEAR(mu.mu.integral().real(), 1.0, 1e-10);
  EXPECT_NEAR(mu.normalization, 2.0 * kPi, 1e-8);
  EXPECT_GE(mu.mu.values.real().minCoeff(), 0.0);

  PhaseFunction neg = g;
  neg.values(3, 3) = -1e-3;
  EXPECT_THROW(ProbabilityDensity::from_values(neg), std::invalid_argument);
  PhaseFunction cpx = g;
  cpx.values(30, 30) += cplx(0.0, 0.1);
  EXPECT_THROW(ProbabilityDensity::from_values(cpx), std::invalid_argument);
  EXPECT_THROW(ProbabilityDensity::from_values(PhaseFunction::zeros(kGrid64)), std::invalid_argument);
  PhaseFunction nan = g;
  nan.values(1, 2) = NAN;
  EXPECT_THROW(ProbabilityDensity::from_values(nan), std::invalid_argument);
  PhaseFunction inf = g;
  inf.values(1, 2) = INFINITY;
  EXPECT_THROW(ProbabilityDensity::from_values(inf), std::invalid_argument);
}

TEST(DensityFromMeasure, ThermalStateBothPaths) {
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid);
  const auto mu = ProbabilityDensity::from_values(gaussian(kGrid, 0.0, 0.0, 1.0, 1.0));
  for (int thinning : {0, 1, 2}) {
    // 0 selects the conv path.
    const DensityState st = thinning == 0 ? density_from_measure(mu, phi0, ToeplitzPath::conv)
                                          : density_from_measure(mu, phi0, ToeplitzPath::direct, thinning);
    EXPECT_NEAR(st.rho.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(oracle::kernel_purity(kGrid, st.rho.kernel), 1.0 / 3.0, 1e-4);
    EXPECT_NEAR(st.raw_trace, 1.0, 1e-6);
    EXPECT_NEAR(st.wigner.integral().real(), 1.0, 1e-6);
    EXPECT_EQ(st.thinning, thinning == 0 ? 1 : thinning);
    // W rho is the Gaussian mu * W phi0 with variance 3/2 per axis.
    double err = 0.0;
    for (int j = 0; j < kGrid.size(); ++j) {
      for (int k = 0; k < kGrid.size(); ++k) {
        const double r2 = kGrid.x(j) * kGrid.x(j) + kGrid.p(k) * kGrid.p(k);
        err = std::max(err, std::abs(st.wigner.values(j, k) - std::exp(-r2 / 3.0) / (3.0 * kPi)));
      }
    }
    EXPECT_LE(err, thinning == 2 ? 1e-5 : 1e-8) << "thinning " << thinning;
  }
  EXPECT_EQ(density_from_measure(mu, phi0, ToeplitzPath::direct).thinning, 2);
}

TEST(DensityFromMeasure, RandomMeasuresGiveDensities) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> c(-1.5, 1.5);
  std::uniform_real_distribution<double> v(0.2, 1.2);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  const auto phis = windows(kGrid);
  for (int t = 0; t < 6; ++t) {
    PhaseFunction raw = PhaseFunction::zeros(kGrid);
    for (int b = 0; b < 3; ++b) raw.values += w(rng) * gaussian(kGrid, c(rng), c(rng), v(rng), v(rng)).values;
    const auto mu = ProbabilityDensity::from_values(raw);
    const WaveFunction& phi = phis[static_cast<size_t>(t % 3)];
    const DensityState st = density_from_measure(mu, phi, ToeplitzPath::conv);
    const DensityReport r = validate_density(st.rho);
    EXPECT_TRUE(r.verdict);
    EXPECT_LE(r.trace_defect, 1e-6);
    EXPECT_GE(r.min_eigenvalue, -1e-8);
    EXPECT_LE(oracle::kernel_purity(kGrid, st.rho.kernel), 1.0 + 1e-10);
  }
}

TEST(DensityFromMeasure, SingleAtomIsProjector) {
  for (const auto& phi : windows(kGrid)) {
    const DensityState st = density_from_measure(LatticeMixture{{{{0.0, 0.0}, 1.0}}}, phi);
    EXPECT_LE(max_abs(st.rho.kernel - projector(phi).kernel), 1e-8);
  }
}

TEST(DensityFromMeasure, AtomicMeasureThroughGenericPaths) {
  // A point mass on a node, fed in as a grid density.
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid);
  const int j = 72, k = 60;
  PhaseFunction raw = PhaseFunction::zeros(kGrid);
  raw.values(j, k) = 1.0 / kGrid.cell();
  const auto mu = ProbabilityDensity::from_values(raw);
  const DensityState lattice = lattice_mixed_state(LatticeMixture{{{{kGrid.x(j), kGrid.p(k)}, 1.0}}}, phi0);
  const DensityState direct = density_from_measure(mu, phi0, ToeplitzPath::direct, 1);
  EXPECT_LE(direct.rho.relative_distance(lattice.rho), 1e-10);
  const DensityState conv = density_from_measure(mu, phi0, ToeplitzPath::conv);
  EXPECT_LE(max_abs(conv.wigner.values - lattice.wigner.values), 1e-10);
  // The conv operator carries the kernel aliasing floor of weyl_quantize.
  EXPECT_LE(conv.rho.relative_distance(lattice.rho), 1e-7);
}

TEST(DensityFromMeasure, RejectsBadWindow) {
  const auto mu = ProbabilityDensity::from_values(gaussian(kGrid64, 0.0, 0.0, 1.0, 1.0));
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid64);
  EXPECT_THROW(density_from_measure(mu, scale(phi0, 2.0), ToeplitzPath::conv), std::invalid_argument);
  EXPECT_THROW(density_from_measure(mu, scale(phi0, 2.0), ToeplitzPath::direct), std::invalid_argument);
  EXPECT_THROW(density_from_measure(LatticeMixture{{{{0.0, 0.0}, 1.0}}}, scale(phi0, 2.0)), std::invalid_argument);
}

TEST(LatticeMixedState, TwoAtomCat) {
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid);
  const DensityState st = lattice_mixed_state(LatticeMixture{{{{1.0, 0.0}, 0.5}, {{-1.0, 0.0}, 0.5}}}, phi0);
  const double purity = oracle::kernel_purity(kGrid, st.rho.kernel);
  EXPECT_NEAR(purity, 0.5 * (1.0 + std::exp(-2.0)), 1e-6);
  EXPECT_NEAR(purity, 0.56767, 1e-5);
  const PhaseFunction from_op = wigner_of_density(st.rho);
  double err = 0.0;
  double err_stored = 0.0;
  for (int j = 0; j < kGrid.size(); ++j) {
    for (int k = 0; k < kGrid.size(); ++k) {
      const double x = kGrid.x(j), p = kGrid.p(k);
      const double ref = 0.5 * oracle::wigner_ground(x - 1.0, p, 1.0) + 0.5 * oracle::wigner_ground(x + 1.0, p, 1.0);
      err = std::max(err, std::abs(from_op.values(j, k) - ref));
      err_stored = std::max(err_stored, std::abs(st.wigner.values(j, k) - ref));
    }
  }
  EXPECT_LE(err, 1e-8);
  EXPECT_LE(err_stored, 1e-8);
}

TEST(LatticeMixedState, OffGridAtomsStayConsistent) {
  const WaveFunction h1 = standard_window(window::Hermite1{}, kGrid);
  const LatticeMixture mix{{{{0.33, -0.71}, 0.2}, {{-1.05, 0.4}, 0.5}, {{0.9, 1.3}, 0.3}}};
  const DensityState st = lattice_mixed_state(mix, h1);
  EXPECT_LE(max_abs(wigner_of_density(st.rho).values - st.wigner.values), 1e-8);
  EXPECT_NEAR(st.rho.trace().real(), 1.0, 1e-10);
  EXPECT_LE(oracle::kernel_purity(kGrid, st.rho.kernel), 1.0 + 1e-10);
  const DensityReport r = validate_density(st.rho);
  EXPECT_TRUE(r.verdict);
}

TEST(LatticeMixedState, RejectsInvalidWeights) {
  const WaveFunction phi0 = standard_window(window::Gaussian{}, kGrid64);
  EXPECT_THROW(lattice_mixed_state(LatticeMixture{{{{0, 0}, 0.6}, {{1, 0}, 0.6}}}, phi0), std::invalid_argument);
  EXPECT_THROW(lattice_mixed_state(LatticeMixture{{{{0, 0}, 1.5}, {{1, 0}, -0.5}}}, phi0), std::invalid_argument);
  EXPECT_THROW(lattice_mixed_state(LatticeMixture{}, phi0), std::invalid_argument);
  EXPECT_THROW(LatticeMixture({{{{0, 0}, NAN}}}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(LatticeMixture({{{{0, 0}, 0.5 + 1e-13}, {{1, 0}, 0.5}}}).validate());
}

TEST(Convolve, DeltaAtOriginIsNeutral) {
  PhaseFunction delta = PhaseFunction::zeros(kGrid64);
  delta.values(32, 32) = 1.0 / kGrid64.cell();
  const PhaseFunction b = gaussian(kGrid64, 0.5, -1.0, 0.7, 1.3);
  EXPECT_LE(max_abs(convolve(delta, b).values - b.values), 1e-12);
  EXPECT_LE(max_abs(convolve(b, delta).values - b.values), 1e-12);
  // Convolution of two Gaussians is a Gaussian with summed variances. The
  // circular convolution is 2L-periodic in x, so the reference carries the
  // neighbouring images.
  const PhaseFunction ga = gaussian(kGrid64, 0.0, 0.0, 1.0, 1.0);
  const PhaseFunction gb = gaussian(kGrid64, 0.0, 0.0, 0.5, 0.5);
  const PhaseFunction gc = convolve(ga, gb);
  const double scale = 2.0 * kPi * 1.0 * 2.0 * kPi * 0.5 / (2.0 * kPi * 1.5);
  const double period = 2.0 * kGrid64.half_width();
  double err = 0.0;
  for (int j = 0; j < 64; ++j) {
    for (int k = 0; k < 64; ++k) {
      double ref = 0.0;
      for (int m = -1; m <= 1; ++m) {
        const double x = kGrid64.x(j) + m * period;
        ref += scale * std::exp(-(x * x + kGrid64.p(k) * kGrid64.p(k)) / 3.0);
      }
      err = std::max(err, std::abs(gc.values(j, k) - ref));
    }
  }
  EXPECT_LE(err, 1e-10);
}

TEST(ShiftPhaseFunction, WholeNodesAndFractions) {
  const PhaseFunction f = gaussian(kGrid, 0.0, 0.0, 0.8, 1.2);
  const PhaseFunction s = shift_phase_function(f, {3 * kGrid.dx(), -2 * kGrid.dp()});
  EXPECT_LE(max_abs(s.values.block(3, 0, 125, 126) - f.values.block(0, 2, 125, 126)), 1e-12);
  const PhasePoint z0{0.37, -0.91};
  EXPECT_LE(max_abs(shift_phase_function(f, z0).values - gaussian(kGrid, z0.x, z0.p, 0.8, 1.2).values), 1e-10);
}

}  // namespace
}  // namespace pq
