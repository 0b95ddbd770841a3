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


#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pq/grid.hpp"
#include "pq/transforms.hpp"

namespace pq {

namespace mp {
/// (F psi)(p) = (2 pi hbar)^-1/2 int exp(-i x p / hbar) psi(x) dx; `inverse`
/// flips the sign of the exponent.
struct Fourier {
  bool inverse = false;
};
/// Multiplication by exp(i c x^2 / 2 hbar).
struct Chirp {
  double c = 0.0;
};
/// lambda^-1/2 psi(x / lambda), lambda > 0.
struct Dilate {
  double lambda = 1.0;
};
}  // namespace mp

using MetaplecticGenerator = std::variant<mp::Fourier, mp::Chirp, mp::Dilate>;

/// S = g_1 g_2 ... g_m; applied to a state right to left.
struct MetaplecticWord {
  std::vector<MetaplecticGenerator> generators;

  /// Throws std::invalid_argument on a non-positive or non-finite parameter.
  void validate() const;
};

/// Parses "fourier", "fourier_inv", "chirp:<c>" or "dilate:<lambda>".
MetaplecticGenerator parse_generator(const std::string& text);
MetaplecticWord parse_word(const std::vector<std::string>& items);
std::string to_string(const MetaplecticGenerator& g);

MetaplecticWord concat(const MetaplecticWord& a, const MetaplecticWord& b);
/// Reversed word of inverse generators.
MetaplecticWord inverse(const MetaplecticWord& word);

using SymplecticMat = Eigen::Matrix2d;

/// Projection of mp::Fourier{false} onto Sp(1), W(F psi)(z) = W psi(S^-1 z).
/// Fixed by the calibration test in the metaplectic suite.
extern const SymplecticMat kFourierProjection;

SymplecticMat generator_symplectic(const MetaplecticGenerator& g);
SymplecticMat word_symplectic(const MetaplecticWord& word);

/// Applies the word to psi. Fourier is a dense quadrature onto the position
/// grid; chirps are exact; dilations resample through the state's
/// generator or trigonometric interpolant, with zero outside [-L, L) and a
/// warning when more than 1e-12 of the mass leaves the box. The result keeps
/// an analytic generator.
WaveFunction metaplectic_apply(const MetaplecticWord& word, const WaveFunction& psi);

/// N x N matrix of the word acting on raw samples.
Eigen::MatrixXcd metaplectic_matrix(const MetaplecticWord& word, const PhaseGrid& grid);

/// S K S^-1 with both factors from metaplectic_matrix.
OperatorMatrix conjugate(const MetaplecticWord& word, const OperatorMatrix& op);

/// (a o S^-1)(z) by 2-D trigonometric interpolation of a, zero outside the box.
PhaseFunction compose_linear(const PhaseFunction& a, const SymplecticMat& s);

/// ||Op_W(a o S^-1) - S Op_W(a) S^-1|| / ||Op_W(a o S^-1)|| (Frobenius).
double weyl_covariance_residual(const PhaseFunction& a, const MetaplecticWord& word);

/// ||Op_phi(a o S^-1) - S Op_{S^-1 phi}(a) S^-1|| / ||Op_phi(a o S^-1)|| with the
/// conv path on both sides.
double toeplitz_covariance_residual(const PhaseFunction& a, const WaveFunction& phi,
                                    const MetaplecticWord& word);

/// sup |W(S psi)(z) - W psi(S_used^-1 z)| / sup |W psi| over the grid, with
/// S_used given explicitly so that candidate projections can be compared.
double wigner_covariance_residual(const WaveFunction& psi, const MetaplecticWord& word,
                                  const SymplecticMat& s_used);
double wigner_covariance_residual(const WaveFunction& psi, const MetaplecticWord& word);

/// Compares S T(z) S^-1 phi with T(S z) phi through their Wigner functions
/// (global phase drops out): sup difference over sup |W phi|.
double displacement_conjugation_residual(const MetaplecticWord& word, PhasePoint z,
                                         const WaveFunction& phi);

}  // namespace pq
