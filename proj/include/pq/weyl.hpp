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

#include "pq/grid.hpp"

namespace pq {

/// A Weyl symbol a(x, p) sampled on the phase grid.
using WeylSymbol = PhaseFunction;

/// Op_W(a) with kernel K(x, y) = (2 pi hbar)^-1 int exp(i p (x - y) / hbar) a((x + y)/2, p) dp.
///
/// Midpoints (x_j + x_k)/2 lie on the half-grid and are read from a 2x
/// spectral upsampling of a along x. Pairs with |j - k| > N/2 are taken as
/// their nearest periodic images, whose midpoint is shifted by L; at
/// |j - k| = N/2 both images are averaged so that real symbols give
/// hermitian kernels.
OperatorMatrix weyl_quantize(const WeylSymbol& a);

/// a(x, p) = int exp(-i p y / hbar) K(x + y/2, x - y/2) dy, the kernel being
/// read at half-grid points through 2-D spectral interpolation.
WeylSymbol weyl_symbol(const OperatorMatrix& op);

/// Rank-one projector |phi)(phi| with kernel phi(x_j) phi*(x_k). Throws
/// std::invalid_argument unless ||phi|| = 1 within 1e-8.
OperatorMatrix projector(const WaveFunction& phi);

/// Tr Op_W(a) = (2 pi hbar)^-1 sum a(z) dx dp (real part).
double trace_via_symbol(const WeylSymbol& a);

}  // namespace pq
