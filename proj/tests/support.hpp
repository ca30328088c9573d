// Copyright 2026 The esdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "esdlab/matrix.hpp"
#include "esdlab/state.hpp"

// Shared helpers for the test binaries: seeded random state generators and
// an eigensolver-free negativity formula used as an independent oracle.

namespace testsup {

using esdlab::cplx;
using esdlab::DensityMatrix;
using esdlab::Mat4;
using esdlab::XState;

// Populations from a flat Dirichlet, coherence magnitudes a uniform fraction
// of their positivity bound, phases uniform. Covers the whole X family
// without ever producing an invalid state.
inline XState random_x_state(std::mt19937& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double p[4];
  double s = 0.0;
  for (double& v : p) {
    v = expo(rng);
    s += v;
  }
  for (double& v : p) v /= s;
  XState x;
  x.p11 = p[0];
  x.p22 = p[1];
  x.p33 = p[2];
  x.p44 = p[3];
  const double f14 = uni(rng);
  const double f23 = uni(rng);
  const double ph14 = 2.0 * std::acos(-1.0) * uni(rng);
  const double ph23 = 2.0 * std::acos(-1.0) * uni(rng);
  x.c14 = f14 * std::sqrt(x.p11 * x.p44) * std::exp(cplx{0.0, ph14});
  x.c23 = f23 * std::sqrt(x.p22 * x.p33) * std::exp(cplx{0.0, ph23});
  return x;
}

inline XState random_entangled_x_state(std::mt19937& rng) {
  for (;;) {
    const XState x = random_x_state(rng);
    if (esdlab::x_entangled(x)) return x;
  }
}

// Full-rank random density matrix: G G^dagger normalized, G complex Gaussian.
inline DensityMatrix random_density(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = cplx{gauss(rng), gauss(rng)};
  Mat4 h = esdlab::mat_mul(g, esdlab::adjoint(g));
  const double tr = esdlab::trace(h).real();
  DensityMatrix rho{esdlab::mat_scale(h, 1.0 / tr)};
  return rho;
}

// Negativity of an X state from the two 2x2 blocks of its partial transpose,
// no iterative eigensolver involved. The transpose on qubit B moves c23 into
// the {1,4} block and c14 into the {2,3} block.
inline double x_negativity_blockwise(const XState& x) {
  const auto block = [](double d1, double d2, double off_sq) {
    const double avg = 0.5 * (d1 + d2);
    const double rad = std::sqrt(0.25 * (d1 - d2) * (d1 - d2) + off_sq);
    return std::array<double, 2>{avg - rad, avg + rad};
  };
  const auto b14 = block(x.p11, x.p44, std::norm(x.c23));
  const auto b23 = block(x.p22, x.p33, std::norm(x.c14));
  double neg = 0.0;
  for (const double l : {b14[0], b14[1], b23[0], b23[1]})
    if (l < 0.0) neg -= l;
  return neg;
}

}  // namespace testsup
