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
#include <cmath>

#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"
#include "esdlab/state.hpp"
#include "esdlab/thermal.hpp"

// Independent check on the closed-form propagator: a fixed-step RK4
// integration of the underlying master equation, written directly from the
// dissipators with no reuse of the analytic solution.

namespace esdlab {

namespace detail {

struct LindbladOps {
  Mat4 l[4];        // jump operators
  Mat4 ldag_l[4];   // precomputed L^dagger L
  double rate[4];   // prefactors

  explicit LindbladOps(const ReservoirParams& p) {
    // Single-qubit raising operator in the (excited, ground) ordering.
    Mat2 up{};
    up[0][1] = 1.0;
    Mat2 down{};
    down[1][0] = 1.0;
    Mat2 id{};
    id[0][0] = 1.0;
    id[1][1] = 1.0;

    l[0] = kron(down, id);  // emission into reservoir 1
    l[1] = kron(up, id);    // absorption from reservoir 1
    l[2] = kron(id, down);
    l[3] = kron(id, up);
    rate[0] = p.gamma1 * (p.m + 1.0);
    rate[1] = p.gamma1 * p.m;
    rate[2] = p.gamma2 * (p.n + 1.0);
    rate[3] = p.gamma2 * p.n;
    for (int k = 0; k < 4; ++k) ldag_l[k] = mat_mul(adjoint(l[k]), l[k]);
  }

  Mat4 rhs(const Mat4& rho) const {
    Mat4 out{};
    for (int k = 0; k < 4; ++k) {
      if (rate[k] == 0.0) continue;
      const Mat4 jump = mat_mul(l[k], mat_mul(rho, adjoint(l[k])));
      const Mat4 anti = mat_add(mat_mul(ldag_l[k], rho), mat_mul(rho, ldag_l[k]));
      out = mat_add(out, mat_scale(mat_sub(jump, mat_scale(anti, 0.5)), rate[k]));
    }
    // The generator preserves Hermiticity exactly; symmetrizing here keeps
    // floating-point noise from building up an anti-Hermitian part.
    return hermitized(out);
  }
};

}  // namespace detail

inline Mat4 lindblad_rhs(const Mat4& rho, const ReservoirParams& params) {
  check_params(params);
  return detail::LindbladOps(params).rhs(rho);
}

struct IntegratorConfig {
  // Step size; 0 picks the largest step with dt * max(gamma1(2m+1),
  // gamma2(2n+1)) <= 0.01, which keeps the RK4 truncation error orders of
  // magnitude below the comparison tolerances used in the tests.
  double dt = 0.0;
  long max_steps = 4000000;
};

inline DensityMatrix integrate(const DensityMatrix& rho0, const ReservoirParams& params, double t,
                               const IntegratorConfig& cfg = IntegratorConfig{}) {
  check_params(params);
  if (!(t >= 0.0)) throw InputError("integration time must be non-negative");
  {
    const ValidationReport rep = validate(rho0);
    if (!rep.valid) throw InputError("initial state failed validation");
  }
  if (t == 0.0) return rho0;

  const double rate_max =
      std::max(params.gamma1 * (2.0 * params.m + 1.0), params.gamma2 * (2.0 * params.n + 1.0));
  const double dt = cfg.dt > 0.0 ? cfg.dt : 0.01 / rate_max;
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / dt - 1e-12)));
  if (steps > cfg.max_steps) throw StepBudgetError("integration needs more steps than allowed");
  const double h = t / static_cast<double>(steps);

  const detail::LindbladOps ops(params);
  Mat4 y = rho0.elements;
  for (long s = 0; s < steps; ++s) {
    const Mat4 k1 = ops.rhs(y);
    const Mat4 k2 = ops.rhs(mat_add(y, mat_scale(k1, 0.5 * h)));
    const Mat4 k3 = ops.rhs(mat_add(y, mat_scale(k2, 0.5 * h)));
    const Mat4 k4 = ops.rhs(mat_add(y, mat_scale(k3, h)));
    Mat4 incr = mat_add(mat_add(k1, k4), mat_scale(mat_add(k2, k3), 2.0));
    y = mat_add(y, mat_scale(incr, h / 6.0));
  }
  return DensityMatrix{y};
}

}  // namespace esdlab
