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

#include <cmath>
#include <string>

#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"
#include "esdlab/state.hpp"

// Exact propagation of a two-qubit state with each qubit coupled to its own
// bosonic reservoir (decay rates gamma1, gamma2; mean thermal occupations
// m, n). The generator closes on small groups of matrix elements, so the
// solution is a handful of exponentials per element rather than a matrix
// exponential.

namespace esdlab {

struct ReservoirParams {
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double m = 0.0;  // mean occupation seen by qubit A
  double n = 0.0;  // mean occupation seen by qubit B
};

inline void check_params(const ReservoirParams& p) {
  if (!(p.gamma1 > 0.0) || !(p.gamma2 > 0.0)) throw InputError("decay rates must be positive");
  if (!(p.m >= 0.0) || !(p.n >= 0.0)) throw InputError("thermal occupations must be non-negative");
}

namespace detail {

// Closed-form propagation of the matrix elements. Assumes the input has unit
// trace (rho_44 is recovered by trace completion) and is Hermitian; callers
// go through evolve() unless they validated already.
inline Mat4 propagate(const Mat4& r, const ReservoirParams& prm, double t) {
  const double m = prm.m;
  const double n = prm.n;
  const double g1 = prm.gamma1;
  const double g2 = prm.gamma2;

  const double p11 = r[0][0].real();
  const double p22 = r[1][1].real();
  const double p33 = r[2][2].real();
  const double p44 = r[3][3].real();

  const double bigD = (2.0 * m + 1.0) * (2.0 * n + 1.0);
  const double e1 = std::exp(-(2.0 * m + 1.0) * g1 * t);
  const double e2 = std::exp(-(2.0 * n + 1.0) * g2 * t);

  // Population sector: three conserved-ish combinations set the amplitudes.
  const double A = (n + 1.0) * p11 + p33 - n * (p22 - p33 + p44);
  const double B = (m + 1.0) * p11 + (m + 1.0) * p22 - m * (p33 + p44);
  const double C = (m + 1.0) * (n + 1.0) * p11 - m * p33 - n * ((m + 1.0) * p22 + m * p33 - m * p44);

  Mat4 out{};
  const double q11 = (m * n + m * A * e2 + n * B * e1 + C * e1 * e2) / bigD;
  const double q22 = (m * (n + 1.0) - m * A * e2 + (n + 1.0) * B * e1 - C * e1 * e2) / bigD;
  const double q33 = (n * (m + 1.0) + (m + 1.0) * A * e2 - n * B * e1 - C * e1 * e2) / bigD;
  out[0][0] = q11;
  out[1][1] = q22;
  out[2][2] = q33;
  out[3][3] = 1.0 - q11 - q22 - q33;

  // Single-qubit coherence pairs mix pairwise; the half-rates below are the
  // dressed decay rates of the two eigenmodes of each pair.
  const double eb2 = std::exp(-0.5 * (2.0 * n + 1.0) * g2 * t);
  const double ef2 = std::exp(-0.5 * (2.0 * (2.0 * m + 1.0) * g1 + (2.0 * n + 1.0) * g2) * t);
  const cplx r12 = r[0][1];
  const cplx r34 = r[2][3];
  out[0][1] = (m * (r12 + r34) * eb2 + ((m + 1.0) * r12 - m * r34) * ef2) / (2.0 * m + 1.0);
  out[2][3] = ((m + 1.0) * (r12 + r34) * eb2 + (m * r34 - (m + 1.0) * r12) * ef2) / (2.0 * m + 1.0);

  const double eb1 = std::exp(-0.5 * (2.0 * m + 1.0) * g1 * t);
  const double ef1 = std::exp(-0.5 * ((2.0 * m + 1.0) * g1 + 2.0 * (2.0 * n + 1.0) * g2) * t);
  const cplx r13 = r[0][2];
  const cplx r24 = r[1][3];
  out[0][2] = (n * (r13 + r24) * eb1 + ((n + 1.0) * r13 - n * r24) * ef1) / (2.0 * n + 1.0);
  out[1][3] = ((n + 1.0) * (r13 + r24) * eb1 + (n * r24 - (n + 1.0) * r13) * ef1) / (2.0 * n + 1.0);

  // Anti-diagonal coherences decay without mixing.
  const double ex = std::exp(-((m + 0.5) * g1 + (n + 0.5) * g2) * t);
  out[0][3] = r[0][3] * ex;
  out[1][2] = r[1][2] * ex;

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j) out[i][j] = std::conj(out[j][i]);
  return out;
}

}  // namespace detail

inline DensityMatrix evolve(const DensityMatrix& rho0, const ReservoirParams& params, double t) {
  check_params(params);
  if (!(t >= 0.0)) throw InputError("evolution time must be non-negative");
  const ValidationReport rep = validate(rho0);
  if (!rep.valid) {
    std::string what = "initial state failed validation:";
    for (const auto& c : rep.checks)
      if (!c.pass) what += " " + c.name + " = " + std::to_string(c.magnitude);
    throw InputError(what);
  }
  if (t == 0.0) return rho0;
  return DensityMatrix{detail::propagate(rho0.elements, params, t)};
}

// Unique fixed point of the dynamics: a product of single-qubit thermal
// states, diagonal in the working basis.
inline DensityMatrix steady_state(const ReservoirParams& params) {
  check_params(params);
  const double m = params.m;
  const double n = params.n;
  const double bigD = (2.0 * m + 1.0) * (2.0 * n + 1.0);
  DensityMatrix rho;
  rho.elements[0][0] = m * n / bigD;
  rho.elements[1][1] = m * (n + 1.0) / bigD;
  rho.elements[2][2] = n * (m + 1.0) / bigD;
  rho.elements[3][3] = (m + 1.0) * (n + 1.0) / bigD;
  return rho;
}

// Long-time shape of the partially transposed state at zero temperature with
// equal decay rates: as t grows every element of the partial transpose decays
// toward the ground state, and dividing out the leading powers of
// exp(-gamma t) leaves the constant matrix built here. Its principal minors
// have the same signs as the minors of the partial transpose at large t, so
// the sign test on this matrix decides whether entanglement dies in finite
// time or only asymptotically. Not meaningful for thermal occupation or
// unequal rates; those regimes always end in finite-time death.
inline Mat4 asymptotic_matrix(const DensityMatrix& rho0, const ReservoirParams& params) {
  check_params(params);
  if (params.m > 0.0 || params.n > 0.0)
    throw FiniteTemperatureError("asymptotic matrix is defined for zero-temperature reservoirs");
  if (std::abs(params.gamma1 - params.gamma2) > 1e-12 * std::max(params.gamma1, params.gamma2))
    throw InputError("asymptotic matrix requires equal decay rates");
  const Mat4& e = rho0.elements;
  Mat4 w{};
  w[0][0] = e[0][0];
  w[0][1] = e[1][0];
  w[0][2] = e[0][2];
  w[0][3] = e[1][2];
  w[1][0] = e[0][1];
  w[1][1] = e[0][0] + e[1][1];
  w[1][2] = e[0][3];
  w[1][3] = e[0][2] + e[1][3];
  w[2][0] = e[2][0];
  w[2][1] = e[3][0];
  w[2][2] = e[0][0] + e[2][2];
  w[2][3] = e[1][0] + e[3][2];
  w[3][0] = e[2][1];
  w[3][1] = e[2][0] + e[3][1];
  w[3][2] = e[0][1] + e[2][3];
  w[3][3] = 1.0;
  return hermitized(w);
}

}  // namespace esdlab
