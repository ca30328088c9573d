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

#include <array>
#include <cmath>
#include <complex>

// Small dense complex matrices for two-qubit work. Everything is a plain
// std::array value type; no allocation, no aliasing concerns.

namespace esdlab {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Mat4 = std::array<std::array<cplx, 4>, 4>;

namespace tol {
// The analytic propagator is exact up to rounding, so these bands only have
// to absorb eigensolver round-off and the RK4 cross-check error.
inline constexpr double herm = 1e-10;       // Hermiticity residual
inline constexpr double trace = 1e-10;      // |tr(rho) - 1|
inline constexpr double psd = 1e-9;         // eigenvalue / minor boundary band
inline constexpr double x_element = 1e-10;  // elements an X-state must not have
inline constexpr double neg = 1e-12;        // negativity considered zero
inline constexpr double angle = 1e-12;      // |sin(2*theta)| for X preservation
}  // namespace tol

inline Mat4 zeros4() {
  Mat4 r{};
  return r;
}

inline Mat4 identity4() {
  Mat4 r{};
  for (int i = 0; i < 4; ++i) r[i][i] = 1.0;
  return r;
}

inline Mat4 mat_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const cplx aik = a[i][k];
      if (aik == cplx{}) continue;
      for (int j = 0; j < 4; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

inline Mat4 mat_add(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

inline Mat4 mat_sub(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] - b[i][j];
  return r;
}

inline Mat4 mat_scale(const Mat4& a, cplx s) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = s * a[i][j];
  return r;
}

inline Mat4 adjoint(const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

inline cplx trace(const Mat4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

// (a + a^dagger)/2, used to keep rounding noise off the Hermitian part.
inline Mat4 hermitized(const Mat4& a) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = 0.5 * (a[i][j] + std::conj(a[j][i]));
  return r;
}

inline double herm_residual(const Mat4& a) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a[i][j] - std::conj(a[j][i])));
  return worst;
}

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

// Tensor product, qubit A in the slow (first) index slot.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (int ia = 0; ia < 2; ++ia)
    for (int ib = 0; ib < 2; ++ib)
      for (int ja = 0; ja < 2; ++ja)
        for (int jb = 0; jb < 2; ++jb) r[2 * ia + ib][2 * ja + jb] = a[ia][ja] * b[ib][jb];
  return r;
}

}  // namespace esdlab
