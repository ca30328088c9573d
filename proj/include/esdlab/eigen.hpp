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

#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"

namespace esdlab {

namespace detail {

// Cyclic Jacobi for a real symmetric n x n matrix held in a flat row-major
// array. Only eigenvalues are needed, so no eigenvector accumulation.
template <int N>
inline std::array<double, N> jacobi_eigenvalues(std::array<double, N * N>& a) {
  auto at = [&](int i, int j) -> double& { return a[i * N + j]; };

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N - 1; ++p)
      for (int q = p + 1; q < N; ++q) off += std::abs(at(p, q));
    if (off == 0.0) {
      std::array<double, N> ev;
      for (int i = 0; i < N; ++i) ev[i] = at(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }

    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        const double g = 100.0 * std::abs(apq);
        // Once a pivot is negligible against both diagonal entries it can be
        // zeroed outright without moving the spectrum at double precision.
        if (sweep > 3 && std::abs(at(p, p)) + g == std::abs(at(p, p)) &&
            std::abs(at(q, q)) + g == std::abs(at(q, q))) {
          at(p, q) = 0.0;
          at(q, p) = 0.0;
          continue;
        }
        if (apq == 0.0) continue;

        double t;
        const double h = at(q, q) - at(p, p);
        if (std::abs(h) + g == std::abs(h)) {
          t = apq / h;
        } else {
          const double theta = 0.5 * h / apq;
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double delta = t * apq;

        at(p, p) -= delta;
        at(q, q) += delta;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        auto rotate = [&](int i1, int j1, int i2, int j2) {
          const double x = at(i1, j1);
          const double y = at(i2, j2);
          at(i1, j1) = x - s * (y + tau * x);
          at(i2, j2) = y + s * (x - tau * y);
          at(j1, i1) = at(i1, j1);
          at(j2, i2) = at(i2, j2);
        };
        for (int k = 0; k < p; ++k) rotate(k, p, k, q);
        for (int k = p + 1; k < q; ++k) rotate(p, k, k, q);
        for (int k = q + 1; k < N; ++k) rotate(p, k, q, k);
      }
    }
  }
  throw ConvergenceError("jacobi eigensolver did not converge in 60 sweeps");
}

}  // namespace detail

// Eigenvalues of a 4 x 4 Hermitian matrix, ascending. Works on the real
// symmetric embedding [[A, -B], [B, A]] of H = A + iB, whose spectrum is the
// spectrum of H with every eigenvalue doubled; the duplicates are dropped
// after sorting.
inline std::array<double, 4> hermitian_eigenvalues(const Mat4& h_in) {
  const Mat4 h = hermitized(h_in);
  std::array<double, 64> s{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double re = h[i][j].real();
      const double im = h[i][j].imag();
      s[i * 8 + j] = re;
      s[i * 8 + (j + 4)] = -im;
      s[(i + 4) * 8 + j] = im;
      s[(i + 4) * 8 + (j + 4)] = re;
    }
  }
  const auto ev8 = detail::jacobi_eigenvalues<8>(s);
  return {ev8[0], ev8[2], ev8[4], ev8[6]};
}

}  // namespace esdlab
