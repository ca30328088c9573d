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
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "esdlab/eigen.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"

// Two-qubit density matrices in the product basis ordered
//   |1> = |11>, |2> = |10>, |3> = |01>, |4> = |00>,
// qubit A owning the slow index. With 0-based index i the excitation bits are
// a = 1 - (i >> 1) and b = 1 - (i & 1).

namespace esdlab {

struct DensityMatrix {
  Mat4 elements{};
};

// X-shaped state: populations on the diagonal plus the two anti-diagonal
// coherences rho_14 and rho_23. Everything the dynamics below does maps X
// states to X states.
struct XState {
  double p11 = 0.0;
  double p22 = 0.0;
  double p33 = 0.0;
  double p44 = 0.0;
  cplx c14{};
  cplx c23{};
};

struct ValidationCheck {
  std::string name;
  double magnitude = 0.0;  // signed value the threshold applies to
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool valid = false;
};

inline ValidationReport validate(const DensityMatrix& rho) {
  ValidationReport rep;
  const double hr = herm_residual(rho.elements);
  rep.checks.push_back({"hermiticity residual", hr, hr <= tol::herm});
  const double tr_err = std::abs(trace(rho.elements) - 1.0);
  rep.checks.push_back({"trace deviation", tr_err, tr_err <= tol::trace});
  double lmin = 0.0;
  if (rep.checks[0].pass) {
    lmin = hermitian_eigenvalues(rho.elements)[0];
    rep.checks.push_back({"smallest eigenvalue", lmin, lmin >= -tol::psd});
  } else {
    rep.checks.push_back({"smallest eigenvalue", 0.0, false});
  }
  rep.valid = rep.checks[0].pass && rep.checks[1].pass && rep.checks[2].pass;
  return rep;
}

inline ValidationReport validate(const XState& x) {
  ValidationReport rep;
  const double tr_err = std::abs(x.p11 + x.p22 + x.p33 + x.p44 - 1.0);
  rep.checks.push_back({"trace deviation", tr_err, tr_err <= tol::trace});
  const double pmin = std::min({x.p11, x.p22, x.p33, x.p44});
  rep.checks.push_back({"smallest population", pmin, pmin >= -tol::psd});
  // Positivity of an X matrix reduces to the two 2x2 blocks.
  const double b14 = std::norm(x.c14) - x.p11 * x.p44;
  rep.checks.push_back({"|c14|^2 - p11*p44", b14, b14 <= tol::psd});
  const double b23 = std::norm(x.c23) - x.p22 * x.p33;
  rep.checks.push_back({"|c23|^2 - p22*p33", b23, b23 <= tol::psd});
  rep.valid = true;
  for (const auto& c : rep.checks) rep.valid = rep.valid && c.pass;
  return rep;
}

inline DensityMatrix to_density(const XState& x) {
  DensityMatrix rho;
  rho.elements[0][0] = x.p11;
  rho.elements[1][1] = x.p22;
  rho.elements[2][2] = x.p33;
  rho.elements[3][3] = x.p44;
  rho.elements[0][3] = x.c14;
  rho.elements[3][0] = std::conj(x.c14);
  rho.elements[1][2] = x.c23;
  rho.elements[2][1] = std::conj(x.c23);
  return rho;
}

inline XState as_x_state(const DensityMatrix& rho) {
  const Mat4& e = rho.elements;
  static constexpr int off_pattern[4][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  double stray = 0.0;
  for (const auto& ij : off_pattern)
    stray = std::max({stray, std::abs(e[ij[0]][ij[1]]), std::abs(e[ij[1]][ij[0]])});
  if (stray > tol::x_element)
    throw NotXStateError("off-pattern element magnitude " + std::to_string(stray));
  return XState{e[0][0].real(), e[1][1].real(), e[2][2].real(), e[3][3].real(), e[0][3], e[1][2]};
}

// Transpose on qubit B only: (a b, a' b') -> (a b', a' b). In index terms the
// b bits of row and column swap, so rho_14 lands on slot (2,3) and rho_23 on
// slot (1,4) of the output.
inline Mat4 partial_transpose_b(const Mat4& m) {
  if (herm_residual(m) > tol::herm)
    throw InputError("partial transpose expects a Hermitian matrix");
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[(i & 2) | (j & 1)][(j & 2) | (i & 1)] = m[i][j];
  return r;
}

inline Mat4 partial_transpose(const DensityMatrix& rho) { return partial_transpose_b(rho.elements); }

namespace detail {

// Determinant of the sub-block picked by `idx` (0-based rows/columns),
// cofactor expansion along the first row. Sizes 1..4 only.
inline cplx subdet(const Mat4& m, const int* idx, int k) {
  if (k == 1) return m[idx[0]][idx[0]];
  cplx det{};
  double sign = 1.0;
  for (int c = 0; c < k; ++c) {
    int rest[3];
    int nr = 0;
    for (int r = 1; r < k; ++r) rest[nr++] = idx[r];
    int cols[3];
    int nc = 0;
    for (int cc = 0; cc < k; ++cc)
      if (cc != c) cols[nc++] = idx[cc];
    // Recurse on the minor with row idx[0] and column idx[c] removed.
    Mat4 sub{};
    for (int r = 0; r < nr; ++r)
      for (int cc = 0; cc < nc; ++cc) sub[r][cc] = m[rest[r]][cols[cc]];
    int flat[3] = {0, 1, 2};
    det += sign * m[idx[0]][idx[c]] * subdet(sub, flat, k - 1);
    sign = -sign;
  }
  return det;
}

}  // namespace detail

// Principal minor det(m[S, S]) for a 1-based index set S drawn from {1..4}.
// The matrix is expected Hermitian so the result is real; the imaginary
// residue is checked before being dropped.
inline double principal_minor(const Mat4& m, const std::vector<int>& indices) {
  if (indices.empty() || indices.size() > 4) throw InputError("minor index set must have 1 to 4 entries");
  int idx[4];
  int prev = 0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 1 || i > 4 || i <= prev)
      throw InputError("minor indices must be strictly increasing within 1..4");
    prev = i;
    idx[k] = i - 1;
  }
  const cplx det = detail::subdet(m, idx, static_cast<int>(indices.size()));
  if (std::abs(det.imag()) > tol::herm * std::max(1.0, std::abs(det.real())))
    throw InputError("principal minor has a non-negligible imaginary part");
  return det.real();
}

// The seven principal minors that decide positivity of a Hermitian 4x4 matrix
// with unit diagonal ordering {1,4}, {2,3}, and the four 3x3 and one 4x4 sets
// containing them. For an X-shaped argument the 1x1 minors are the diagonal
// itself, so the set below (all minors of order >= 2 that can go negative
// first) is what the entanglement test needs.
struct MinorSet {
  double m14 = 0.0;
  double m23 = 0.0;
  double m123 = 0.0;
  double m124 = 0.0;
  double m134 = 0.0;
  double m234 = 0.0;
  double m1234 = 0.0;

  double min() const { return std::min({m14, m23, m123, m124, m134, m234, m1234}); }
};

inline MinorSet seven_principal_minors(const Mat4& m) {
  MinorSet s;
  s.m14 = principal_minor(m, {1, 4});
  s.m23 = principal_minor(m, {2, 3});
  s.m123 = principal_minor(m, {1, 2, 3});
  s.m124 = principal_minor(m, {1, 2, 4});
  s.m134 = principal_minor(m, {1, 3, 4});
  s.m234 = principal_minor(m, {2, 3, 4});
  s.m1234 = principal_minor(m, {1, 2, 3, 4});
  return s;
}

// Sign test for entanglement: a two-qubit state is entangled exactly when its
// partial transpose fails to be positive semidefinite, and for these matrices
// that shows up as one of the seven minors above going negative.
inline std::pair<double, MinorSet> min_seven_minors(const DensityMatrix& rho) {
  const MinorSet s = seven_principal_minors(partial_transpose(rho));
  return {s.min(), s};
}

// Sum of |negative eigenvalues| of the partial transpose. Ranges over
// [0, 1/2] for two qubits; zero exactly on separable states.
inline double negativity(const DensityMatrix& rho) {
  const auto ev = hermitian_eigenvalues(partial_transpose(rho));
  double s = 0.0;
  for (const double l : ev)
    if (l < 0.0) s -= l;
  return s;
}

enum class XCase {
  none,     // both blocks of the partial transpose stay positive
  block14,  // p11*p44 < |c23|^2, negativity carried by the {1,4} block
  block23,  // p22*p33 < |c14|^2, negativity carried by the {2,3} block
};

// For an X state the partial transpose is X-shaped too, so at most one of the
// two 2x2 blocks can have a negative determinant at a time.
inline XCase x_case(const XState& x) {
  if (x.p11 * x.p44 < std::norm(x.c23)) return XCase::block14;
  if (x.p22 * x.p33 < std::norm(x.c14)) return XCase::block23;
  return XCase::none;
}

inline bool x_entangled(const XState& x) { return x_case(x) != XCase::none; }

}  // namespace esdlab
