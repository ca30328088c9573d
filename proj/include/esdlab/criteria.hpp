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
#include <string>
#include <utility>
#include <vector>

#include "esdlab/errors.hpp"
#include "esdlab/state.hpp"
#include "esdlab/thermal.hpp"

// Closed-form answers to "does entanglement of this X state die in finite
// time, and when": sign criteria on the asymptotic state for zero
// temperature, quartic minor polynomials for equal finite occupations, and
// the exact negativity of the evolved state in the two single-block cases.

namespace esdlab {

struct EsdVerdict {
  bool will_die = false;
  bool boundary = false;  // some condition sits inside the tolerance band
  std::vector<std::pair<std::string, double>> conditions;
};

// Zero temperature, equal decay rates. Entanglement dies in finite time
// exactly when both expressions below are strictly positive; if either is
// negative the state stays entangled for all finite times and the negativity
// only vanishes asymptotically.
inline EsdVerdict esd_zero_temperature(const XState& x) {
  if (!x_entangled(x)) throw SeparableInputError("state is separable, nothing to lose");
  EsdVerdict v;
  const double c1 = x.p11 - std::norm(x.c23);
  const double c2 = (x.p11 + x.p22) * (x.p11 + x.p33) - std::norm(x.c14);
  v.conditions.emplace_back("p11 - |c23|^2", c1);
  v.conditions.emplace_back("(p11+p22)*(p11+p33) - |c14|^2", c2);
  v.boundary = std::abs(c1) <= tol::psd || std::abs(c2) <= tol::psd;
  v.will_die = c1 > tol::psd && c2 > tol::psd;
  return v;
}

// Negativity of the evolved state at zero temperature, equal rates, when the
// partial transpose is negative in its {1,4} block (p11*p44 < |c23|^2).
// Written in terms of the surviving excited-state fraction p = exp(-gamma t).
inline double negativity_case1(const XState& x, double p) {
  if (!(p > 0.0) || p > 1.0) throw InputError("decay fraction p must lie in (0, 1]");
  if (!(x.p11 * x.p44 < std::norm(x.c23)))
    throw CaseMismatchError("negativity_case1 needs p11*p44 < |c23|^2");
  const double f =
      (1.0 - 2.0 * p + 2.0 * p * p) * x.p11 + (1.0 - p) * (x.p22 + x.p33) + x.p44;
  const double disc =
      f * f - 4.0 * p * p * (x.p11 * f - p * p * x.p11 * x.p11 - std::norm(x.c23));
  return std::max(0.0, std::sqrt(std::max(disc, 0.0)) - f);
}

// Same regime, negativity carried by the {2,3} block (p22*p33 < |c14|^2).
inline double negativity_case2(const XState& x, double p) {
  if (!(p > 0.0) || p > 1.0) throw InputError("decay fraction p must lie in (0, 1]");
  if (!(x.p22 * x.p33 < std::norm(x.c14)))
    throw CaseMismatchError("negativity_case2 needs p22*p33 < |c14|^2");
  const double root =
      std::sqrt((x.p22 - x.p33) * (x.p22 - x.p33) + 4.0 * std::norm(x.c14));
  return std::max(0.0, p * (root - (x.p22 + x.p33) - (2.0 - 2.0 * p) * x.p11));
}

// Quartic polynomial in E = exp(-decay_base * t) representing one principal
// minor of the partially transposed evolved state, times `norm`.
struct MinorPolynomial {
  double constant = 0.0;
  std::array<double, 4> coeffs{};  // coefficients of E, E^2, E^3, E^4
  double decay_base = 0.0;
  double norm = 1.0;

  double evaluate(double t) const {
    const double e = std::exp(-decay_base * t);
    double acc = coeffs[3];
    acc = acc * e + coeffs[2];
    acc = acc * e + coeffs[1];
    acc = acc * e + coeffs[0];
    acc = acc * e + constant;
    return acc / norm;
  }
};

struct MinorPolynomials {
  MinorPolynomial minor14;  // det of the {1,4} block of the partial transpose
  MinorPolynomial minor23;  // det of the {2,3} block
};

// Equal occupations m on both qubits, equal rate gamma. The populations are
// quadratics in E = exp(-(2m+1) gamma t), so each 2x2 minor of the partial
// transpose is a quartic. Coefficients are assembled from the population
// amplitudes directly; norm is (2m+1)^4 so integer-weight inputs stay exact.
inline MinorPolynomials finite_temperature_minors(const XState& x, double m, double gamma) {
  if (!(m >= 0.0)) throw InputError("thermal occupation must be non-negative");
  if (!(gamma > 0.0)) throw InputError("decay rate must be positive");

  const double A = (m + 1.0) * x.p11 - m * x.p22 + (m + 1.0) * x.p33 - m * x.p44;
  const double B = (m + 1.0) * (x.p11 + x.p22) - m * (x.p33 + x.p44);
  const double C = (m + 1.0) * (m + 1.0) * x.p11 - m * (m + 1.0) * (x.p22 + x.p33) + m * m * x.p44;

  // Population i evolves as (k_i + a_i E + b_i E^2) / (2m+1)^2.
  const double k1 = m * m, a1 = m * (A + B), b1 = C;
  const double k2 = m * (m + 1.0), a2 = -m * A + (m + 1.0) * B, b2 = -C;
  const double k3 = m * (m + 1.0), a3 = (m + 1.0) * A - m * B, b3 = -C;
  const double k4 = (m + 1.0) * (m + 1.0), a4 = -(m + 1.0) * (A + B), b4 = C;

  const double w = 2.0 * m + 1.0;
  const double norm = w * w * w * w;

  MinorPolynomials out;
  // Each anti-diagonal coherence decays as exp(-(m+1/2)gamma t) per
  // reservoir, so with equal rates |c(t)|^2 = |c(0)|^2 E^2 and the coherence
  // term lands entirely in the E^2 coefficient.
  out.minor14.constant = k1 * k4;
  out.minor14.coeffs = {k1 * a4 + a1 * k4,
                        k1 * b4 + a1 * a4 + b1 * k4 - norm * std::norm(x.c23),
                        a1 * b4 + b1 * a4, b1 * b4};
  out.minor14.decay_base = w * gamma;
  out.minor14.norm = norm;

  out.minor23.constant = k2 * k3;
  out.minor23.coeffs = {k2 * a3 + a2 * k3,
                        k2 * b3 + a2 * a3 + b2 * k3 - norm * std::norm(x.c14),
                        a2 * b3 + b2 * a3, b2 * b3};
  out.minor23.decay_base = w * gamma;
  out.minor23.norm = norm;
  return out;
}

// Fully expanded coefficient formulas for the same two quartics, written out
// term by term in the populations and coherences. Kept as an independent
// cross-check of the assembled version above; see the tests for the one
// coefficient where the two derivations disagree.
struct ExpandedMinorCoefficients {
  std::array<double, 4> f;  // E..E^4 coefficients of the {1,4} block quartic
  std::array<double, 4> g;  // same for the {2,3} block
};

inline ExpandedMinorCoefficients expanded_minor_coefficients(const XState& x, double m) {
  if (!(m >= 0.0)) throw InputError("thermal occupation must be non-negative");
  const double p11 = x.p11, p22 = x.p22, p33 = x.p33, p44 = x.p44;
  const double c23sq = std::norm(x.c23);
  const double c14sq = std::norm(x.c14);
  const double m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
  const double mp1 = m + 1.0;

  ExpandedMinorCoefficients out;

  out.f[0] = m * mp1 * ((2.0 * m + 1.0) * p11 + p22 + p33 - 2.0 * m * p44);

  out.f[1] = -2.0 * m4 * (2.0 * p44 * p44 - p44 + p22 + 8.0 * c23sq + p33) +
             2.0 * m3 *
                 (-2.0 * p44 * p44 + 2.0 * p33 * p44 + p44 - 16.0 * c23sq - 2.0 * p33 +
                  2.0 * p22 * (p44 - 1.0)) -
             m2 *
                 (p22 * p22 + (2.0 * p33 - 4.0 * p44 + 3.0) * p22 + p33 * p33 + 24.0 * c23sq +
                  3.0 * p33 - 4.0 * p33 * p44 - p44) -
             4.0 * m * mp1 * mp1 * mp1 * p11 * p11 -
             m * (p22 * p22 + 2.0 * p33 * p22 + p22 + p33 * p33 + 8.0 * c23sq + p33) - c23sq +
             mp1 * mp1 * p11 *
                 ((8.0 * p44 + 2.0) * m2 + (-4.0 * p22 - 4.0 * p33 + 2.0) * m + 1.0);

  out.f[2] = -2.0 * p11 * p11 * mp1 * mp1 * mp1 +
             mp1 * p11 * ((2.0 * m2 + m - 1.0) * (p22 + p33) + 2.0 * m * p44) +
             m * (mp1 * p22 * p22 +
                  (2.0 * mp1 * p33 - m * (2.0 * m + 3.0) * p44) * p22 + mp1 * p33 * p33 +
                  2.0 * m2 * p44 * p44 - m * (2.0 * m + 3.0) * p33 * p44);

  {
    const double root = m2 * (p11 - p22 - p33 + p44) + m * (2.0 * p11 - p22 - p33) + p11;
    out.f[3] = root * root;
  }

  out.g[0] = out.f[0];

  out.g[1] = -2.0 * m4 *
                 (2.0 * p22 * p22 - 4.0 * p33 * p22 - p22 + 2.0 * p33 * p33 + p11 - p33 +
                  8.0 * c14sq + p44) -
             2.0 * m3 *
                 (4.0 * p22 * p22 - 8.0 * p33 * p22 - 2.0 * p22 + 4.0 * p33 * p33 + 3.0 * p11 -
                  2.0 * p33 + 16.0 * c14sq + p44) +
             m2 *
                 (p11 * p11 - 2.0 * (p44 + 3.0) * p11 - 6.0 * p22 * p22 - 6.0 * p33 * p33 +
                  p44 * p44 + 2.0 * p22 + 12.0 * p22 * p33 + 2.0 * p33 - 24.0 * c14sq) +
             m * (2.0 * p11 * p11 + (p22 + p33 - 2.0 * p44 - 2.0) * p11 - 2.0 * p22 * p22 -
                  2.0 * p33 * p33 + 4.0 * p22 * p33 - 8.0 * c14sq - p22 * p44 - p33 * p44) +
             p11 * p11 + p22 * p33 + p11 * (p22 + p33) - c14sq;

  out.g[2] = out.f[2];
  out.g[3] = out.f[3];
  return out;
}

// Finite-time death test for arbitrary occupations. Any strictly thermal
// reservoir (m > 0 or n > 0) pushes the state toward a full-rank product
// steady state, so entanglement always dies in finite time; the two block
// minors of the partial transpose at a late time are evaluated as a numeric
// cross-check and reported. At zero temperature the question is delegated to
// the sign criteria on the asymptotic state.
inline EsdVerdict esd_finite_temperature(const XState& x, const ReservoirParams& params) {
  check_params(params);
  if (!x_entangled(x)) throw SeparableInputError("state is separable, nothing to lose");
  if (params.m == 0.0 && params.n == 0.0) return esd_zero_temperature(x);

  EsdVerdict v;
  v.will_die = true;
  const double g_ref = std::max(params.gamma1, params.gamma2);
  const double t_late = 30.0 / g_ref;
  const Mat4 late = detail::propagate(to_density(x).elements, params, t_late);
  const Mat4 pt = partial_transpose_b(late);
  const double m14 = principal_minor(pt, {1, 4});
  const double m23 = principal_minor(pt, {2, 3});
  v.conditions.emplace_back("minor14 at t=30/gamma", m14);
  v.conditions.emplace_back("minor23 at t=30/gamma", m23);
  v.boundary = std::min(m14, m23) <= tol::psd;
  return v;
}

}  // namespace esdlab
