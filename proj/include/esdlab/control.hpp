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
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "esdlab/criteria.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"
#include "esdlab/state.hpp"
#include "esdlab/thermal.hpp"

// Death-time search and the instantaneous local-unitary switch that can
// hasten, delay, or (in one regime) avert the loss of entanglement.

namespace esdlab {

// One-qubit rotation with all the phase freedom that matters here:
//   [ cos(theta) e^{i alpha},           -sin(theta) e^{i (alpha - omega)} ]
//   [ sin(theta) e^{i (beta + omega)},   cos(theta) e^{i beta}            ]
struct LocalUnitaryParams {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double omega = 0.0;
};

inline Mat2 unitary2(const LocalUnitaryParams& u) {
  const double c = std::cos(u.theta);
  const double s = std::sin(u.theta);
  const cplx i{0.0, 1.0};
  Mat2 r;
  r[0][0] = c * std::exp(i * u.alpha);
  r[0][1] = -s * std::exp(i * (u.alpha - u.omega));
  r[1][0] = s * std::exp(i * (u.beta + u.omega));
  r[1][1] = c * std::exp(i * u.beta);
  return r;
}

// A product of such rotations maps X states to X states exactly when each
// factor is either diagonal or anti-diagonal, i.e. theta is a multiple of
// pi/2 on both qubits.
inline bool is_x_preserving(const LocalUnitaryParams& ua, const LocalUnitaryParams& ub) {
  return std::abs(std::sin(2.0 * ua.theta)) <= tol::angle &&
         std::abs(std::sin(2.0 * ub.theta)) <= tol::angle;
}

inline DensityMatrix apply_switch(const DensityMatrix& rho, const LocalUnitaryParams& ua,
                                  const LocalUnitaryParams& ub) {
  const ValidationReport rep = validate(rho);
  if (!rep.valid) throw InputError("switch applied to an invalid density matrix");
  const Mat4 u = kron(unitary2(ua), unitary2(ub));
  return DensityMatrix{hermitized(mat_mul(u, mat_mul(rho.elements, adjoint(u))))};
}

// The two switches used throughout: a pi/2 rotation on both qubits, which on
// an X state exchanges p11 with p44 and p22 with p33 (and conjugates the
// coherences), or on qubit B alone, which exchanges p11 with p22 and p33 with
// p44 while swapping the roles of the two coherences.
inline LocalUnitaryParams quarter_turn() { return LocalUnitaryParams{std::acos(-1.0) / 2.0, 0.0, 0.0, 0.0}; }

struct SwitchSchedule {
  double t_sw = 0.0;
  LocalUnitaryParams qubit_a;
  LocalUnitaryParams qubit_b;
};

inline SwitchSchedule swap_populations_schedule(double t_sw) {
  return SwitchSchedule{t_sw, quarter_turn(), quarter_turn()};
}

inline SwitchSchedule swap_b_only_schedule(double t_sw) {
  return SwitchSchedule{t_sw, LocalUnitaryParams{}, quarter_turn()};
}

// Knobs for the death-time scan. The defaults match the documented contract;
// tests tighten h_scan to check the result is grid-independent.
struct ScanControls {
  double h_scan = 0.01;        // coarse step, units of 1/gamma_ref
  double tau_t = 1e-6;         // bisection tolerance, units of 1/gamma_ref
  double verify_window = 0.5;  // re-entanglement lookahead, units of 1/gamma_ref
};

namespace detail {

// Sign of the sharpest of the seven principal minors of the partial
// transpose: negative means entangled. Using the minor instead of the
// negativity keeps the test exact at the crossing (no eigensolver floor).
inline double min_minor_at(const Mat4& base, const ReservoirParams& prm, double t) {
  return seven_principal_minors(partial_transpose_b(propagate(base, prm, t))).min();
}

}  // namespace detail

// First time the state becomes (and stays) separable, or nullopt if it is
// still entangled at the horizon. The state is entangled at t exactly when
// the minimal principal minor of the partial transpose is negative; death is
// its first sign change that survives a lookahead window, which matters
// because a switch can make a dead state revive.
inline std::optional<double> find_esd_time(const DensityMatrix& rho0, const ReservoirParams& params,
                                           const std::optional<SwitchSchedule>& schedule,
                                           double horizon = 30.0,
                                           const ScanControls& scan = ScanControls{}) {
  check_params(params);
  if (!(horizon > 0.0)) throw InputError("horizon must be positive");
  if (!(scan.h_scan > 0.0) || !(scan.tau_t > 0.0) || !(scan.verify_window >= 0.0))
    throw InputError("scan controls must be positive");
  {
    const ValidationReport rep = validate(rho0);
    if (!rep.valid) throw InputError("initial state failed validation");
  }

  const double g_ref = std::max(params.gamma1, params.gamma2);
  const double h = scan.h_scan / g_ref;
  const double tau = scan.tau_t / g_ref;
  const double lookahead = scan.verify_window / g_ref;

  double t_sw = -1.0;
  Mat4 switched{};
  if (schedule) {
    if (schedule->t_sw < 0.0) throw InputError("switch time must be non-negative");
    if (schedule->t_sw <= horizon) {
      t_sw = schedule->t_sw;
      const DensityMatrix at_sw{detail::propagate(rho0.elements, params, t_sw)};
      switched = apply_switch(at_sw, schedule->qubit_a, schedule->qubit_b).elements;
    }
  }

  auto min_minor = [&](double t) -> double {
    if (t_sw >= 0.0 && t >= t_sw)
      return detail::min_minor_at(switched, params, t - t_sw);
    return detail::min_minor_at(rho0.elements, params, t);
  };

  if (min_minor(0.0) >= 0.0) throw SeparableInputError("initial state is not entangled");

  // Coarse scan for a sign change, refine by bisection, then confirm the
  // state does not come back within the lookahead window. A failed
  // confirmation resumes the scan from the revival point.
  double t_lo = 0.0;
  while (t_lo < horizon) {
    double t_hi = std::min(t_lo + h, horizon);
    if (min_minor(t_hi) < 0.0) {
      t_lo = t_hi;
      if (t_lo >= horizon) return std::nullopt;
      continue;
    }
    // Bracketed: minor < 0 at t_lo, >= 0 at t_hi.
    double lo = t_lo, hi = t_hi;
    while (hi - lo > tau) {
      const double mid = 0.5 * (lo + hi);
      (min_minor(mid) < 0.0 ? lo : hi) = mid;
    }
    const double candidate = hi;
    bool confirmed = true;
    double revival = candidate;
    for (double tv = candidate; tv <= candidate + lookahead; tv += h) {
      if (min_minor(tv) < 0.0) {
        confirmed = false;
        revival = tv;
        break;
      }
    }
    if (confirmed) return candidate;
    t_lo = revival;
  }
  return std::nullopt;
}

struct SweepSample {
  double t_sw = 0.0;
  std::optional<double> t_end;  // death time with the switch at t_sw
};

struct SweepResult {
  std::vector<SweepSample> samples;
  std::optional<double> t_esd_no_switch;
  std::optional<double> t_end_max;
  // Largest switch time that still delays death past the unswitched value,
  // interpolated linearly between the bracketing grid points. Empty when no
  // grid point delays death or when the unswitched state never dies.
  std::optional<double> t_b;
};

inline SweepResult sweep_switch(const DensityMatrix& rho0, const ReservoirParams& params,
                                const LocalUnitaryParams& ua, const LocalUnitaryParams& ub,
                                const std::vector<double>& grid, double horizon = 30.0) {
  check_params(params);
  if (grid.empty()) throw InputError("sweep grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || grid[i] > horizon)
      throw InputError("sweep grid values must lie in [0, horizon]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InputError("sweep grid must be strictly increasing");
  }

  SweepResult res;
  res.t_esd_no_switch = find_esd_time(rho0, params, std::nullopt, horizon);
  res.samples.resize(grid.size());

  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers =
      std::min<unsigned>(std::max(1u, hw), static_cast<unsigned>(grid.size()));

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run_range = [&](unsigned start, unsigned stride) {
    for (std::size_t i = start; i < grid.size(); i += stride) {
      try {
        SwitchSchedule sched{grid[i], ua, ub};
        res.samples[i] = SweepSample{grid[i], find_esd_time(rho0, params, sched, horizon)};
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& s : res.samples)
    if (s.t_end && (!res.t_end_max || *s.t_end > *res.t_end_max)) res.t_end_max = *s.t_end;

  if (res.t_esd_no_switch) {
    // Margin keeps bisection jitter at the scale of tau_t from flipping the
    // delayed/not-delayed classification of a grid point.
    const double g_ref = std::max(params.gamma1, params.gamma2);
    const double margin = 1e-5 / g_ref;
    const double t_no = *res.t_esd_no_switch;
    auto end_of = [&](std::size_t i) {
      return res.samples[i].t_end ? *res.samples[i].t_end : std::numeric_limits<double>::infinity();
    };
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < res.samples.size(); ++i)
      if (end_of(i) > t_no + margin) last = static_cast<std::ptrdiff_t>(i);
    if (last >= 0) {
      const std::size_t i = static_cast<std::size_t>(last);
      if (i + 1 < res.samples.size() && std::isfinite(end_of(i)) && std::isfinite(end_of(i + 1)) &&
          end_of(i) > end_of(i + 1)) {
        // Crossing of t_end(t_sw) with the constant t_no between grid points.
        const double t0 = res.samples[i].t_sw, t1 = res.samples[i + 1].t_sw;
        res.t_b = t0 + (end_of(i) - t_no) * (t1 - t0) / (end_of(i) - end_of(i + 1));
      } else {
        res.t_b = res.samples[i].t_sw;
      }
    }
  }
  return res;
}

// Latest switch time for which the double quarter-turn prevents finite-time
// death altogether, at zero temperature with equal rates. Returns nullopt
// when even an immediate switch cannot avert death. Only meaningful for
// states whose negativity lives in the {1,4} block and which are headed for
// finite-time death in the first place; anything else is an error.
inline std::optional<double> avoidance_window(const XState& x0, const ReservoirParams& params,
                                              double horizon = 30.0) {
  check_params(params);
  if (params.m > 0.0 || params.n > 0.0)
    throw FiniteTemperatureError("avoidance window is defined for zero-temperature reservoirs");
  if (std::abs(params.gamma1 - params.gamma2) > 1e-12 * std::max(params.gamma1, params.gamma2))
    throw InputError("avoidance window requires equal decay rates");

  const EsdVerdict verdict = esd_zero_temperature(x0);  // throws on separable input
  if (x_case(x0) != XCase::block14)
    throw CaseMismatchError("avoidance window needs p11*p44 < |c23|^2");
  if (!verdict.will_die)
    throw CaseMismatchError("state does not lose entanglement in finite time, nothing to avert");

  const DensityMatrix rho0 = to_density(x0);
  const auto death = find_esd_time(rho0, params, std::nullopt, horizon);
  if (!death) throw ConvergenceError("death predicted but not found before the horizon");

  auto averted = [&](double t) -> bool {
    const DensityMatrix at_t{detail::propagate(rho0.elements, params, t)};
    const DensityMatrix flipped = apply_switch(at_t, quarter_turn(), quarter_turn());
    try {
      return !esd_zero_temperature(as_x_state(flipped)).will_die;
    } catch (const SeparableInputError&) {
      return false;  // already dead at the switch moment
    }
  };

  if (!averted(0.0)) return std::nullopt;
  double lo = 0.0, hi = *death;
  if (averted(hi)) return hi;
  const double g_ref = std::max(params.gamma1, params.gamma2);
  const double tau = 1e-6 / g_ref;
  while (hi - lo > tau) {
    const double mid = 0.5 * (lo + hi);
    (averted(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace esdlab
