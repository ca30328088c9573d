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

#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>

#include "esdlab/errors.hpp"
#include "esdlab/state.hpp"

// Named initial states used in tests and on the command line.

namespace esdlab {

inline XState bell_psi_plus() {
  XState x;
  x.p22 = 0.5;
  x.p33 = 0.5;
  x.c23 = 0.5;
  return x;
}

inline XState bell_phi_plus() {
  XState x;
  x.p11 = 0.5;
  x.p44 = 0.5;
  x.c14 = 0.5;
  return x;
}

// Mixture with weights 1:2 of the doubly excited projector and the symmetric
// single-excitation Bell projector. A standard example of a state whose
// entanglement dies in finite time even at zero temperature.
inline XState excited_psi_mixture() {
  XState x;
  x.p11 = 1.0 / 3.0;
  x.p22 = 1.0 / 3.0;
  x.p33 = 1.0 / 3.0;
  x.c23 = 1.0 / 3.0;
  return x;
}

inline XState werner_singlet(double a) {
  if (!(a > 0.0) || a > 1.0) throw InputError("werner mixing parameter must lie in (0, 1]");
  XState x;
  x.p11 = (1.0 - a) / 4.0;
  x.p44 = (1.0 - a) / 4.0;
  x.p22 = (1.0 + a) / 4.0;
  x.p33 = (1.0 + a) / 4.0;
  x.c23 = -a / 2.0;
  return x;
}

inline XState werner_triplet(double a) {
  if (!(a > 0.0) || a > 1.0) throw InputError("werner mixing parameter must lie in (0, 1]");
  XState x;
  x.p11 = (1.0 + a) / 4.0;
  x.p44 = (1.0 + a) / 4.0;
  x.p22 = (1.0 - a) / 4.0;
  x.p33 = (1.0 - a) / 4.0;
  x.c14 = a / 2.0;
  return x;
}

// Registry lookup for CLI and config use. Parameterized families take a
// trailing ":value", e.g. "werner-singlet:0.5". The token "eq18" is kept
// stable for scripts and names the excited/Bell mixture above.
inline XState preset(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  std::string arg;
  if (colon != std::string_view::npos) arg = std::string(name.substr(colon + 1));

  auto param = [&]() -> double {
    if (arg.empty()) throw InputError("preset '" + std::string(head) + "' needs a parameter, e.g. '" +
                                      std::string(head) + ":0.5'");
    try {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw InputError("could not parse preset parameter '" + arg + "'");
    }
  };
  auto no_param = [&]() {
    if (!arg.empty())
      throw InputError("preset '" + std::string(head) + "' does not take a parameter");
  };

  if (head == "eq18") {
    no_param();
    return excited_psi_mixture();
  }
  if (head == "bell-psi-plus") {
    no_param();
    return bell_psi_plus();
  }
  if (head == "bell-phi-plus") {
    no_param();
    return bell_phi_plus();
  }
  if (head == "werner-singlet") return werner_singlet(param());
  if (head == "werner-triplet") return werner_triplet(param());
  throw InputError("unknown preset '" + std::string(name) + "'");
}

}  // namespace esdlab
