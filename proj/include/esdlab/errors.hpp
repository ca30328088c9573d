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

#include <stdexcept>
#include <string>

namespace esdlab {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or states that fail validation. The CLI maps these to exit
// code 2, everything else under Error to exit code 3.
struct InputError : Error {
  using Error::Error;
};

// Density matrix has off-diagonal weight outside the X pattern.
struct NotXStateError : InputError {
  using InputError::InputError;
};

// A routine that only makes sense for entangled input got a separable state.
struct SeparableInputError : InputError {
  using InputError::InputError;
};

// State does not satisfy the coherence/population inequality the requested
// closed form assumes.
struct CaseMismatchError : InputError {
  using InputError::InputError;
};

// A zero-temperature-only routine was called with thermal occupation.
struct FiniteTemperatureError : InputError {
  using InputError::InputError;
};

// The fixed-step integrator would need more steps than the configured cap.
struct StepBudgetError : Error {
  using Error::Error;
};

// An iterative numerical routine failed to settle within its sweep limit.
struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace esdlab
