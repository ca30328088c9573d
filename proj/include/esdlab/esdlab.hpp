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

// Convenience umbrella for the numeric core. io.hpp is deliberately not
// pulled in here; include it directly where JSON or CSV handling is needed.

#include "esdlab/control.hpp"
#include "esdlab/criteria.hpp"
#include "esdlab/eigen.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"
#include "esdlab/oracle.hpp"
#include "esdlab/presets.hpp"
#include "esdlab/state.hpp"
#include "esdlab/thermal.hpp"
