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
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "esdlab/errors.hpp"
#include "esdlab/matrix.hpp"
#include "esdlab/state.hpp"
#include "esdlab/thermal.hpp"

// JSON and CSV plumbing. Kept out of the core headers so numeric code does
// not pay for the json parser at compile time; include this where files or
// streams are involved.

namespace esdlab {

// 17 significant digits round-trip a double exactly.
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline nlohmann::json state_to_json(const DensityMatrix& rho) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) {
      rrow.push_back(rho.elements[i][j].real());
      irow.push_back(rho.elements[i][j].imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return nlohmann::json{{"basis", "11,10,01,00"}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace detail {

inline double num_at(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw InputError(std::string("state JSON needs numeric field '") + key + "'");
  return j.at(key).get<double>();
}

inline cplx pair_at(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return cplx{};
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InputError(std::string("field '") + key + "' must be a [re, im] pair");
  return cplx{v[0].get<double>(), v[1].get<double>()};
}

}  // namespace detail

// Accepts the full form {basis, re, im} (basis optional but checked when
// present) and the compact X form {p11, p22, p33, p44, c14, c23} with the
// coherences as optional [re, im] pairs.
inline DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("state JSON must be an object");
  if (j.contains("re") || j.contains("im")) {
    if (j.contains("basis") && j.at("basis") != "11,10,01,00")
      throw InputError("unsupported basis ordering; expected \"11,10,01,00\"");
    const auto grab = [&](const char* key) {
      if (!j.contains(key)) throw InputError(std::string("state JSON needs matrix '") + key + "'");
      const auto& a = j.at(key);
      if (!a.is_array() || a.size() != 4) throw InputError("matrix must be 4 rows of 4 numbers");
      return a;
    };
    const auto re = grab("re");
    const auto im = grab("im");
    DensityMatrix rho;
    for (int i = 0; i < 4; ++i) {
      if (!re[i].is_array() || re[i].size() != 4 || !im[i].is_array() || im[i].size() != 4)
        throw InputError("matrix must be 4 rows of 4 numbers");
      for (int k = 0; k < 4; ++k) {
        if (!re[i][k].is_number() || !im[i][k].is_number())
          throw InputError("matrix entries must be numbers");
        rho.elements[i][k] = cplx{re[i][k].get<double>(), im[i][k].get<double>()};
      }
    }
    return rho;
  }
  if (j.contains("p11")) {
    XState x;
    x.p11 = detail::num_at(j, "p11");
    x.p22 = detail::num_at(j, "p22");
    x.p33 = detail::num_at(j, "p33");
    x.p44 = detail::num_at(j, "p44");
    x.c14 = detail::pair_at(j, "c14");
    x.c23 = detail::pair_at(j, "c23");
    return to_density(x);
  }
  throw InputError("state JSON must carry either re/im matrices or p11..p44 populations");
}

inline nlohmann::json params_to_json(const ReservoirParams& p) {
  return nlohmann::json{{"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"m", p.m}, {"n", p.n}};
}

// "start:stop:step" inclusive of both ends up to rounding; the sample count
// is derived first so accumulated addition error cannot drop the endpoint.
inline std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.0, stop = 0.0, step = 0.0;
  char tail = '\0';
  const int got = std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &tail);
  if (got != 3) throw InputError("grid must be start:stop:step, got '" + spec + "'");
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  if (stop < start) throw InputError("grid stop must not precede start");
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

// One CSV row, fields joined with commas, LF terminated. Fields are assumed
// not to contain commas or quotes; everything written here is numeric or a
// fixed token.
inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace esdlab
