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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esdlab/esdlab.hpp"
#include "esdlab/io.hpp"

// Command line front end. Exit codes: 0 success, 2 bad input (flags, files,
// states), 3 runtime failure inside the numerics.

namespace {

using namespace esdlab;
using nlohmann::json;

struct CommonOpts {
  std::string state_spec;
  std::string preset_name;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double m = 0.0;
  double n = 0.0;
  double horizon = 0.0;
  bool horizon_set = false;
  std::string format;
  std::string out_path;
};

void add_reservoir_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--gamma1", o.gamma1, "decay rate of qubit A (default 1)");
  cmd->add_option("--gamma2", o.gamma2, "decay rate of qubit B (default 1)");
  cmd->add_option("--m", o.m, "mean thermal occupation seen by qubit A (default 0)");
  cmd->add_option("--n", o.n, "mean thermal occupation seen by qubit B (default 0)");
}

void add_state_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--state", o.state_spec, "state as inline JSON or a path to a JSON file");
  cmd->add_option("--preset", o.preset_name,
                  "named state: eq18, bell-psi-plus, bell-phi-plus, werner-singlet:a, "
                  "werner-triplet:a");
}

void add_horizon_opt(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--horizon", o.horizon, "search horizon in time units (default 30/max gamma)")
      ->each([&o](const std::string&) { o.horizon_set = true; });
}

ReservoirParams reservoir_of(const CommonOpts& o) {
  ReservoirParams p{o.gamma1, o.gamma2, o.m, o.n};
  check_params(p);
  return p;
}

double horizon_of(const CommonOpts& o, const ReservoirParams& prm) {
  if (o.horizon_set) {
    if (!(o.horizon > 0.0)) throw InputError("--horizon must be positive");
    return o.horizon;
  }
  if (const char* env = std::getenv("ESDLAB_HORIZON")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw InputError("ESDLAB_HORIZON must be a positive number");
    return v;
  }
  return 30.0 / std::max(prm.gamma1, prm.gamma2);
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("could not parse JSON from " + origin + ": " + e.what());
  }
}

DensityMatrix resolve_state(const CommonOpts& o) {
  if (o.state_spec.empty() == o.preset_name.empty())
    throw InputError("give exactly one of --state or --preset");
  if (!o.preset_name.empty()) return to_density(preset(o.preset_name));

  const auto first = o.state_spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && o.state_spec[first] == '{')
    return state_from_json(parse_json_text(o.state_spec, "--state"));

  std::ifstream in(o.state_spec);
  if (!in) throw InputError("could not open state file '" + o.state_spec + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json(parse_json_text(buf.str(), "file '" + o.state_spec + "'"));
}

// Output stream selection; keeps the ofstream alive while in use.
struct Sink {
  std::ofstream file;
  std::ostream* os = nullptr;

  explicit Sink(const std::string& path) {
    if (path.empty()) {
      os = &std::cout;
    } else {
      file.open(path);
      if (!file) throw InputError("could not open output file '" + path + "'");
      os = &file;
    }
  }
  std::ostream& out() { return *os; }
};

std::pair<LocalUnitaryParams, LocalUnitaryParams> switch_pair(const std::string& kind) {
  if (kind == "11-44") return {quarter_turn(), quarter_turn()};
  if (kind == "b-only") return {LocalUnitaryParams{}, quarter_turn()};
  throw InputError("unknown --swap value '" + kind + "', expected 11-44 or b-only");
}

std::string death_text(const std::optional<double>& t, double horizon) {
  if (t) return format_g17(*t);
  char buf[64];
  std::snprintf(buf, sizeof buf, "no-death(horizon=%g)", horizon);
  return buf;
}

// ---- evolve ----------------------------------------------------------------

struct EvolveOpts {
  CommonOpts common;
  std::vector<double> times;
  std::string grid;
  bool oracle = false;
};

int run_evolve(const EvolveOpts& o) {
  const ReservoirParams prm = reservoir_of(o.common);
  const DensityMatrix rho0 = resolve_state(o.common);
  if (o.times.empty() == o.grid.empty())
    throw InputError("give exactly one of --t or --grid");
  const std::vector<double> times = o.times.empty() ? parse_grid(o.grid) : o.times;

  const std::string format = o.common.format.empty() ? "csv" : o.common.format;
  Sink sink(o.common.out_path);

  struct Row {
    double t;
    DensityMatrix state;
    double neg;
    std::optional<double> dev;
  };
  std::vector<Row> rows;
  rows.reserve(times.size());
  for (const double t : times) {
    Row r{t, evolve(rho0, prm, t), 0.0, std::nullopt};
    r.neg = negativity(r.state);
    if (o.oracle) r.dev = max_abs_diff(integrate(rho0, prm, t).elements, r.state.elements);
    rows.push_back(std::move(r));
  }

  if (format == "csv") {
    std::vector<std::string> head{"t"};
    for (int i = 1; i <= 4; ++i)
      for (int j = 1; j <= 4; ++j) {
        head.push_back("re" + std::to_string(i) + std::to_string(j));
        head.push_back("im" + std::to_string(i) + std::to_string(j));
      }
    head.push_back("negativity");
    if (o.oracle) head.push_back("oracle_max_abs_diff");
    csv_row(sink.out(), head);
    for (const Row& r : rows) {
      std::vector<std::string> fields{format_g17(r.t)};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          fields.push_back(format_g17(r.state.elements[i][j].real()));
          fields.push_back(format_g17(r.state.elements[i][j].imag()));
        }
      fields.push_back(format_g17(r.neg));
      if (o.oracle) fields.push_back(format_g17(*r.dev));
      csv_row(sink.out(), fields);
    }
    return 0;
  }
  if (format == "json") {
    json doc;
    doc["params"] = params_to_json(prm);
    doc["rows"] = json::array();
    for (const Row& r : rows) {
      json jr{{"t", r.t}, {"negativity", r.neg}, {"state", state_to_json(r.state)}};
      if (r.dev) jr["oracle_max_abs_diff"] = *r.dev;
      doc["rows"].push_back(std::move(jr));
    }
    sink.out() << doc.dump(2) << '\n';
    return 0;
  }
  throw InputError("unknown --format '" + format + "' for evolve (csv or json)");
}

// ---- esd-time --------------------------------------------------------------

struct EsdTimeOpts {
  CommonOpts common;
  std::string swap_kind;
  double t_sw = 0.0;
  bool t_sw_set = false;
};

int run_esd_time(const EsdTimeOpts& o) {
  const ReservoirParams prm = reservoir_of(o.common);
  const DensityMatrix rho0 = resolve_state(o.common);
  const double horizon = horizon_of(o.common, prm);
  if (o.swap_kind.empty() != !o.t_sw_set)
    throw InputError("--swap and --t-sw go together");

  std::optional<SwitchSchedule> schedule;
  if (!o.swap_kind.empty()) {
    const auto [ua, ub] = switch_pair(o.swap_kind);
    schedule = SwitchSchedule{o.t_sw, ua, ub};
  }
  const auto t = find_esd_time(rho0, prm, schedule, horizon);

  const std::string format = o.common.format.empty() ? "text" : o.common.format;
  Sink sink(o.common.out_path);
  if (format == "text") {
    sink.out() << death_text(t, horizon) << '\n';
  } else if (format == "json") {
    json doc{{"horizon", horizon}};
    doc["t_esd"] = t ? json(*t) : json(nullptr);
    sink.out() << doc.dump(2) << '\n';
  } else if (format == "csv") {
    csv_row(sink.out(), {"t_esd"});
    csv_row(sink.out(), {t ? format_g17(*t) : "no-death"});
  } else {
    throw InputError("unknown --format '" + format + "' for esd-time (text, json or csv)");
  }
  return 0;
}

// ---- sweep -----------------------------------------------------------------

struct SweepOpts {
  CommonOpts common;
  std::string grid;
  std::string swap_kind = "11-44";
};

int run_sweep(const SweepOpts& o) {
  const ReservoirParams prm = reservoir_of(o.common);
  const DensityMatrix rho0 = resolve_state(o.common);
  const double horizon = horizon_of(o.common, prm);
  if (o.grid.empty()) throw InputError("sweep needs --grid start:stop:step");
  const auto [ua, ub] = switch_pair(o.swap_kind);

  const SweepResult res = sweep_switch(rho0, prm, ua, ub, parse_grid(o.grid), horizon);

  json summary;
  summary["t_esd_no_switch"] =
      res.t_esd_no_switch ? json(*res.t_esd_no_switch) : json(nullptr);
  summary["t_end_max"] = res.t_end_max ? json(*res.t_end_max) : json(nullptr);
  summary["t_B"] = res.t_b ? json(*res.t_b) : json(nullptr);

  const std::string format = o.common.format.empty() ? "csv" : o.common.format;
  if (format == "csv") {
    // Rows go to --out (or stdout); the summary goes to stdout when the rows
    // went to a file, otherwise to stderr so the row stream stays clean.
    Sink sink(o.common.out_path);
    csv_row(sink.out(), {"t_sw", "t_end"});
    for (const auto& s : res.samples)
      csv_row(sink.out(), {format_g17(s.t_sw), s.t_end ? format_g17(*s.t_end) : "no-death"});
    (o.common.out_path.empty() ? std::cerr : std::cout) << summary.dump() << '\n';
    return 0;
  }
  if (format == "json") {
    json doc;
    doc["params"] = params_to_json(prm);
    doc["horizon"] = horizon;
    doc["swap"] = o.swap_kind;
    doc["samples"] = json::array();
    for (const auto& s : res.samples) {
      doc["samples"].push_back(
          json{{"t_sw", s.t_sw}, {"t_end", s.t_end ? json(*s.t_end) : json(nullptr)}});
    }
    doc["t_esd_no_switch"] = summary["t_esd_no_switch"];
    doc["t_end_max"] = summary["t_end_max"];
    doc["t_B"] = summary["t_B"];
    Sink sink(o.common.out_path);
    sink.out() << doc.dump(2) << '\n';
    return 0;
  }
  throw InputError("unknown --format '" + format + "' for sweep (csv or json)");
}

// ---- werner-scan -----------------------------------------------------------

struct WernerScanOpts {
  CommonOpts common;
  std::string grid = "0.35:1.0:0.05";
  std::string family = "both";
};

int run_werner_scan(const WernerScanOpts& o) {
  const ReservoirParams prm = reservoir_of(o.common);
  const double horizon = horizon_of(o.common, prm);
  std::vector<std::string> families;
  if (o.family == "both") {
    families = {"singlet", "triplet"};
  } else if (o.family == "singlet" || o.family == "triplet") {
    families = {o.family};
  } else {
    throw InputError("unknown --family '" + o.family + "', expected singlet, triplet or both");
  }

  const std::vector<double> a_values = parse_grid(o.grid);
  for (const double a : a_values)
    if (!(a > 0.0) || a > 1.0) throw InputError("werner mixing parameter must lie in (0, 1]");

  struct Row {
    double a;
    std::string family;
    std::string verdict;
    std::optional<double> t_esd;
    bool boundary = false;
  };
  std::vector<Row> rows;
  for (const std::string& fam : families) {
    for (const double a : a_values) {
      const XState x = fam == "singlet" ? werner_singlet(a) : werner_triplet(a);
      Row row{a, fam, "", std::nullopt, false};
      // Distance of the closest sign decision to zero: separability margin
      // first, then the death conditions when entangled.
      const double sep_margin =
          std::min(x.p11 * x.p44 - std::norm(x.c23), x.p22 * x.p33 - std::norm(x.c14));
      row.boundary = std::abs(sep_margin) <= 1e-6;
      try {
        const EsdVerdict v = esd_finite_temperature(x, prm);
        for (const auto& [name, value] : v.conditions)
          row.boundary = row.boundary || std::abs(value) <= 1e-6;
        if (v.will_die) {
          row.verdict = "esd";
          row.t_esd = find_esd_time(to_density(x), prm, std::nullopt, horizon);
        } else {
          row.verdict = "no-death";
        }
      } catch (const SeparableInputError&) {
        row.verdict = "separable";
      }
      rows.push_back(std::move(row));
    }
  }

  const std::string format = o.common.format.empty() ? "csv" : o.common.format;
  Sink sink(o.common.out_path);
  if (format == "csv") {
    csv_row(sink.out(), {"a", "family", "verdict", "t_esd", "boundary"});
    for (const Row& r : rows) {
      csv_row(sink.out(), {format_g17(r.a), r.family, r.verdict,
                           r.t_esd ? format_g17(*r.t_esd)
                                   : (r.verdict == "separable" ? "" : "no-death"),
                           r.boundary ? "1" : "0"});
    }
    return 0;
  }
  if (format == "json") {
    json doc;
    doc["params"] = params_to_json(prm);
    doc["horizon"] = horizon;
    doc["rows"] = json::array();
    for (const Row& r : rows) {
      doc["rows"].push_back(json{{"a", r.a},
                                 {"family", r.family},
                                 {"verdict", r.verdict},
                                 {"t_esd", r.t_esd ? json(*r.t_esd) : json(nullptr)},
                                 {"boundary", r.boundary}});
    }
    sink.out() << doc.dump(2) << '\n';
    return 0;
  }
  throw InputError("unknown --format '" + format + "' for werner-scan (csv or json)");
}

// ---- validate --------------------------------------------------------------

struct ValidateOpts {
  CommonOpts common;
};

int run_validate(const ValidateOpts& o) {
  const DensityMatrix rho = resolve_state(o.common);
  const ValidationReport rep = validate(rho);
  bool is_x = true;
  try {
    as_x_state(rho);
  } catch (const NotXStateError&) {
    is_x = false;
  }

  const std::string format = o.common.format.empty() ? "text" : o.common.format;
  Sink sink(o.common.out_path);
  if (format == "json") {
    json doc{{"valid", rep.valid}, {"x_shaped", is_x}};
    doc["checks"] = json::array();
    for (const auto& c : rep.checks)
      doc["checks"].push_back(json{{"name", c.name}, {"value", c.magnitude}, {"pass", c.pass}});
    sink.out() << doc.dump(2) << '\n';
  } else if (format == "text") {
    for (const auto& c : rep.checks)
      sink.out() << (c.pass ? "pass" : "FAIL") << "  " << c.name << " = " << format_g17(c.magnitude)
                 << '\n';
    sink.out() << "x-shaped: " << (is_x ? "yes" : "no") << '\n';
    sink.out() << (rep.valid ? "state is a valid density matrix" : "state is NOT a valid density matrix")
               << '\n';
  } else {
    throw InputError("unknown --format '" + format + "' for validate (text or json)");
  }
  return rep.valid ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact two-qubit entanglement dynamics in thermal reservoirs"};
  app.require_subcommand(1);

  EvolveOpts evolve_opts;
  CLI::App* cmd_evolve = app.add_subcommand("evolve", "propagate a state and report it on a time grid");
  add_state_opts(cmd_evolve, evolve_opts.common);
  add_reservoir_opts(cmd_evolve, evolve_opts.common);
  cmd_evolve->add_option("--t", evolve_opts.times, "evaluation time(s)");
  cmd_evolve->add_option("--grid", evolve_opts.grid, "time grid start:stop:step");
  cmd_evolve->add_flag("--oracle", evolve_opts.oracle,
                       "also integrate the master equation and report the deviation");
  cmd_evolve->add_option("--format", evolve_opts.common.format, "csv (default) or json");
  cmd_evolve->add_option("--out", evolve_opts.common.out_path, "write output to this file");

  EsdTimeOpts esd_opts;
  CLI::App* cmd_esd = app.add_subcommand("esd-time", "first time entanglement is lost for good");
  add_state_opts(cmd_esd, esd_opts.common);
  add_reservoir_opts(cmd_esd, esd_opts.common);
  add_horizon_opt(cmd_esd, esd_opts.common);
  cmd_esd->add_option("--swap", esd_opts.swap_kind, "apply a switch: 11-44 or b-only");
  cmd_esd->add_option("--t-sw", esd_opts.t_sw, "switch time")
      ->each([&esd_opts](const std::string&) { esd_opts.t_sw_set = true; });
  cmd_esd->add_option("--format", esd_opts.common.format, "text (default), json or csv");
  cmd_esd->add_option("--out", esd_opts.common.out_path, "write output to this file");

  SweepOpts sweep_opts;
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "death time as a function of the switch time");
  add_state_opts(cmd_sweep, sweep_opts.common);
  add_reservoir_opts(cmd_sweep, sweep_opts.common);
  add_horizon_opt(cmd_sweep, sweep_opts.common);
  cmd_sweep->add_option("--grid", sweep_opts.grid, "switch time grid start:stop:step");
  cmd_sweep->add_option("--swap", sweep_opts.swap_kind, "switch kind: 11-44 (default) or b-only");
  cmd_sweep->add_option("--format", sweep_opts.common.format, "csv (default) or json");
  cmd_sweep->add_option("--out", sweep_opts.common.out_path, "write rows to this file");

  WernerScanOpts werner_opts;
  CLI::App* cmd_werner = app.add_subcommand(
      "werner-scan", "death verdicts across the werner mixing parameter");
  add_reservoir_opts(cmd_werner, werner_opts.common);
  add_horizon_opt(cmd_werner, werner_opts.common);
  cmd_werner->add_option("--grid", werner_opts.grid, "mixing parameter grid start:stop:step");
  cmd_werner->add_option("--family", werner_opts.family, "singlet, triplet or both (default)");
  cmd_werner->add_option("--format", werner_opts.common.format, "csv (default) or json");
  cmd_werner->add_option("--out", werner_opts.common.out_path, "write output to this file");

  ValidateOpts validate_opts;
  CLI::App* cmd_validate = app.add_subcommand("validate", "check a state against the density matrix rules");
  add_state_opts(cmd_validate, validate_opts.common);
  cmd_validate->add_option("--format", validate_opts.common.format, "text (default) or json");
  cmd_validate->add_option("--out", validate_opts.common.out_path, "write output to this file");

  try {
    app.parse(argc, argv);
    if (cmd_evolve->parsed()) return run_evolve(evolve_opts);
    if (cmd_esd->parsed()) return run_esd_time(esd_opts);
    if (cmd_sweep->parsed()) return run_sweep(sweep_opts);
    if (cmd_werner->parsed()) return run_werner_scan(werner_opts);
    if (cmd_validate->parsed()) return run_validate(validate_opts);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
