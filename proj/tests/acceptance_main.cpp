// Copyright 2026 The EcoDiag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   acceptance_tests <path-to-ecodiag-cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ecodiag/ecodiag.hpp"
#include "properties.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const fs::path kRoot = ECODIAG_SOURCE_DIR;

int g_failed = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++g_failed;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) { return ecodiag::text::format_number(v); }

std::string describe(const props::Outcome& o) {
  return std::to_string(o.cases) + " cases, " + std::to_string(o.failures.size()) + " counterexamples" +
         (o.failures.empty() ? "" : " (first: " + o.failures.front() + ")");
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void constant_fidelity() {
  using namespace ecodiag;
  const EngineConfig config;
  bool ok = config.grid.kgco2e_per_kwh == 0.119 && kDefaultGridFactor == 0.119;
  int checked = 0;
  for (const auto& ci : taxonomy()) {
    if (!is_asset_category(ci.id)) continue;
    Asset a;
    a.category = ci.id;
    const double h = usage_hours(a, config);
    if (ci.group == Group::office) ok &= h == 1607.0, ++checked;
    if (ci.group == Group::server_room) ok &= h == 8760.0, ++checked;
  }
  report(ok && checked > 0, "constant_fidelity",
         "office 1607 h, server room 8760 h over " + std::to_string(checked) + " categories, grid " +
             fmt(config.grid.kgco2e_per_kwh));
}

void single_asset_arithmetic() {
  using namespace ecodiag;
  const auto& db = fleetgen::sample_db();
  Asset desk;
  desk.id = "d";
  desk.category = Category::desktop;
  desk.acquisition_year = 2015;
  desk.measured_power_w = 100.0;
  Asset srv = desk;
  srv.category = Category::server;
  srv.measured_power_w = 200.0;
  const double a = scope2_usage(desk, lookup_factor(db, desk.category), {})->kgco2e;
  const double b = scope2_usage(srv, lookup_factor(db, srv.category), {})->kgco2e;
  const bool ok = oracle::rel_diff(a, 19.1233) <= 1e-9 && oracle::rel_diff(b, 208.488) <= 1e-9;
  report(ok, "single_asset_arithmetic", "100 W office " + fmt(a) + " (19.1233), 200 W server " + fmt(b) + " (208.488)");
}

void property(const std::string& name, const props::Outcome& o, int min_cases) {
  report(o.ok() && o.cases >= min_cases, name, describe(o));
}

void oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto o = props::oracle_equivalence(200, 4001, 1e-9);
  const double s = seconds_since(t0);
  report(o.ok() && o.cases >= 200 && s < 10.0, "oracle_equivalence", describe(o) + ", " + fmt(s) + " s (limit 10 s)");
}

void linearity_and_scaling() {
  const auto lin = props::quantity_linearity(500, 5001, 1e-9);
  const auto grid = props::grid_scaling(500, 5002);
  report(lin.ok() && grid.ok(), "linearity_and_scaling",
         "quantity split: " + describe(lin) + "; grid x k: " + describe(grid));
}

struct CliRun {
  int code = -1;
  std::string out;
  double seconds = 0.0;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  CliRun r;
  const std::string cmd = "\"" + cli + "\" " + args + " 2>/dev/null";
  const auto t0 = Clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.seconds = seconds_since(t0);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void sample_lab_run(const std::string& cli) {
  using namespace ecodiag;
  const fs::path data = kRoot / "data";
  const auto run = run_cli(cli, "compute --factors \"" + (data / "sample_factors.txt").string() + "\" --inventory \"" +
                                    (data / "sample_fleet.csv").string() + "\" --year 2019 --format json");
  const std::string golden_text = slurp(kRoot / "tests/golden/sample_report_2019.json");

  const auto fleet_text = slurp(data / "sample_fleet.csv");
  const auto fleet = parse_fleet_csv(fleet_text, 2019, "sample");
  int posts = 0, servers = 0, copiers = 0, printers = 0, phones = 0;
  for (const auto& a : fleet.assets) {
    const bool client = a.category == Category::desktop || a.category == Category::laptop;
    if (client && a.status == AssetStatus::in_use) posts += a.quantity;
    if (a.category == Category::server) servers += a.quantity;
    if (a.category == Category::multifunction_copier) copiers += a.quantity;
    if (a.category == Category::office_printer) printers += a.quantity;
    if (a.category == Category::mobile_phone) phones += a.quantity;
  }
  const bool shape = posts == 150 && servers == 35 && copiers == 1 && printers > 0 && phones > 0 &&
                     fleet.rooms.size() == 1 && fleet.rooms[0].refrigerant_fluid &&
                     fleet.rooms[0].ups_overhead_fraction > 0.0;

  bool oracle_ok = false;
  try {
    const auto golden = parse_report_json(golden_text);
    const auto o = oracle::derive(fleet, merge_factors(load_factor_db(slurp(data / "sample_factors.txt"))), 0.119);
    oracle_ok = oracle::rel_diff(golden.scope_total(Scope::S1), o.s1) <= 1e-9 &&
                oracle::rel_diff(golden.scope_total(Scope::S2), o.s2) <= 1e-9 &&
                oracle::rel_diff(golden.scope_total(Scope::S3), o.s3) <= 1e-9 &&
                oracle::rel_diff(golden.grand_total_kgco2e, o.total()) <= 1e-9;
  } catch (const std::exception&) {
  }
  const bool matches = !golden_text.empty() && run.out == golden_text;
  report(run.code == 0 && run.seconds < 1.0 && matches && oracle_ok && shape, "sample_lab_run",
         "exit " + std::to_string(run.code) + ", " + fmt(run.seconds) + " s (limit 1 s), golden " +
             (matches ? "match" : "MISMATCH") + ", oracle " + (oracle_ok ? "agrees" : "DISAGREES") + ", " +
             std::to_string(posts) + " client posts, " + std::to_string(servers) + " servers");
}

void round_trips() {
  using namespace ecodiag;
  const fs::path data = kRoot / "data";
  bool ok = true;
  int files = 0;

  const auto fleet_text = slurp(data / "sample_fleet.csv");
  const auto perimeter = find_perimeter_directive(fleet_text).value_or("sample");
  const auto fleet = parse_fleet_csv(fleet_text, 2019, perimeter);
  const auto rendered = render_fleet_csv(fleet);
  ok &= parse_fleet_csv(rendered, 2019, perimeter) == fleet;
  ok &= render_fleet_csv(parse_fleet_csv(rendered, 2019, perimeter)) == rendered;
  ++files;

  for (const char* golden : {"tests/golden/sample_report_2019.json"}) {
    const auto text = slurp(kRoot / golden);
    ok &= !text.empty() && render_json(parse_report_json(text)) == text;
    ++files;
  }

  int random_cases = 0;
  fleetgen::Generator gen(8001);
  for (int i = 0; i < 200; ++i, ++random_cases) {
    const auto f = gen.fleet(20);
    ok &= parse_fleet_csv(render_fleet_csv(f), f.reporting_year, f.perimeter_description) == f;
    const auto r = props::run(f);
    const auto json = render_json(r);
    ok &= parse_report_json(json) == r && render_json(parse_report_json(json)) == json;
  }
  report(ok, "round_trips",
         std::to_string(files) + " sample files and " + std::to_string(random_cases) +
             " random fleets, fleet CSV and report JSON byte-exact");
}

void scenario_payback() {
  using namespace ecodiag;
  Fleet fleet{"payback case", 2019, {}, {}, {}, {}, {}};
  Asset old_server;
  old_server.id = "old";
  old_server.category = Category::server;
  old_server.acquisition_year = 2012;
  old_server.measured_power_w = 350.0;
  fleet.assets.push_back(old_server);
  Asset new_server = old_server;
  new_server.id = "new";
  new_server.measured_power_w = 200.0;
  new_server.vendor_fab_transport_kgco2e = 1000.0;
  const std::vector<ScenarioAction> actions{{ActionOp::replace, "old", new_server}};
  const auto& db = fleetgen::sample_db();
  const auto result = evaluate_scenario(fleet, actions, db, {});
  const double payback = result.payback_years.value_or(NAN);

  const auto before = oracle::derive(fleet, db, 0.119);
  const auto after = oracle::derive(apply_scenario(fleet, actions), db, 0.119);
  const double oracle_payback = after.fabrication / (before.s2 - after.s2);
  const bool ok = std::abs(payback - 6.40) <= 0.01 && oracle::rel_diff(payback, oracle_payback) <= 1e-9;
  report(ok, "scenario_payback",
         "payback " + text::format_fixed(payback, 4) + " years (6.40 +/- 0.01), oracle " +
             text::format_fixed(oracle_payback, 4));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_tests <ecodiag-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const auto run = [](const std::string& name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(false, name, std::string("exception: ") + e.what());
    }
  };
  run("constant_fidelity", constant_fidelity);
  run("single_asset_arithmetic", single_asset_arithmetic);
  run("acquisition_gate", [] { property("acquisition_gate", props::acquisition_gate(1000, 1001), 1000); });
  run("scope_matrix", [] { property("scope_matrix", props::scope_matrix(1000, 2001), 1000); });
  run("oracle_equivalence", oracle_equivalence);
  run("linearity_and_scaling", linearity_and_scaling);
  run("sample_lab_run", [&] { sample_lab_run(cli); });
  run("round_trips", round_trips);
  run("scenario_payback", scenario_payback);
  std::cout << (g_failed == 0 ? "all criteria passed" : std::to_string(g_failed) + " criteria failed") << std::endl;
  return g_failed == 0 ? 0 : 1;
}
