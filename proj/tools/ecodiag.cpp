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

// ecodiag: annual greenhouse-gas assessment of an IT fleet.
//
// Exit codes: 0 success, 1 I/O, parse or usage failure, 2 validation failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecodiag/ecodiag.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

// I/O and usage problems; always exit 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) throw UsageError("cannot write " + out_path);
}

struct Options {
  std::string inventory;
  std::string factors;
  std::optional<int> year;
  std::string perimeter;
  std::optional<double> grid_factor;
  std::string format = "markdown";
  std::string out;
  bool glpi = false;
  std::string rules;
  std::string actions;
  std::vector<std::string> reports;
  std::string init_dir = ".";
  bool force = false;
};

ecodiag::Format output_format(const Options& o) {
  const auto f = ecodiag::parse_format(o.format);
  if (!f) throw UsageError("unknown format '" + o.format + "' (json, csv or markdown)");
  return *f;
}

struct LoadedFactors {
  ecodiag::FactorDatabase db;
  ecodiag::FactorDbIdentity identity;
};

LoadedFactors load_factors(const Options& o) {
  std::string path = o.factors;
  if (path.empty())
    if (const char* env = std::getenv("ECODIAG_FACTORS")) path = env;
  if (path.empty()) throw UsageError("no factor file: pass --factors or set ECODIAG_FACTORS");
  const std::string content = read_file(path);
  LoadedFactors out;
  out.db = ecodiag::merge_factors(ecodiag::load_factor_db(content));
  out.identity = ecodiag::FactorDbIdentity::of_file(fs::path(path).filename().string(), content);
  return out;
}

ecodiag::EngineConfig engine_config(const Options& o, const ecodiag::FactorDatabase& db) {
  auto config = ecodiag::EngineConfig::from_database(db);
  if (o.grid_factor) {
    if (!(*o.grid_factor > 0.0)) throw UsageError("--grid-factor must be > 0");
    config.grid.kgco2e_per_kwh = *o.grid_factor;
    config.grid.source_note = "--grid-factor";
  }
  return config;
}

ecodiag::Fleet load_fleet(const Options& o) {
  if (!o.year) throw UsageError("--year is required");
  if (o.inventory.empty()) throw UsageError("--inventory is required");
  const std::string content = read_file(o.inventory);
  std::string perimeter = o.perimeter;
  if (perimeter.empty())
    if (auto p = ecodiag::find_perimeter_directive(content)) perimeter = *p;
  if (perimeter.empty())
    throw UsageError("the perimeter must be declared: pass --perimeter or add a '# perimeter:' line to the inventory");

  if (!o.glpi) return ecodiag::parse_fleet_csv(content, *o.year, perimeter);

  if (o.rules.empty()) throw UsageError("--glpi needs --rules");
  const auto rules = ecodiag::parse_mapping_rules(read_file(o.rules));
  auto imported = ecodiag::parse_glpi_export(content, rules, *o.year, perimeter);
  for (const auto& w : imported.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& u : imported.unmapped)
    std::cerr << "unmapped: line " << u.line << " '" << u.name << "' (type '" << u.type << "', model '" << u.model
              << "'): " << u.reason << "\n";
  return std::move(imported.fleet);
}

void print_issues(const std::vector<ecodiag::Issue>& issues, std::ostream& os) {
  for (const auto& i : issues) os << ecodiag::to_string(i.severity) << ": " << i.subject_id << ": " << i.message << "\n";
}

int cmd_compute(const Options& o) {
  const auto format = output_format(o);
  const auto factors = load_factors(o);
  const auto config = engine_config(o, factors.db);
  const auto fleet = load_fleet(o);
  const auto issues = ecodiag::validate_fleet(fleet, factors.db);
  print_issues(issues, std::cerr);
  if (ecodiag::has_errors(issues)) return kExitInvalid;
  const auto lines = ecodiag::compute_fleet(fleet, factors.db, config);
  const auto report = ecodiag::aggregate(lines, fleet, config, factors.identity);
  write_output(ecodiag::render(report, format), o.out);
  return kExitOk;
}

int cmd_validate(const Options& o) {
  const auto factors = load_factors(o);
  const auto fleet = load_fleet(o);
  const auto issues = ecodiag::validate_fleet(fleet, factors.db);
  print_issues(issues, std::cout);
  if (issues.empty()) std::cout << "ok: no issues\n";
  return ecodiag::has_errors(issues) ? kExitInvalid : kExitOk;
}

int cmd_compare(const Options& o) {
  const auto format = output_format(o);
  if (o.reports.size() < 2) throw UsageError("compare needs at least two report JSON files");
  std::vector<ecodiag::Report> reports;
  for (const auto& path : o.reports) reports.push_back(ecodiag::parse_report_json(read_file(path)));
  const auto comparison = ecodiag::compare_years(reports);
  for (const auto& w : comparison.warnings) std::cerr << "warning: " << w << "\n";
  write_output(ecodiag::render(comparison, format), o.out);
  return kExitOk;
}

int cmd_scenario(const Options& o) {
  const auto format = output_format(o);
  const auto factors = load_factors(o);
  const auto config = engine_config(o, factors.db);
  const auto fleet = load_fleet(o);
  if (o.actions.empty()) throw UsageError("--actions is required");
  const auto actions = ecodiag::parse_actions(read_file(o.actions));
  auto issues = ecodiag::validate_fleet(fleet, factors.db);
  print_issues(issues, std::cerr);
  if (ecodiag::has_errors(issues)) return kExitInvalid;

  const auto variant = ecodiag::apply_scenario(fleet, actions);  // ScenarioError -> exit 2
  const auto variant_issues = ecodiag::validate_fleet(variant, factors.db);
  if (ecodiag::has_errors(variant_issues)) {
    print_issues(variant_issues, std::cerr);
    return kExitInvalid;
  }
  const auto result = ecodiag::evaluate_scenario(fleet, actions, factors.db, config, factors.identity);
  write_output(ecodiag::render(result, format), o.out);
  return kExitOk;
}

int cmd_factors(const Options& o) {
  const auto format = output_format(o);
  const auto factors = load_factors(o);
  const auto& db = factors.db;
  std::string out;
  if (format == ecodiag::Format::json) {
    nlohmann::ordered_json j;
    j["factor_db_name"] = factors.identity.name;
    j["factor_db_hash"] = factors.identity.hash;
    j["grid_factor_kgco2e_per_kwh"] = db.default_grid_factor_kgco2e_per_kwh;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& f : db.factors)
      rows.push_back({{"category", ecodiag::to_string(f.category)},
                      {"fab_transport_kgco2e", f.fab_transport_kgco2e},
                      {"eol_kgco2e", f.eol_kgco2e},
                      {"typical_power_w", f.typical_power_w},
                      {"rel_uncertainty", f.rel_uncertainty},
                      {"source", f.source.name},
                      {"source_year", f.source.year},
                      {"rank", ecodiag::reliability_rank(f.source)}});
    j["factors"] = rows;
    auto gwp = nlohmann::ordered_json::object();
    for (const auto& g : db.gwp_table) gwp[g.fluid] = g.gwp_kgco2e_per_kg;
    j["gwp"] = gwp;
    out = j.dump(2) + "\n";
  } else if (format == ecodiag::Format::csv) {
    out = ecodiag::render_factor_file(db);
  } else {
    out = "| Category | Fabrication+transport | End of life | Typical W | Rel. unc. | Source | Year | Rank |\n"
          "|---|---:|---:|---:|---:|---|---:|---:|\n";
    for (const auto& f : db.factors)
      out += "| " + std::string(ecodiag::to_string(f.category)) + " | " +
             ecodiag::text::format_number(f.fab_transport_kgco2e) + " | " +
             ecodiag::text::format_number(f.eol_kgco2e) + " | " + ecodiag::text::format_number(f.typical_power_w) +
             " | " + ecodiag::text::format_number(f.rel_uncertainty) + " | " + f.source.name + " | " +
             std::to_string(f.source.year) + " | " + std::to_string(ecodiag::reliability_rank(f.source)) + " |\n";
    out += "\nGrid factor: " + ecodiag::text::format_number(db.default_grid_factor_kgco2e_per_kwh) +
           " kgCO₂e/kWh. GWP entries: " + std::to_string(db.gwp_table.size()) + ".\n";
  }
  write_output(out, o.out);
  return kExitOk;
}

int cmd_init(const Options& o) {
  const fs::path dir(o.init_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& file : ecodiag::samples::kFiles) {
    const fs::path path = dir / file.name;
    if (fs::exists(path) && !o.force) throw UsageError(path.string() + " exists (use --force to overwrite)");
  }
  for (const auto& file : ecodiag::samples::kFiles) {
    write_output(std::string(file.content), (dir / file.name).string());
    std::cout << "wrote " << (dir / file.name).string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ecodiag - annual greenhouse-gas assessment of an IT fleet"};
  app.require_subcommand(1);
  Options o;

  const auto add_factors = [&](CLI::App* cmd) {
    cmd->add_option("--factors", o.factors, "Factor file (default: $ECODIAG_FACTORS)");
  };
  const auto add_inventory = [&](CLI::App* cmd) {
    cmd->add_option("--inventory", o.inventory, "Fleet CSV, or GLPI export with --glpi")->required();
    cmd->add_option("--year", o.year, "Reporting year")->required();
    cmd->add_option("--perimeter", o.perimeter, "Organizational perimeter description");
    cmd->add_flag("--glpi", o.glpi, "Treat the inventory as a GLPI CSV export");
    cmd->add_option("--rules", o.rules, "GLPI mapping rules file");
  };
  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "json, csv or markdown")->default_val("markdown");
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
  };

  auto* compute = app.add_subcommand("compute", "Compute the annual report");
  add_factors(compute);
  add_inventory(compute);
  compute->add_option("--grid-factor", o.grid_factor, "Override the grid factor (kgCO2e/kWh)");
  add_output(compute);

  auto* validate = app.add_subcommand("validate", "Check an inventory against the factor database");
  add_factors(validate);
  add_inventory(validate);

  auto* compare = app.add_subcommand("compare", "Compare report JSON files across years");
  compare->add_option("reports", o.reports, "Report JSON files");
  add_output(compare);

  auto* scenario = app.add_subcommand("scenario", "Evaluate a what-if replacement scenario");
  add_factors(scenario);
  add_inventory(scenario);
  scenario->add_option("--actions", o.actions, "Actions file")->required();
  scenario->add_option("--grid-factor", o.grid_factor, "Override the grid factor (kgCO2e/kWh)");
  add_output(scenario);

  auto* factors = app.add_subcommand("factors", "List the merged factor database");
  add_factors(factors);
  add_output(factors);

  auto* init = app.add_subcommand("init", "Write sample factor, fleet and rules files");
  init->add_option("dir", o.init_dir, "Target directory")->default_val(".");
  init->add_flag("--force", o.force, "Overwrite existing files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFailure;
  }

  try {
    if (*compute) return cmd_compute(o);
    if (*validate) return cmd_validate(o);
    if (*compare) return cmd_compare(o);
    if (*scenario) return cmd_scenario(o);
    if (*factors) return cmd_factors(o);
    if (*init) return cmd_init(o);
  } catch (const ecodiag::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ecodiag::MissingFactorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ecodiag::UnknownFluidError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
