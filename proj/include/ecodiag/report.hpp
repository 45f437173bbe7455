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

#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ecodiag/category.hpp"
#include "ecodiag/engine.hpp"
#include "ecodiag/error.hpp"
#include "ecodiag/factors.hpp"
#include "ecodiag/inventory.hpp"
#include "ecodiag/text.hpp"

namespace ecodiag {

inline constexpr std::array<Phase, 5> kAllPhases{Phase::fabrication_transport, Phase::usage, Phase::end_of_life,
                                                 Phase::fugitive, Phase::declared};

// Identifies the factor file a report was computed with, so that a change of
// reference data can be told apart from a change of the fleet.
struct FactorDbIdentity {
  std::string name;
  std::string hash;

  static FactorDbIdentity of_file(std::string name, std::string_view content) {
    return {std::move(name), "fnv1a64:" + text::hex64(text::fnv1a64(content))};
  }
};

// One non-empty (scope, group) cell of a report.
struct ReportCell {
  Scope scope = Scope::S2;
  Group group = Group::office;
  double kgco2e = 0.0;
  double abs_uncertainty_kgco2e = 0.0;

  bool operator==(const ReportCell&) const = default;
};

struct Report {
  int reporting_year = 0;
  std::string perimeter;
  std::array<double, 3> totals_by_scope{};  // indexed by Scope
  std::array<double, 6> totals_by_group{};  // indexed by Group, external excluded
  double external_total = 0.0;
  double grand_total_kgco2e = 0.0;
  double abs_uncertainty_kgco2e = 0.0;
  std::size_t line_count = 0;
  std::string factor_db_name;
  std::string factor_db_hash;
  double grid_factor_kgco2e_per_kwh = kDefaultGridFactor;
  double work_year_hours = 1607.0;
  double continuous_hours = 8760.0;
  std::array<double, 5> totals_by_phase{};  // indexed by Phase
  std::vector<ReportCell> breakdown;
  std::string generated_note;

  double scope_total(Scope s) const { return totals_by_scope[static_cast<std::size_t>(s)]; }
  double group_total(Group g) const {
    return g == Group::external ? external_total : totals_by_group[static_cast<std::size_t>(g)];
  }
  double phase_total(Phase p) const { return totals_by_phase[static_cast<std::size_t>(p)]; }

  bool operator==(const Report&) const = default;
};

inline constexpr std::string_view kGeneratedNote =
    "Order-of-magnitude estimate. Fabrication is counted for equipment acquired in the reporting year only.";

namespace detail {

inline bool canonical_less(const EmissionLine& a, const EmissionLine& b) {
  return std::tie(a.subject_id, a.scope, a.phase, a.kgco2e, a.abs_uncertainty_kgco2e, a.factor_source, a.group,
                  a.category) < std::tie(b.subject_id, b.scope, b.phase, b.kgco2e, b.abs_uncertainty_kgco2e,
                                         b.factor_source, b.group, b.category);
}

inline std::size_t group_index(Group g) { return static_cast<std::size_t>(g); }

}  // namespace detail

/// Sums emission lines into the annual report of `fleet`. Lines are summed in
/// a canonical order, so any permutation of `lines` gives the same report.
inline Report aggregate(std::span<const EmissionLine> lines, const Fleet& fleet, const EngineConfig& config = {},
                        const FactorDbIdentity& identity = {}) {
  std::vector<EmissionLine> sorted(lines.begin(), lines.end());
  std::sort(sorted.begin(), sorted.end(), detail::canonical_less);

  Report r;
  r.reporting_year = fleet.reporting_year;
  r.perimeter = fleet.perimeter_description;
  r.line_count = sorted.size();
  r.factor_db_name = identity.name;
  r.factor_db_hash = identity.hash;
  r.grid_factor_kgco2e_per_kwh = config.grid.kgco2e_per_kwh;
  r.work_year_hours = config.work_year_hours;
  r.continuous_hours = config.continuous_hours;
  r.generated_note = std::string(kGeneratedNote);

  std::array<std::array<std::vector<EmissionLine>, 7>, 3> cells;
  for (const auto& l : sorted) {
    if (!std::isfinite(l.kgco2e) || l.kgco2e < 0.0)
      throw InvariantError("emission line '" + l.subject_id + "' has a negative or non-finite value");
    r.totals_by_scope[static_cast<std::size_t>(l.scope)] += l.kgco2e;
    r.totals_by_phase[static_cast<std::size_t>(l.phase)] += l.kgco2e;
    if (l.group == Group::external) r.external_total += l.kgco2e;
    else r.totals_by_group[detail::group_index(l.group)] += l.kgco2e;
    cells[static_cast<std::size_t>(l.scope)][detail::group_index(l.group)].push_back(l);
  }
  r.grand_total_kgco2e = r.totals_by_scope[0] + r.totals_by_scope[1] + r.totals_by_scope[2];
  r.abs_uncertainty_kgco2e = aggregate_uncertainty(sorted).abs_uncertainty_kgco2e;

  for (Scope s : kAllScopes) {
    for (std::size_t g = 0; g < 7; ++g) {
      const auto& cell = cells[static_cast<std::size_t>(s)][g];
      if (cell.empty()) continue;
      const auto u = aggregate_uncertainty(cell);
      r.breakdown.push_back({s, static_cast<Group>(g), u.total_kgco2e, u.abs_uncertainty_kgco2e});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Year-over-year comparison

struct SeriesDelta {
  double previous = 0.0;
  double next = 0.0;
  double absolute = 0.0;
  std::optional<double> percent;  // absent when previous == 0
};

struct YearDelta {
  int from_year = 0;
  int to_year = 0;
  std::array<SeriesDelta, 3> by_scope;
  SeriesDelta grand_total;
};

struct YearComparison {
  std::vector<int> years;
  std::array<std::vector<double>, 3> scope_series;
  std::vector<double> grand_total_series;
  std::vector<YearDelta> deltas;
  std::vector<std::string> warnings;
};

inline SeriesDelta series_delta(double previous, double next) {
  SeriesDelta d{previous, next, next - previous, std::nullopt};
  if (previous != 0.0) d.percent = (next - previous) / previous * 100.0;
  return d;
}

/// Orders reports by year and computes consecutive deltas. Needs at least two
/// reports with distinct years; a perimeter or factor-set change only warns.
inline YearComparison compare_years(std::span<const Report> reports) {
  if (reports.size() < 2) throw InvariantError("comparison needs at least two reports");
  std::vector<const Report*> sorted;
  for (const auto& r : reports) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const Report* a, const Report* b) { return a->reporting_year < b->reporting_year; });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i]->reporting_year == sorted[i - 1]->reporting_year)
      throw InvariantError("duplicate reporting year " + std::to_string(sorted[i]->reporting_year));

  YearComparison out;
  for (const Report* r : sorted) {
    out.years.push_back(r->reporting_year);
    for (Scope s : kAllScopes) out.scope_series[static_cast<std::size_t>(s)].push_back(r->scope_total(s));
    out.grand_total_series.push_back(r->grand_total_kgco2e);
  }
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const Report& prev = *sorted[i - 1];
    const Report& next = *sorted[i];
    YearDelta d;
    d.from_year = prev.reporting_year;
    d.to_year = next.reporting_year;
    for (Scope s : kAllScopes)
      d.by_scope[static_cast<std::size_t>(s)] = series_delta(prev.scope_total(s), next.scope_total(s));
    d.grand_total = series_delta(prev.grand_total_kgco2e, next.grand_total_kgco2e);
    out.deltas.push_back(d);

    if (prev.perimeter != next.perimeter)
      out.warnings.push_back("perimeter differs between " + std::to_string(prev.reporting_year) + " and " +
                             std::to_string(next.reporting_year));
    if (prev.factor_db_hash != next.factor_db_hash)
      out.warnings.push_back("factor database differs between " + std::to_string(prev.reporting_year) + " and " +
                             std::to_string(next.reporting_year) + "; deltas mix fleet and reference-data changes");
  }
  return out;
}

// ---------------------------------------------------------------------------
// What-if scenarios

enum class ActionOp : std::uint8_t { remove, add, replace };

struct ScenarioAction {
  ActionOp op = ActionOp::remove;
  std::string target_id;            // remove, replace
  std::optional<Asset> new_asset;   // add, replace

  bool operator==(const ScenarioAction&) const = default;
};

/// Actions file: rows `op,target_id,<asset columns>` where the asset columns
/// follow the fleet CSV order from `id` to `extra`. `remove` rows may stop
/// after target_id.
inline std::vector<ScenarioAction> parse_actions(std::string_view content) {
  std::vector<ScenarioAction> actions;
  for (const auto& rec : text::read_csv(content)) {
    const auto op = text::trim(rec.fields[0]);
    if (op == "op") continue;  // optional header
    ScenarioAction a;
    if (op == "remove") a.op = ActionOp::remove;
    else if (op == "add") a.op = ActionOp::add;
    else if (op == "replace") a.op = ActionOp::replace;
    else throw ParseError("unknown action '" + std::string(op) + "'", rec.line, 1);

    if (rec.fields.size() < 2) throw ParseError("missing target_id", rec.line, 1);
    a.target_id = std::string(text::trim(rec.fields[1]));
    if (a.op != ActionOp::add && a.target_id.empty())
      throw ParseError("target_id is required for " + std::string(op), rec.line, rec.columns[1]);
    if (a.op == ActionOp::add && !a.target_id.empty())
      throw ParseError("target_id must be empty for add", rec.line, rec.columns[1]);

    if (a.op == ActionOp::remove) {
      for (std::size_t i = 2; i < rec.fields.size(); ++i)
        if (!text::trim(rec.fields[i]).empty())
          throw ParseError("remove takes no asset columns", rec.line, rec.columns[i]);
    } else {
      if (rec.fields.size() != 11)
        throw ParseError("expected 11 fields for " + std::string(op) + ", got " + std::to_string(rec.fields.size()),
                         rec.line, 1);
      a.new_asset = detail::parse_asset_columns(detail::RowReader(rec, 2));
    }
    actions.push_back(std::move(a));
  }
  return actions;
}

/// Applies actions in order to a copy of `fleet`. A replacement asset is
/// acquired in the reporting year and inherits the target's room unless it
/// names one.
inline Fleet apply_scenario(const Fleet& fleet, std::span<const ScenarioAction> actions) {
  Fleet out = fleet;
  const auto locate = [&](const std::string& id) {
    return std::find_if(out.assets.begin(), out.assets.end(), [&](const Asset& a) { return a.id == id; });
  };
  const auto insert = [&](Asset asset) {
    if (asset.id.empty()) throw ScenarioError("added asset needs an id");
    if (locate(asset.id) != out.assets.end()) throw ScenarioError("asset id already exists: " + asset.id);
    if (!is_asset_category(asset.category) || asset.quantity < 1)
      throw ScenarioError("invalid added asset: " + asset.id);
    if (asset.disposal_year && *asset.disposal_year < asset.acquisition_year)
      throw ScenarioError("added asset '" + asset.id + "' is disposed before it is acquired");
    if (!asset.room_id.empty() && find_room(out, asset.room_id) == nullptr)
      throw ScenarioError("added asset '" + asset.id + "' refers to unknown room: " + asset.room_id);
    out.assets.push_back(std::move(asset));
  };

  for (const auto& action : actions) {
    if (action.op == ActionOp::add) {
      if (!action.new_asset) throw ScenarioError("add action without asset");
      insert(*action.new_asset);
      continue;
    }
    const auto it = locate(action.target_id);
    if (it == out.assets.end()) throw ScenarioError("unknown asset id: " + action.target_id);
    const std::string room = it->room_id;
    out.assets.erase(it);
    if (action.op == ActionOp::replace) {
      if (!action.new_asset) throw ScenarioError("replace action without asset");
      Asset asset = *action.new_asset;
      asset.acquisition_year = out.reporting_year;
      if (asset.room_id.empty()) asset.room_id = room;
      insert(std::move(asset));
    }
  }
  return out;
}

struct ScenarioResult {
  Report baseline;
  Report variant;
  double delta_kgco2e = 0.0;  // variant - baseline
  double added_fabrication_kgco2e = 0.0;
  double annual_usage_savings_kgco2e = 0.0;  // baseline S2 - variant S2
  std::optional<double> payback_years;        // present only when savings > 0
  std::string verdict;
};

/// Baseline against the fleet with `actions` applied, both computed with the
/// same reference data. Payback is the fabrication of the added equipment
/// divided by the yearly scope 2 savings.
inline ScenarioResult evaluate_scenario(const Fleet& fleet, std::span<const ScenarioAction> actions,
                                        const FactorDatabase& db, const EngineConfig& config,
                                        const FactorDbIdentity& identity = {}) {
  const Fleet variant_fleet = apply_scenario(fleet, actions);
  const auto baseline_lines = compute_fleet(fleet, db, config);
  const auto variant_lines = compute_fleet(variant_fleet, db, config);

  ScenarioResult out;
  out.baseline = aggregate(baseline_lines, fleet, config, identity);
  out.variant = aggregate(variant_lines, variant_fleet, config, identity);
  out.delta_kgco2e = out.variant.grand_total_kgco2e - out.baseline.grand_total_kgco2e;

  std::set<std::string> added;
  for (const auto& a : actions)
    if (a.new_asset && find_asset(variant_fleet, a.new_asset->id) != nullptr) added.insert(a.new_asset->id);
  std::vector<double> fab;
  for (const auto& l : variant_lines)
    if (l.phase == Phase::fabrication_transport && added.contains(l.subject_id)) fab.push_back(l.kgco2e);
  std::sort(fab.begin(), fab.end());
  for (double v : fab) out.added_fabrication_kgco2e += v;

  out.annual_usage_savings_kgco2e = out.baseline.scope_total(Scope::S2) - out.variant.scope_total(Scope::S2);
  if (out.annual_usage_savings_kgco2e > 0.0) {
    out.payback_years = out.added_fabrication_kgco2e / out.annual_usage_savings_kgco2e;
    out.verdict = "fabrication of added equipment (" + text::format_fixed(out.added_fabrication_kgco2e) +
                  " kgCO2e) is offset by usage savings (" + text::format_fixed(out.annual_usage_savings_kgco2e) +
                  " kgCO2e/year) after " + text::format_fixed(*out.payback_years, 2) + " years";
  } else if (actions.empty()) {
    out.verdict = "no actions: variant equals baseline";
  } else {
    out.verdict = "no usage savings: the variant does not reduce annual scope 2 emissions";
  }
  return out;
}

}  // namespace ecodiag
