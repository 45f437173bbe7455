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
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ecodiag/category.hpp"
#include "ecodiag/error.hpp"
#include "ecodiag/factors.hpp"
#include "ecodiag/inventory.hpp"

namespace ecodiag {

struct GridFactor {
  double kgco2e_per_kwh = kDefaultGridFactor;
  std::string source_note;
};

enum class Phase : std::uint8_t { fabrication_transport, usage, end_of_life, fugitive, declared };

inline constexpr std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::fabrication_transport: return "fabrication_transport";
    case Phase::usage: return "usage";
    case Phase::end_of_life: return "end_of_life";
    case Phase::fugitive: return "fugitive";
    case Phase::declared: return "declared";
  }
  return "?";
}

// One atomic result. `group` and `category` record where the line comes from
// so reports can be aggregated without looking subjects up again; room lines
// have no category, declared lines sit in Group::external.
struct EmissionLine {
  std::string subject_id;
  Scope scope = Scope::S2;
  Phase phase = Phase::usage;
  double kgco2e = 0.0;
  double abs_uncertainty_kgco2e = 0.0;
  std::string factor_source;
  Group group = Group::office;
  std::optional<Category> category;

  bool operator==(const EmissionLine&) const = default;
};

struct EngineConfig {
  GridFactor grid;
  double work_year_hours = 1607.0;  // full-time working year
  double continuous_hours = 8760.0;  // 24 h x 365 d

  void validate() const {
    if (!std::isfinite(grid.kgco2e_per_kwh) || grid.kgco2e_per_kwh <= 0.0)
      throw InvariantError("grid factor must be finite and > 0");
    if (!(work_year_hours > 0.0 && work_year_hours <= continuous_hours && continuous_hours <= 8784.0))
      throw InvariantError("hours must satisfy 0 < work_year_hours <= continuous_hours <= 8784");
  }

  static EngineConfig from_database(const FactorDatabase& db) {
    EngineConfig config;
    config.grid.kgco2e_per_kwh = db.default_grid_factor_kgco2e_per_kwh;
    config.grid.source_note = "factor database";
    return config;
  }
};

// Uncertainty grouping keys.
inline constexpr std::string_view kMeasuredSource = "measured";
inline constexpr std::string_view kVendorSource = "vendor";
inline constexpr std::string_view kDeclaredSource = "declared";
inline constexpr std::string_view kGridSource = "grid";

inline std::string factor_source_key(const EmissionFactor& factor) {
  return factor.source.name + "/" + std::string(to_string(factor.category));
}

/// Yearly operating hours of one unit of `asset`.
inline double usage_hours(const Asset& asset, const EngineConfig& config) {
  if (asset.status == AssetStatus::stored) return 0.0;
  const HourProfile profile = asset.hour_profile_override.value_or(info(asset.category).default_profile);
  switch (profile) {
    case HourProfile::work_year: return config.work_year_hours;
    case HourProfile::continuous: return config.continuous_hours;
    case HourProfile::none: return 0.0;
  }
  return 0.0;
}

inline double usage_power_w(const Asset& asset, const EmissionFactor& factor) {
  return asset.measured_power_w.value_or(factor.typical_power_w);
}

/// Electricity drawn by all units of `asset` over the year, in kWh.
inline double usage_kwh(const Asset& asset, const EmissionFactor& factor, const EngineConfig& config) {
  return asset.quantity * usage_power_w(asset, factor) * usage_hours(asset, config) / 1000.0;
}

inline std::optional<EmissionLine> scope2_usage(const Asset& asset, const EmissionFactor& factor,
                                                const EngineConfig& config) {
  if (!scopes_of(asset.category).contains(Scope::S2)) return std::nullopt;
  const double hours = usage_hours(asset, config);
  const double power = usage_power_w(asset, factor);
  if (hours == 0.0 || power == 0.0) return std::nullopt;

  EmissionLine line;
  line.subject_id = asset.id;
  line.scope = Scope::S2;
  line.phase = Phase::usage;
  line.kgco2e = asset.quantity * power * hours / 1000.0 * config.grid.kgco2e_per_kwh;
  if (asset.measured_power_w) {
    line.factor_source = kMeasuredSource;
  } else {
    line.abs_uncertainty_kgco2e = line.kgco2e * factor.rel_uncertainty;
    line.factor_source = factor_source_key(factor);
  }
  line.group = group_of(asset.category);
  line.category = asset.category;
  return line;
}

/// Fabrication and transport, counted only in the acquisition year. A vendor
/// figure for the device replaces the category factor.
inline std::optional<EmissionLine> scope3_fabrication(const Asset& asset, const EmissionFactor& factor,
                                                      int reporting_year) {
  if (!scopes_of(asset.category).contains(Scope::S3)) return std::nullopt;
  if (asset.acquisition_year != reporting_year) return std::nullopt;

  EmissionLine line;
  line.subject_id = asset.id;
  line.scope = Scope::S3;
  line.phase = Phase::fabrication_transport;
  if (asset.vendor_fab_transport_kgco2e) {
    line.kgco2e = asset.quantity * *asset.vendor_fab_transport_kgco2e;
    line.factor_source = kVendorSource;
  } else {
    line.kgco2e = asset.quantity * factor.fab_transport_kgco2e;
    line.abs_uncertainty_kgco2e = line.kgco2e * factor.rel_uncertainty;
    line.factor_source = factor_source_key(factor);
  }
  line.group = group_of(asset.category);
  line.category = asset.category;
  return line;
}

/// Waste treatment (WEEE), counted in the disposal year.
inline std::optional<EmissionLine> scope3_eol(const Asset& asset, const EmissionFactor& factor, int reporting_year) {
  if (!scopes_of(asset.category).contains(Scope::S3)) return std::nullopt;
  if (!asset.disposal_year || *asset.disposal_year != reporting_year) return std::nullopt;

  EmissionLine line;
  line.subject_id = asset.id;
  line.scope = Scope::S3;
  line.phase = Phase::end_of_life;
  line.kgco2e = asset.quantity * factor.eol_kgco2e;
  line.abs_uncertainty_kgco2e = line.kgco2e * factor.rel_uncertainty;
  line.factor_source = factor_source_key(factor);
  line.group = group_of(asset.category);
  line.category = asset.category;
  return line;
}

/// Fugitive refrigerant of a server room's cooling. Throws UnknownFluidError
/// when a leak is declared for a fluid missing from the GWP table.
inline std::optional<EmissionLine> scope1_refrigerant(const ServerRoom& room, std::span<const GwpEntry> gwp_table) {
  if (!(room.refrigerant_leak_kg_per_year > 0.0)) return std::nullopt;
  if (!room.refrigerant_fluid) throw InvariantError("room '" + room.id + "': refrigerant leak without fluid");
  std::optional<double> gwp;
  for (const auto& e : gwp_table)
    if (e.fluid == *room.refrigerant_fluid) gwp = e.gwp_kgco2e_per_kg;
  if (!gwp) throw UnknownFluidError(*room.refrigerant_fluid);

  EmissionLine line;
  line.subject_id = room.id;
  line.scope = Scope::S1;
  line.phase = Phase::fugitive;
  line.kgco2e = room.refrigerant_leak_kg_per_year * *gwp;
  line.factor_source = "gwp:" + *room.refrigerant_fluid;
  line.group = Group::server_room;
  return line;
}

/// Room-level electricity. Whole-room metering yields a single line that
/// stands in for every per-asset usage line of the room (compute_fleet drops
/// those); otherwise the UPS overhead is a fraction of the room assets' load.
inline std::vector<EmissionLine> scope2_room_overheads(const ServerRoom& room, const Fleet& fleet,
                                                       const FactorDatabase& db, const EngineConfig& config) {
  std::vector<EmissionLine> lines;
  EmissionLine line;
  line.subject_id = room.id;
  line.scope = Scope::S2;
  line.phase = Phase::usage;
  line.factor_source = kGridSource;
  line.group = Group::server_room;

  if (room.measured_room_kwh_per_year) {
    line.kgco2e = *room.measured_room_kwh_per_year * config.grid.kgco2e_per_kwh;
    line.factor_source = kMeasuredSource;
    lines.push_back(std::move(line));
    return lines;
  }
  if (!(room.ups_overhead_fraction > 0.0)) return lines;

  double protected_kwh = 0.0;
  for (const auto& a : fleet.assets) {
    if (a.room_id != room.id || !scopes_of(a.category).contains(Scope::S2)) continue;
    protected_kwh += usage_kwh(a, lookup_factor(db, a.category), config);
  }
  if (protected_kwh == 0.0) return lines;
  line.kgco2e = room.ups_overhead_fraction * protected_kwh * config.grid.kgco2e_per_kwh;
  lines.push_back(std::move(line));
  return lines;
}

/// Electricity of a compute campaign run on an external HPC centre. Direct
/// kWh wins; otherwise core_hours x W/core / 1000 x PUE.
inline EmissionLine scope2_campaign(const ComputeCampaign& campaign, const EngineConfig& config) {
  if (!campaign.well_formed())
    throw InvariantError("campaign '" + campaign.id + "' needs kwh or both core_hours and watts_per_core");
  const double kwh =
      campaign.kwh ? *campaign.kwh : *campaign.core_hours * *campaign.watts_per_core / 1000.0 * campaign.pue;
  EmissionLine line;
  line.subject_id = campaign.id;
  line.scope = Scope::S2;
  line.phase = Phase::usage;
  line.kgco2e = kwh * config.grid.kgco2e_per_kwh;
  line.factor_source = kGridSource;
  line.group = Group::compute;
  line.category = Category::compute_campaign;
  return line;
}

inline std::optional<EmissionLine> scope3_cables(const CableBulk& bulk, const EmissionFactor& factor) {
  if (bulk.count_acquired_this_year <= 0) return std::nullopt;
  EmissionLine line;
  line.subject_id = bulk.id;
  line.scope = Scope::S3;
  line.phase = Phase::fabrication_transport;
  line.kgco2e = static_cast<double>(bulk.count_acquired_this_year) * factor.fab_transport_kgco2e;
  line.abs_uncertainty_kgco2e = line.kgco2e * factor.rel_uncertainty;
  line.factor_source = factor_source_key(factor);
  line.group = Group::bulk;
  line.category = bulk.category;
  return line;
}

inline EmissionLine declared_external(const ExternalServiceEntry& entry) {
  if (!std::isfinite(entry.declared_kgco2e) || entry.declared_kgco2e < 0.0)
    throw InvariantError("external entry '" + entry.id + "': declared value must be finite and >= 0");
  EmissionLine line;
  line.subject_id = entry.id;
  line.scope = entry.scope_label;
  line.phase = Phase::declared;
  line.kgco2e = entry.declared_kgco2e;
  line.factor_source = kDeclaredSource;
  line.group = Group::external;
  return line;
}

/// Orders lines by (subject_id, scope, phase); ties keep generation order.
inline void sort_lines(std::vector<EmissionLine>& lines) {
  std::stable_sort(lines.begin(), lines.end(), [](const EmissionLine& a, const EmissionLine& b) {
    return std::tie(a.subject_id, a.scope, a.phase) < std::tie(b.subject_id, b.scope, b.phase);
  });
}

/// Every emission line of the fleet for its reporting year.
inline std::vector<EmissionLine> compute_fleet(const Fleet& fleet, const FactorDatabase& db,
                                               const EngineConfig& config) {
  config.validate();
  std::vector<EmissionLine> lines;
  const int year = fleet.reporting_year;

  for (const auto& asset : fleet.assets) {
    const EmissionFactor& factor = lookup_factor(db, asset.category);
    const ServerRoom* room = asset.room_id.empty() ? nullptr : find_room(fleet, asset.room_id);
    if (!asset.room_id.empty() && room == nullptr)
      throw InvariantError("asset '" + asset.id + "' refers to unknown room '" + asset.room_id + "'");
    const bool metered = room != nullptr && room->measured_room_kwh_per_year.has_value();
    if (!metered)
      if (auto l = scope2_usage(asset, factor, config)) lines.push_back(std::move(*l));
    if (auto l = scope3_fabrication(asset, factor, year)) lines.push_back(std::move(*l));
    if (auto l = scope3_eol(asset, factor, year)) lines.push_back(std::move(*l));
  }
  for (const auto& room : fleet.rooms) {
    if (auto l = scope1_refrigerant(room, db.gwp_table)) lines.push_back(std::move(*l));
    for (auto& l : scope2_room_overheads(room, fleet, db, config)) lines.push_back(std::move(l));
  }
  for (const auto& c : fleet.campaigns) lines.push_back(scope2_campaign(c, config));
  for (const auto& bulk : fleet.cable_bulks)
    if (auto l = scope3_cables(bulk, lookup_factor(db, bulk.category))) lines.push_back(std::move(*l));
  for (const auto& e : fleet.external_services) lines.push_back(declared_external(e));

  sort_lines(lines);
  return lines;
}

struct UncertaintySummary {
  double total_kgco2e = 0.0;
  double abs_uncertainty_kgco2e = 0.0;
};

/// Total and absolute uncertainty of a set of lines. Lines sharing a
/// factor_source have fully correlated errors and add linearly; distinct
/// sources are independent and combine in quadrature. Sums are taken in a
/// canonical order so the result does not depend on line order.
inline UncertaintySummary aggregate_uncertainty(std::span<const EmissionLine> lines) {
  std::vector<double> values;
  values.reserve(lines.size());
  std::map<std::string_view, std::vector<double>> by_source;
  for (const auto& l : lines) {
    values.push_back(l.kgco2e);
    if (l.abs_uncertainty_kgco2e != 0.0) by_source[l.factor_source].push_back(l.abs_uncertainty_kgco2e);
  }
  std::sort(values.begin(), values.end());

  UncertaintySummary out;
  for (double v : values) out.total_kgco2e += v;
  double sum_sq = 0.0;
  for (auto& [source, us] : by_source) {
    std::sort(us.begin(), us.end());
    double group = 0.0;
    for (double u : us) group += u;
    sum_sq += group * group;
  }
  out.abs_uncertainty_kgco2e = std::sqrt(sum_sq);
  return out;
}

}  // namespace ecodiag
