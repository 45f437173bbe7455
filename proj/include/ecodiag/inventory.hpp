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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecodiag/category.hpp"
#include "ecodiag/error.hpp"
#include "ecodiag/factors.hpp"
#include "ecodiag/text.hpp"

namespace ecodiag {

enum class AssetStatus : std::uint8_t { in_use, stored };

inline constexpr std::string_view to_string(AssetStatus s) { return s == AssetStatus::in_use ? "in_use" : "stored"; }

// One inventory line. `room_id` names the ServerRoom the asset sits in, if
// any; it ties the asset to the room's UPS overhead and whole-room metering.
struct Asset {
  std::string id;
  Category category = Category::desktop;
  int quantity = 1;
  int acquisition_year = 0;
  std::optional<int> disposal_year;
  AssetStatus status = AssetStatus::in_use;
  std::optional<double> measured_power_w;
  std::optional<double> vendor_fab_transport_kgco2e;
  std::optional<HourProfile> hour_profile_override;
  std::string room_id;

  bool operator==(const Asset&) const = default;
};

struct ServerRoom {
  std::string id;
  std::optional<std::string> refrigerant_fluid;
  double refrigerant_leak_kg_per_year = 0.0;
  double ups_overhead_fraction = 0.0;
  std::optional<double> measured_room_kwh_per_year;

  bool operator==(const ServerRoom&) const = default;
};

// Either `kwh`, or `core_hours` together with `watts_per_core`.
struct ComputeCampaign {
  std::string id;
  std::optional<double> kwh;
  std::optional<double> core_hours;
  std::optional<double> watts_per_core;
  double pue = 1.0;

  bool well_formed() const { return kwh.has_value() || (core_hours.has_value() && watts_per_core.has_value()); }
  bool operator==(const ComputeCampaign&) const = default;
};

// Hosted service whose provider publishes its own footprint.
struct ExternalServiceEntry {
  std::string id;
  double declared_kgco2e = 0.0;
  Scope scope_label = Scope::S3;
  std::string note;

  bool operator==(const ExternalServiceEntry&) const = default;
};

struct CableBulk {
  std::string id;
  Category category = Category::cable_cat5;
  long long count_acquired_this_year = 0;

  bool operator==(const CableBulk&) const = default;
};

// The declared perimeter of one assessment.
struct Fleet {
  std::string perimeter_description;
  int reporting_year = 0;
  std::vector<Asset> assets;
  std::vector<ServerRoom> rooms;
  std::vector<ComputeCampaign> campaigns;
  std::vector<ExternalServiceEntry> external_services;
  std::vector<CableBulk> cable_bulks;

  bool operator==(const Fleet&) const = default;
};

inline const ServerRoom* find_room(const Fleet& fleet, std::string_view id) {
  for (const auto& r : fleet.rooms)
    if (r.id == id) return &r;
  return nullptr;
}

inline const Asset* find_asset(const Fleet& fleet, std::string_view id) {
  for (const auto& a : fleet.assets)
    if (a.id == id) return &a;
  return nullptr;
}

inline constexpr std::string_view kFleetCsvHeader =
    "kind,id,category,quantity,acquisition_year,disposal_year,status,measured_power_w,vendor_fab_kgco2e,extra";

namespace detail {

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 9999;

// Field access over one CSV record with error positions attached.
class RowReader {
 public:
  RowReader(const text::CsvRecord& rec, std::size_t offset) : rec_(rec), offset_(offset) {}

  std::string_view field(std::size_t i) const { return text::trim(rec_.fields[offset_ + i]); }
  std::size_t column(std::size_t i) const { return rec_.columns[offset_ + i]; }
  std::size_t line() const { return rec_.line; }

  [[noreturn]] void fail(std::size_t i, const std::string& message) const {
    throw ParseError(message, rec_.line, column(i));
  }

  std::optional<double> optional_number(std::size_t i, std::string_view name) const {
    if (field(i).empty()) return std::nullopt;
    const auto v = text::to_double(field(i));
    if (!v) fail(i, "invalid number for " + std::string(name) + ": '" + std::string(field(i)) + "'");
    if (*v < 0.0) fail(i, std::string(name) + " must be >= 0");
    return v;
  }

  std::optional<long long> optional_integer(std::size_t i, std::string_view name) const {
    if (field(i).empty()) return std::nullopt;
    const auto v = text::to_integer(field(i));
    if (!v) fail(i, "invalid integer for " + std::string(name) + ": '" + std::string(field(i)) + "'");
    return v;
  }

  int year(std::size_t i, std::string_view name) const {
    const auto v = optional_integer(i, name);
    if (!v) fail(i, std::string(name) + " is required");
    return checked_year(i, *v, name);
  }

  std::optional<int> optional_year(std::size_t i, std::string_view name) const {
    const auto v = optional_integer(i, name);
    if (!v) return std::nullopt;
    return checked_year(i, *v, name);
  }

  void require_empty(std::size_t i, std::string_view name, std::string_view kind) const {
    if (!field(i).empty()) fail(i, std::string(name) + " is not used for kind=" + std::string(kind));
  }

 private:
  int checked_year(std::size_t i, long long v, std::string_view name) const {
    if (v < kMinYear || v > kMaxYear) fail(i, std::string(name) + " out of range: " + std::to_string(v));
    return static_cast<int>(v);
  }

  const text::CsvRecord& rec_;
  std::size_t offset_;
};

inline double extra_number(const RowReader& row, std::size_t extra_index, const std::string& key,
                           const std::string& value) {
  const auto v = text::to_double(value);
  if (!v) row.fail(extra_index, "invalid number for " + key + ": '" + value + "'");
  if (*v < 0.0) row.fail(extra_index, key + " must be >= 0");
  return *v;
}

// Asset columns, in fleet-CSV order starting at `id`:
// id,category,quantity,acquisition_year,disposal_year,status,measured_power_w,vendor_fab_kgco2e,extra
inline Asset parse_asset_columns(const RowReader& row) {
  Asset a;
  a.id = std::string(row.field(0));
  if (a.id.empty()) row.fail(0, "asset id is required");
  const auto cat = parse_category(row.field(1));
  if (!cat) row.fail(1, "unknown category '" + std::string(row.field(1)) + "'");
  if (!is_asset_category(*cat))
    row.fail(1, "category '" + std::string(row.field(1)) + "' cannot be an asset (use kind=cable or kind=campaign)");
  a.category = *cat;
  const auto qty = row.optional_integer(2, "quantity");
  if (!qty || *qty < 1 || *qty > 1'000'000'000) row.fail(2, "quantity must be an integer >= 1");
  a.quantity = static_cast<int>(*qty);
  a.acquisition_year = row.year(3, "acquisition_year");
  a.disposal_year = row.optional_year(4, "disposal_year");
  if (a.disposal_year && *a.disposal_year < a.acquisition_year)
    row.fail(4, "disposal_year " + std::to_string(*a.disposal_year) + " is before acquisition_year " +
                    std::to_string(a.acquisition_year));
  if (row.field(5) == "in_use") a.status = AssetStatus::in_use;
  else if (row.field(5) == "stored") a.status = AssetStatus::stored;
  else row.fail(5, "status must be in_use or stored, got '" + std::string(row.field(5)) + "'");
  a.measured_power_w = row.optional_number(6, "measured_power_w");
  a.vendor_fab_transport_kgco2e = row.optional_number(7, "vendor_fab_kgco2e");
  for (const auto& [key, value] : text::parse_key_values(row.field(8))) {
    if (key == "room") {
      if (value.empty()) row.fail(8, "room id is empty");
      a.room_id = value;
    } else if (key == "profile") {
      if (value == "work_year") a.hour_profile_override = HourProfile::work_year;
      else if (value == "continuous") a.hour_profile_override = HourProfile::continuous;
      else row.fail(8, "profile must be work_year or continuous, got '" + value + "'");
    } else {
      row.fail(8, "unknown asset attribute '" + key + "'");
    }
  }
  return a;
}

inline std::string optional_text(const std::optional<double>& v) { return v ? text::format_number(*v) : ""; }

inline std::string asset_columns(const Asset& a) {
  std::string extra;
  if (!a.room_id.empty()) extra += "room=" + a.room_id;
  if (a.hour_profile_override) {
    if (!extra.empty()) extra += ';';
    extra += "profile=" + std::string(to_string(*a.hour_profile_override));
  }
  return text::csv_escape(a.id) + ',' + std::string(to_string(a.category)) + ',' + std::to_string(a.quantity) + ',' +
         std::to_string(a.acquisition_year) + ',' + (a.disposal_year ? std::to_string(*a.disposal_year) : "") + ',' +
         std::string(to_string(a.status)) + ',' + optional_text(a.measured_power_w) + ',' +
         optional_text(a.vendor_fab_transport_kgco2e) + ',' + text::csv_escape(extra);
}

template <typename T>
void check_unique_id(std::set<std::string>& seen, const T& item, std::string_view kind, std::size_t line) {
  if (!seen.insert(item.id).second)
    throw ParseError("duplicate " + std::string(kind) + " id '" + item.id + "'", line, 2);
}

}  // namespace detail

/// Returns the text of a `# perimeter: <text>` comment line, if the fleet file
/// declares one.
inline std::optional<std::string> find_perimeter_directive(std::string_view content) {
  constexpr std::string_view kPrefix = "# perimeter:";
  while (!content.empty()) {
    const std::size_t eol = content.find('\n');
    const std::string_view line = text::trim(content.substr(0, eol));
    if (text::starts_with(line, kPrefix)) {
      const auto value = text::trim(line.substr(kPrefix.size()));
      if (!value.empty()) return std::string(value);
    }
    content = eol == content.npos ? std::string_view{} : content.substr(eol + 1);
  }
  return std::nullopt;
}

/// Parses the fleet CSV. Each row is dispatched on its `kind` column
/// (asset, room, campaign, external, cable). Errors carry the row's line.
inline Fleet parse_fleet_csv(std::string_view content, int reporting_year, std::string perimeter_description) {
  if (text::trim(perimeter_description).empty())
    throw InvariantError("perimeter description must be non-empty");
  Fleet fleet;
  fleet.reporting_year = reporting_year;
  fleet.perimeter_description = std::move(perimeter_description);

  const auto records = text::read_csv(content);
  if (records.empty()) throw ParseError("missing header line", 1, 1);
  {
    std::string header;
    for (std::size_t i = 0; i < records[0].fields.size(); ++i)
      header += (i ? "," : "") + std::string(text::trim(records[0].fields[i]));
    if (header != kFleetCsvHeader)
      throw ParseError("unexpected header; expected '" + std::string(kFleetCsvHeader) + "'", records[0].line, 1);
  }

  std::set<std::string> asset_ids, room_ids, campaign_ids, external_ids, cable_ids;
  std::vector<std::pair<std::size_t, std::size_t>> room_refs;  // (asset index, line)

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != 10)
      throw ParseError("expected 10 fields, got " + std::to_string(rec.fields.size()), rec.line, 1);
    const std::string_view kind = text::trim(rec.fields[0]);
    const detail::RowReader row(rec, 1);  // index 0 = id ... 8 = extra

    if (kind == "asset") {
      fleet.assets.push_back(detail::parse_asset_columns(row));
      detail::check_unique_id(asset_ids, fleet.assets.back(), "asset", rec.line);
      if (!fleet.assets.back().room_id.empty()) room_refs.emplace_back(fleet.assets.size() - 1, rec.line);
    } else if (kind == "room") {
      ServerRoom room;
      room.id = std::string(row.field(0));
      if (room.id.empty()) row.fail(0, "room id is required");
      for (std::size_t i = 1; i < 8; ++i) row.require_empty(i, "column " + std::to_string(i + 2), kind);
      for (const auto& [key, value] : text::parse_key_values(row.field(8))) {
        if (key == "fluid") {
          if (value.empty()) row.fail(8, "fluid is empty");
          room.refrigerant_fluid = value;
        } else if (key == "leak_kg") {
          room.refrigerant_leak_kg_per_year = detail::extra_number(row, 8, key, value);
        } else if (key == "ups_overhead") {
          room.ups_overhead_fraction = detail::extra_number(row, 8, key, value);
          if (room.ups_overhead_fraction > 1.0) row.fail(8, "ups_overhead must be in [0, 1]");
        } else if (key == "room_kwh") {
          room.measured_room_kwh_per_year = detail::extra_number(row, 8, key, value);
        } else {
          row.fail(8, "unknown room attribute '" + key + "'");
        }
      }
      if (room.refrigerant_leak_kg_per_year > 0.0 && !room.refrigerant_fluid)
        row.fail(8, "leak_kg > 0 requires fluid");
      fleet.rooms.push_back(std::move(room));
      detail::check_unique_id(room_ids, fleet.rooms.back(), "room", rec.line);
    } else if (kind == "campaign") {
      ComputeCampaign c;
      c.id = std::string(row.field(0));
      if (c.id.empty()) row.fail(0, "campaign id is required");
      for (std::size_t i = 1; i < 8; ++i) row.require_empty(i, "column " + std::to_string(i + 2), kind);
      for (const auto& [key, value] : text::parse_key_values(row.field(8))) {
        if (key == "kwh") c.kwh = detail::extra_number(row, 8, key, value);
        else if (key == "core_hours") c.core_hours = detail::extra_number(row, 8, key, value);
        else if (key == "watts_per_core") c.watts_per_core = detail::extra_number(row, 8, key, value);
        else if (key == "pue") {
          c.pue = detail::extra_number(row, 8, key, value);
          if (c.pue < 1.0) row.fail(8, "pue must be >= 1");
        } else {
          row.fail(8, "unknown campaign attribute '" + key + "'");
        }
      }
      fleet.campaigns.push_back(std::move(c));
      detail::check_unique_id(campaign_ids, fleet.campaigns.back(), "campaign", rec.line);
    } else if (kind == "external") {
      ExternalServiceEntry e;
      e.id = std::string(row.field(0));
      if (e.id.empty()) row.fail(0, "external entry id is required");
      for (std::size_t i = 1; i < 8; ++i) row.require_empty(i, "column " + std::to_string(i + 2), kind);
      bool has_value = false, has_scope = false;
      for (const auto& [key, value] : text::parse_key_values(row.field(8))) {
        if (key == "kgco2e") {
          e.declared_kgco2e = detail::extra_number(row, 8, key, value);
          has_value = true;
        } else if (key == "scope") {
          if (value == "S2") e.scope_label = Scope::S2;
          else if (value == "S3") e.scope_label = Scope::S3;
          else row.fail(8, "scope must be S2 or S3, got '" + value + "'");
          has_scope = true;
        } else if (key == "note") {
          e.note = value;
        } else {
          row.fail(8, "unknown external attribute '" + key + "'");
        }
      }
      if (!has_value) row.fail(8, "kgco2e is required for kind=external");
      if (!has_scope) row.fail(8, "scope is required for kind=external");
      fleet.external_services.push_back(std::move(e));
      detail::check_unique_id(external_ids, fleet.external_services.back(), "external", rec.line);
    } else if (kind == "cable") {
      CableBulk c;
      c.id = std::string(row.field(0));
      const auto cat = parse_category(row.field(1));
      if (!cat || !is_cable_category(*cat))
        row.fail(1, "cable category must be cable_cat5 or cable_hdmi, got '" + std::string(row.field(1)) + "'");
      c.category = *cat;
      if (c.id.empty()) c.id = std::string(to_string(c.category));
      const auto count = row.optional_integer(2, "quantity");
      if (!count || *count < 0) row.fail(2, "cable quantity must be an integer >= 0");
      c.count_acquired_this_year = *count;
      for (std::size_t i = 3; i < 9; ++i) row.require_empty(i, "column " + std::to_string(i + 2), kind);
      fleet.cable_bulks.push_back(std::move(c));
      detail::check_unique_id(cable_ids, fleet.cable_bulks.back(), "cable", rec.line);
    } else {
      throw ParseError("unknown row kind '" + std::string(kind) + "'", rec.line, 1);
    }
  }

  for (const auto& [index, line] : room_refs) {
    const auto& a = fleet.assets[index];
    if (!room_ids.contains(a.room_id))
      throw ParseError("asset '" + a.id + "' refers to unknown room '" + a.room_id + "'", line, 10);
  }
  return fleet;
}

/// Renders `fleet` as fleet CSV, preceded by a perimeter directive comment.
inline std::string render_fleet_csv(const Fleet& fleet) {
  const auto check_token = [](const std::string& v, std::string_view what) {
    if (v.find(';') != std::string::npos || v != text::trim(v))
      throw InvariantError(std::string(what) + " not representable in fleet CSV: '" + v + "'");
  };
  for (const auto& a : fleet.assets) check_token(a.room_id, "room reference");
  for (const auto& r : fleet.rooms)
    if (r.refrigerant_fluid) check_token(*r.refrigerant_fluid, "fluid");
  for (const auto& e : fleet.external_services) check_token(e.note, "note");
  std::string out = "# perimeter: " + fleet.perimeter_description + "\n";
  out += std::string(kFleetCsvHeader) + "\n";
  for (const auto& a : fleet.assets) out += "asset," + detail::asset_columns(a) + "\n";
  for (const auto& r : fleet.rooms) {
    std::vector<std::string> kv;
    if (r.refrigerant_fluid) kv.push_back("fluid=" + *r.refrigerant_fluid);
    if (r.refrigerant_leak_kg_per_year != 0.0) kv.push_back("leak_kg=" + text::format_number(r.refrigerant_leak_kg_per_year));
    if (r.ups_overhead_fraction != 0.0) kv.push_back("ups_overhead=" + text::format_number(r.ups_overhead_fraction));
    if (r.measured_room_kwh_per_year) kv.push_back("room_kwh=" + text::format_number(*r.measured_room_kwh_per_year));
    std::string extra;
    for (const auto& s : kv) extra += (extra.empty() ? "" : ";") + s;
    out += "room," + text::csv_escape(r.id) + ",,,,,,,," + text::csv_escape(extra) + "\n";
  }
  for (const auto& c : fleet.campaigns) {
    std::vector<std::string> kv;
    if (c.kwh) kv.push_back("kwh=" + text::format_number(*c.kwh));
    if (c.core_hours) kv.push_back("core_hours=" + text::format_number(*c.core_hours));
    if (c.watts_per_core) kv.push_back("watts_per_core=" + text::format_number(*c.watts_per_core));
    if (c.pue != 1.0) kv.push_back("pue=" + text::format_number(c.pue));
    std::string extra;
    for (const auto& s : kv) extra += (extra.empty() ? "" : ";") + s;
    out += "campaign," + text::csv_escape(c.id) + ",,,,,,,," + text::csv_escape(extra) + "\n";
  }
  for (const auto& e : fleet.external_services) {
    std::string extra = "kgco2e=" + text::format_number(e.declared_kgco2e) + ";scope=" + std::string(to_string(e.scope_label));
    if (!e.note.empty()) extra += ";note=" + e.note;
    out += "external," + text::csv_escape(e.id) + ",,,,,,,," + text::csv_escape(extra) + "\n";
  }
  for (const auto& c : fleet.cable_bulks)
    out += "cable," + text::csv_escape(c.id) + ',' + std::string(to_string(c.category)) + ',' +
           std::to_string(c.count_acquired_this_year) + ",,,,,,\n";
  return out;
}

// ---------------------------------------------------------------------------
// GLPI exports

enum class MatchField : std::uint8_t { type, model, name };

// Maps an inventory record to a category. A pattern containing '*' or '?' is
// a case-insensitive glob over the whole field; otherwise it is a
// case-insensitive substring.
struct MappingRule {
  MatchField match_field = MatchField::type;
  std::string pattern;
  Category target_category = Category::desktop;

  bool operator==(const MappingRule&) const = default;
};

struct UnmappedRecord {
  std::size_t line = 0;
  std::string name;
  std::string type;
  std::string model;
  std::string reason;
};

struct GlpiImport {
  Fleet fleet;
  std::vector<UnmappedRecord> unmapped;
  std::vector<std::string> warnings;
};

namespace detail {

inline bool glob_match(std::string_view pattern, std::string_view s) {
  std::size_t p = 0, i = 0, star = std::string_view::npos, mark = 0;
  while (i < s.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == s[i])) {
      ++p;
      ++i;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = i;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      i = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

inline std::optional<AssetStatus> glpi_status(std::string_view raw) {
  const std::string s = text::to_lower_ascii(text::trim(raw));
  if (s == "en service" || s == "used" || s == "in use") return AssetStatus::in_use;
  if (s == "stock" || s == "storage" || s == "réserve") return AssetStatus::stored;
  return std::nullopt;
}

inline std::optional<int> first_year(std::string_view s) {
  for (std::size_t i = 0; i + 4 <= s.size(); ++i) {
    const bool digits = std::all_of(s.begin() + i, s.begin() + i + 4, [](char c) { return c >= '0' && c <= '9'; });
    const bool left_ok = i == 0 || !(s[i - 1] >= '0' && s[i - 1] <= '9');
    const bool right_ok = i + 4 == s.size() || !(s[i + 4] >= '0' && s[i + 4] <= '9');
    if (digits && left_ok && right_ok) return std::stoi(std::string(s.substr(i, 4)));
  }
  return std::nullopt;
}

}  // namespace detail

inline bool rule_matches(const MappingRule& rule, std::string_view name, std::string_view type, std::string_view model) {
  const std::string_view field = rule.match_field == MatchField::type    ? type
                                 : rule.match_field == MatchField::model ? model
                                                                         : name;
  const std::string value = text::to_lower_ascii(text::trim(field));
  const std::string pattern = text::to_lower_ascii(rule.pattern);
  if (pattern.find_first_of("*?") != std::string::npos) return detail::glob_match(pattern, value);
  return value.find(pattern) != std::string::npos;
}

/// Rules file: rows `match_field,pattern,target_category`; '#' comments.
inline std::vector<MappingRule> parse_mapping_rules(std::string_view content) {
  std::vector<MappingRule> rules;
  for (const auto& rec : text::read_csv(content)) {
    if (rec.fields.size() != 3) throw ParseError("expected 3 fields: match_field,pattern,target_category", rec.line, 1);
    const auto field = text::trim(rec.fields[0]);
    if (field == "match_field") continue;  // optional header
    MappingRule rule;
    if (field == "type") rule.match_field = MatchField::type;
    else if (field == "model") rule.match_field = MatchField::model;
    else if (field == "name") rule.match_field = MatchField::name;
    else throw ParseError("match_field must be type, model or name", rec.line, rec.columns[0]);
    rule.pattern = std::string(text::trim(rec.fields[1]));
    if (rule.pattern.empty()) throw ParseError("empty pattern", rec.line, rec.columns[1]);
    const auto cat = parse_category(text::trim(rec.fields[2]));
    if (!cat) throw ParseError("unknown category '" + rec.fields[2] + "'", rec.line, rec.columns[2]);
    if (!is_asset_category(*cat)) throw ParseError("rule target must be an asset category", rec.line, rec.columns[2]);
    rule.target_category = *cat;
    rules.push_back(std::move(rule));
  }
  return rules;
}

/// Imports a GLPI CSV export. Every record becomes either an Asset (first
/// matching rule wins) or an UnmappedRecord; nothing is dropped. The
/// delimiter is ';' when the header contains one, ',' otherwise.
inline GlpiImport parse_glpi_export(std::string_view content, std::span<const MappingRule> rules, int reporting_year,
                                    std::string perimeter_description) {
  if (text::trim(perimeter_description).empty())
    throw InvariantError("perimeter description must be non-empty");
  GlpiImport out;
  out.fleet.reporting_year = reporting_year;
  out.fleet.perimeter_description = std::move(perimeter_description);

  std::string_view first_line = content.substr(0, content.find('\n'));
  const char delimiter = first_line.find(';') != std::string_view::npos ? ';' : ',';
  const auto records = text::read_csv(content, {.delimiter = delimiter, .skip_comments = false});
  if (records.empty()) throw ParseError("missing header line", 1, 1);

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i)
    col.emplace(text::to_lower_ascii(text::trim(records[0].fields[i])), i);
  for (const char* required : {"name", "type", "model", "purchase_date", "status"})
    if (!col.contains(required)) throw ParseError(std::string("missing required column '") + required + "'", 1, 1);
  std::optional<std::size_t> power_col;
  if (col.contains("measured_power_w")) power_col = col["measured_power_w"];

  std::map<std::string, int> name_counts;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != records[0].fields.size())
      throw ParseError("expected " + std::to_string(records[0].fields.size()) + " fields, got " +
                           std::to_string(rec.fields.size()),
                       rec.line, 1);
    const auto get = [&](const char* name) { return std::string(text::trim(rec.fields[col[name]])); };
    const std::string name = get("name"), type = get("type"), model = get("model");

    const auto rule = std::find_if(rules.begin(), rules.end(),
                                   [&](const MappingRule& mr) { return rule_matches(mr, name, type, model); });
    if (rule == rules.end()) {
      out.unmapped.push_back({rec.line, name, type, model, "no matching rule"});
      continue;
    }
    const auto year = detail::first_year(get("purchase_date"));
    if (!year) {
      out.unmapped.push_back({rec.line, name, type, model, "missing purchase year"});
      continue;
    }

    Asset a;
    const std::string base = name.empty() ? "glpi-line-" + std::to_string(rec.line) : name;
    const int seen = ++name_counts[base];
    a.id = seen == 1 ? base : base + "#" + std::to_string(seen);
    a.category = rule->target_category;
    a.acquisition_year = *year;
    const std::string status = get("status");
    if (const auto s = detail::glpi_status(status)) {
      a.status = *s;
    } else {
      a.status = AssetStatus::in_use;
      out.warnings.push_back("line " + std::to_string(rec.line) + ": unknown status '" + status + "' for '" + a.id +
                             "', counted as in use");
    }
    if (power_col) {
      const auto raw = text::trim(rec.fields[*power_col]);
      if (!raw.empty()) {
        const auto v = text::to_double(raw);
        if (!v || *v < 0.0) throw ParseError("invalid measured_power_w '" + std::string(raw) + "'", rec.line,
                                             rec.columns[*power_col]);
        a.measured_power_w = *v;
      }
    }
    out.fleet.assets.push_back(std::move(a));
  }
  // A suffixed id can collide with a literal name such as "pc#2".
  std::set<std::string> ids;
  for (const auto& a : out.fleet.assets)
    if (!ids.insert(a.id).second) throw ParseError("duplicate asset id '" + a.id + "' after import", 0);
  return out;
}

// ---------------------------------------------------------------------------
// Validation

enum class Severity : std::uint8_t { error, warning };

inline constexpr std::string_view to_string(Severity s) { return s == Severity::error ? "error" : "warning"; }

struct Issue {
  Severity severity = Severity::error;
  std::string subject_id;
  std::string message;

  bool operator==(const Issue&) const = default;
};

struct ValidationOptions {
  // Assets strictly older than this many years are flagged for review.
  int age_warning_years = 10;
};

inline bool has_errors(std::span<const Issue> issues) {
  return std::any_of(issues.begin(), issues.end(), [](const Issue& i) { return i.severity == Severity::error; });
}

/// Checks `fleet` against the reference data. Errors block computation;
/// warnings are informational.
inline std::vector<Issue> validate_fleet(const Fleet& fleet, const FactorDatabase& db, ValidationOptions options = {}) {
  std::vector<Issue> issues;

  std::array<bool, kCategoryCount> used{};
  for (const auto& a : fleet.assets) used[static_cast<std::size_t>(a.category)] = true;
  for (const auto& c : fleet.cable_bulks) used[static_cast<std::size_t>(c.category)] = true;
  for (const auto& ci : taxonomy())
    if (used[static_cast<std::size_t>(ci.id)] && find_factor(db, ci.id) == nullptr)
      issues.push_back({Severity::error, std::string(ci.token), "missing factor: " + std::string(ci.token)});

  for (const auto& room : fleet.rooms) {
    if (room.refrigerant_fluid && !find_gwp(db.gwp_table, *room.refrigerant_fluid))
      issues.push_back({Severity::error, room.id, "unknown refrigerant fluid: " + *room.refrigerant_fluid});
    if (room.refrigerant_leak_kg_per_year > 0.0 && !room.refrigerant_fluid)
      issues.push_back({Severity::error, room.id, "refrigerant leak without fluid"});
  }

  for (const auto& c : fleet.campaigns)
    if (!c.well_formed())
      issues.push_back({Severity::error, c.id, "campaign needs kwh or both core_hours and watts_per_core"});

  for (const auto& a : fleet.assets) {
    const int age = fleet.reporting_year - a.acquisition_year;
    if (age > options.age_warning_years)
      issues.push_back({Severity::warning, a.id, "asset age " + std::to_string(age) + " years"});
    if (a.acquisition_year > fleet.reporting_year)
      issues.push_back({Severity::warning, a.id,
                        "acquired after the reporting year (" + std::to_string(a.acquisition_year) + ")"});
    if (a.disposal_year && *a.disposal_year < fleet.reporting_year)
      issues.push_back({Severity::warning, a.id,
                        "disposed before the reporting year (" + std::to_string(*a.disposal_year) + ")"});
    if (!a.room_id.empty() && find_room(fleet, a.room_id) == nullptr)
      issues.push_back({Severity::error, a.id, "unknown room: " + a.room_id});

    const auto* factor = find_factor(db, a.category);
    const auto* room = a.room_id.empty() ? nullptr : find_room(fleet, a.room_id);
    const bool room_metered = room != nullptr && room->measured_room_kwh_per_year.has_value();
    if (factor != nullptr && a.status == AssetStatus::in_use && scopes_of(a.category).contains(Scope::S2) &&
        !a.measured_power_w && factor->typical_power_w == 0.0 && !room_metered)
      issues.push_back({Severity::warning, a.id, "zero typical power and no measured power"});
  }
  return issues;
}

}  // namespace ecodiag
