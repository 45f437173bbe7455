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
#include <compare>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecodiag/category.hpp"
#include "ecodiag/error.hpp"
#include "ecodiag/text.hpp"

namespace ecodiag {

// Grid carbon intensity of metropolitan France electricity (EcoInvent value).
inline constexpr double kDefaultGridFactor = 0.119;

enum class SourceKind : std::uint8_t { public_base, vendor_fiche, peer_reviewed, internal_measure };

inline constexpr std::string_view to_string(SourceKind k) {
  switch (k) {
    case SourceKind::public_base: return "public_base";
    case SourceKind::vendor_fiche: return "vendor_fiche";
    case SourceKind::peer_reviewed: return "peer_reviewed";
    case SourceKind::internal_measure: return "internal_measure";
  }
  return "?";
}

inline std::optional<SourceKind> parse_source_kind(std::string_view token) {
  for (auto k : {SourceKind::public_base, SourceKind::vendor_fiche, SourceKind::peer_reviewed,
                 SourceKind::internal_measure})
    if (to_string(k) == token) return k;
  return std::nullopt;
}

struct SourceMeta {
  std::string name;
  int year = 0;
  SourceKind kind = SourceKind::public_base;
  bool commissioner_neutral = false;
  bool peer_reviewed = false;

  bool operator==(const SourceMeta&) const = default;
};

// Per-unit reference values for one equipment category.
struct EmissionFactor {
  Category category = Category::desktop;
  double fab_transport_kgco2e = 0.0;
  double eol_kgco2e = 0.0;
  double typical_power_w = 0.0;
  double rel_uncertainty = 0.0;  // fraction in [0, 1]
  SourceMeta source;

  bool operator==(const EmissionFactor&) const = default;
};

struct GwpEntry {
  std::string fluid;
  double gwp_kgco2e_per_kg = 0.0;

  bool operator==(const GwpEntry&) const = default;
};

struct FactorDatabase {
  std::vector<EmissionFactor> factors;  // several per category until merged
  std::vector<GwpEntry> gwp_table;
  double default_grid_factor_kgco2e_per_kwh = kDefaultGridFactor;

  bool operator==(const FactorDatabase&) const = default;
};

/// Reliability score of a source: 4 if peer reviewed, +2 if the commissioner
/// is neutral, +1 for an internal measurement.
inline int reliability_rank(const SourceMeta& source) {
  return 4 * int(source.peer_reviewed) + 2 * int(source.commissioner_neutral) +
         int(source.kind == SourceKind::internal_measure);
}

/// Total order on sources; `greater` means more reliable. Equal rank falls
/// back to the more recent year, then to the lexicographically smaller name.
inline std::strong_ordering compare_reliability(const SourceMeta& a, const SourceMeta& b) {
  if (auto c = reliability_rank(a) <=> reliability_rank(b); c != 0) return c;
  if (auto c = a.year <=> b.year; c != 0) return c;
  if (auto c = b.name <=> a.name; c != 0) return c;
  if (auto c = b.kind <=> a.kind; c != 0) return c;
  if (auto c = a.commissioner_neutral <=> b.commissioner_neutral; c != 0) return c;
  return a.peer_reviewed <=> b.peer_reviewed;
}

namespace detail {

inline std::strong_ordering weak_to_strong(std::partial_ordering p) {
  if (p == std::partial_ordering::less) return std::strong_ordering::less;
  if (p == std::partial_ordering::greater) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Merge preference between two factors of the same category. Identical
// source metadata falls through to the values so the winner never depends on
// row order.
inline std::strong_ordering compare_factor_preference(const EmissionFactor& a, const EmissionFactor& b) {
  if (auto c = compare_reliability(a.source, b.source); c != 0) return c;
  if (auto c = weak_to_strong(b.fab_transport_kgco2e <=> a.fab_transport_kgco2e); c != 0) return c;
  if (auto c = weak_to_strong(b.eol_kgco2e <=> a.eol_kgco2e); c != 0) return c;
  if (auto c = weak_to_strong(b.typical_power_w <=> a.typical_power_w); c != 0) return c;
  return weak_to_strong(b.rel_uncertainty <=> a.rel_uncertainty);
}

inline void validate_factor(const EmissionFactor& f) {
  const auto check = [&](double v, std::string_view field) {
    if (!std::isfinite(v) || v < 0.0)
      throw InvariantError(std::string(to_string(f.category)) + ": " + std::string(field) +
                           " must be finite and non-negative");
  };
  check(f.fab_transport_kgco2e, "fab_transport_kgco2e");
  check(f.eol_kgco2e, "eol_kgco2e");
  check(f.typical_power_w, "typical_power_w");
  check(f.rel_uncertainty, "rel_uncertainty");
  if (f.rel_uncertainty > 1.0)
    throw InvariantError(std::string(to_string(f.category)) + ": rel_uncertainty must be in [0, 1]");
  if (f.source.name.empty()) throw InvariantError(std::string(to_string(f.category)) + ": empty source name");
  if (f.source.year < 1990)
    throw InvariantError(std::string(to_string(f.category)) + ": source year must be >= 1990");
}

struct LineFields {
  std::vector<std::string_view> fields;
  std::vector<std::size_t> columns;
};

inline LineFields split_line(std::string_view line) {
  LineFields out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.fields.push_back(text::trim(line.substr(start, comma == line.npos ? line.npos : comma - start)));
    out.columns.push_back(start + 1);
    if (comma == line.npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Parses a factor file. Rows are validated as they are read; any problem is
/// reported as a ParseError carrying the line and column.
inline FactorDatabase load_factor_db(std::string_view content) {
  enum class Section { none, factors, gwp, grid };
  FactorDatabase db;
  Section section = Section::none;
  bool grid_seen = false;
  std::size_t line_no = 0;

  if (text::starts_with(content, "\xEF\xBB\xBF")) content.remove_prefix(3);

  while (!content.empty()) {
    ++line_no;
    const std::size_t eol = content.find('\n');
    std::string_view raw = content.substr(0, eol);
    content = eol == content.npos ? std::string_view{} : content.substr(eol + 1);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    const std::string_view line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line == "[factors]") section = Section::factors;
      else if (line == "[gwp]") section = Section::gwp;
      else if (line == "[grid]") section = Section::grid;
      else throw ParseError("unknown section header '" + std::string(line) + "'", line_no, 1);
      continue;
    }

    const auto row = detail::split_line(raw);
    const auto& f = row.fields;
    const auto number = [&](std::size_t i, std::string_view name) {
      const auto v = text::to_double(f[i]);
      if (!v) throw ParseError("invalid number for " + std::string(name) + ": '" + std::string(f[i]) + "'", line_no,
                               row.columns[i]);
      if (*v < 0.0) throw ParseError("negative value for " + std::string(name), line_no, row.columns[i]);
      return *v;
    };
    const auto boolean = [&](std::size_t i, std::string_view name) {
      if (f[i] == "true") return true;
      if (f[i] == "false") return false;
      throw ParseError("expected true|false for " + std::string(name), line_no, row.columns[i]);
    };

    switch (section) {
      case Section::none:
        throw ParseError("row outside of any section", line_no, 1);

      case Section::factors: {
        if (f.size() != 10)
          throw ParseError("expected 10 fields in [factors] row, got " + std::to_string(f.size()), line_no, 1);
        EmissionFactor factor;
        const auto cat = parse_category(f[0]);
        if (!cat) throw ParseError("unknown category '" + std::string(f[0]) + "'", line_no, row.columns[0]);
        factor.category = *cat;
        factor.fab_transport_kgco2e = number(1, "fab_transport_kgco2e");
        factor.eol_kgco2e = number(2, "eol_kgco2e");
        factor.typical_power_w = number(3, "typical_power_w");
        factor.rel_uncertainty = number(4, "rel_uncertainty");
        if (factor.rel_uncertainty > 1.0)
          throw ParseError("rel_uncertainty must be in [0, 1]", line_no, row.columns[4]);
        factor.source.name = std::string(f[5]);
        if (factor.source.name.empty()) throw ParseError("empty source name", line_no, row.columns[5]);
        const auto year = text::to_integer(f[6]);
        if (!year || *year < 1990 || *year > 9999)
          throw ParseError("invalid source year '" + std::string(f[6]) + "'", line_no, row.columns[6]);
        factor.source.year = static_cast<int>(*year);
        const auto kind = parse_source_kind(f[7]);
        if (!kind) throw ParseError("unknown source kind '" + std::string(f[7]) + "'", line_no, row.columns[7]);
        factor.source.kind = *kind;
        factor.source.commissioner_neutral = boolean(8, "commissioner_neutral");
        factor.source.peer_reviewed = boolean(9, "peer_reviewed");
        db.factors.push_back(std::move(factor));
        break;
      }

      case Section::gwp: {
        if (f.size() != 2) throw ParseError("expected 2 fields in [gwp] row", line_no, 1);
        if (f[0].empty()) throw ParseError("empty fluid name", line_no, row.columns[0]);
        const double gwp = number(1, "gwp_kgco2e_per_kg");
        if (gwp <= 0.0) throw ParseError("gwp must be > 0", line_no, row.columns[1]);
        for (const auto& e : db.gwp_table)
          if (e.fluid == f[0]) throw ParseError("duplicate GWP fluid '" + std::string(f[0]) + "'", line_no, 1);
        db.gwp_table.push_back({std::string(f[0]), gwp});
        break;
      }

      case Section::grid: {
        if (f.size() != 2 || f[0] != "grid_factor_kgco2e_per_kwh")
          throw ParseError("expected 'grid_factor_kgco2e_per_kwh,<value>'", line_no, 1);
        if (grid_seen) throw ParseError("duplicate grid factor row", line_no, 1);
        const double grid = number(1, "grid_factor_kgco2e_per_kwh");
        if (grid <= 0.0) throw ParseError("grid factor must be > 0", line_no, row.columns[1]);
        db.default_grid_factor_kgco2e_per_kwh = grid;
        grid_seen = true;
        break;
      }
    }
  }
  return db;
}

/// Writes `db` in the factor-file format. load_factor_db(render_factor_file(db))
/// reproduces `db` exactly.
inline std::string render_factor_file(const FactorDatabase& db) {
  std::string out = "[factors]\n";
  for (const auto& f : db.factors) {
    detail::validate_factor(f);
    if (f.source.name.find_first_of(",\n\r#") != std::string::npos || text::trim(f.source.name) != f.source.name)
      throw InvariantError("source name not representable in factor file: " + f.source.name);
    out += std::string(to_string(f.category)) + ',' + text::format_number(f.fab_transport_kgco2e) + ',' +
           text::format_number(f.eol_kgco2e) + ',' + text::format_number(f.typical_power_w) + ',' +
           text::format_number(f.rel_uncertainty) + ',' + f.source.name + ',' + std::to_string(f.source.year) + ',' +
           std::string(to_string(f.source.kind)) + ',' + (f.source.commissioner_neutral ? "true" : "false") + ',' +
           (f.source.peer_reviewed ? "true" : "false") + '\n';
  }
  out += "[gwp]\n";
  for (const auto& g : db.gwp_table) out += g.fluid + ',' + text::format_number(g.gwp_kgco2e_per_kg) + '\n';
  out += "[grid]\n";
  out += "grid_factor_kgco2e_per_kwh," + text::format_number(db.default_grid_factor_kgco2e_per_kwh) + '\n';
  return out;
}

/// Keeps the most reliable factor of each category, in taxonomy order.
inline FactorDatabase merge_factors(const FactorDatabase& db) {
  std::array<const EmissionFactor*, kCategoryCount> best{};
  for (const auto& f : db.factors) {
    auto& slot = best[static_cast<std::size_t>(f.category)];
    if (slot == nullptr || detail::compare_factor_preference(f, *slot) > 0) slot = &f;
  }
  FactorDatabase merged;
  merged.gwp_table = db.gwp_table;
  merged.default_grid_factor_kgco2e_per_kwh = db.default_grid_factor_kgco2e_per_kwh;
  for (const auto* f : best)
    if (f != nullptr) merged.factors.push_back(*f);
  return merged;
}

inline const EmissionFactor* find_factor(const FactorDatabase& db, Category category) {
  const EmissionFactor* found = nullptr;
  for (const auto& f : db.factors)
    if (f.category == category && (found == nullptr || detail::compare_factor_preference(f, *found) > 0)) found = &f;
  return found;
}

/// The factor for `category`; throws MissingFactorError when the reference
/// data has none.
inline const EmissionFactor& lookup_factor(const FactorDatabase& db, Category category) {
  const EmissionFactor* f = find_factor(db, category);
  if (f == nullptr) throw MissingFactorError(std::string(to_string(category)));
  return *f;
}

inline std::optional<double> find_gwp(const std::vector<GwpEntry>& table, std::string_view fluid) {
  for (const auto& e : table)
    if (e.fluid == fluid) return e.gwp_kgco2e_per_kg;
  return std::nullopt;
}

}  // namespace ecodiag
