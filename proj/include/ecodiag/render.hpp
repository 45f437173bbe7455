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

// Deterministic text renderings of reports, comparisons and scenarios. JSON
// keeps full precision so it can be read back exactly; CSV and Markdown show
// kgCO2e rounded to 0.1.

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "ecodiag/category.hpp"
#include "ecodiag/error.hpp"
#include "ecodiag/report.hpp"
#include "ecodiag/text.hpp"

namespace ecodiag {

enum class Format : std::uint8_t { json, csv, markdown };

inline std::optional<Format> parse_format(std::string_view token) {
  if (token == "json") return Format::json;
  if (token == "csv") return Format::csv;
  if (token == "markdown" || token == "md") return Format::markdown;
  return std::nullopt;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::string kg(double v) { return text::format_fixed(v, 1); }

inline std::string percent_text(const std::optional<double>& p) {
  return p ? text::format_fixed(*p, 1) + "%" : "n/a";
}

inline ojson report_to_json(const Report& r) {
  ojson j;
  j["reporting_year"] = r.reporting_year;
  j["perimeter"] = r.perimeter;
  ojson scopes = ojson::object();
  for (Scope s : kAllScopes) scopes[std::string(to_string(s))] = r.scope_total(s);
  j["totals_by_scope"] = scopes;
  ojson groups = ojson::object();
  for (Group g : kCategoryGroups) groups[std::string(to_string(g))] = r.group_total(g);
  j["totals_by_group"] = groups;
  j["external_total"] = r.external_total;
  j["grand_total_kgco2e"] = r.grand_total_kgco2e;
  j["abs_uncertainty_kgco2e"] = r.abs_uncertainty_kgco2e;
  j["line_count"] = r.line_count;
  j["factor_db_hash"] = r.factor_db_hash;
  j["factor_db_name"] = r.factor_db_name;
  j["methodology"] = {{"grid_factor_kgco2e_per_kwh", r.grid_factor_kgco2e_per_kwh},
                      {"work_year_hours", r.work_year_hours},
                      {"continuous_hours", r.continuous_hours}};
  ojson phases = ojson::object();
  for (Phase p : kAllPhases) phases[std::string(to_string(p))] = r.phase_total(p);
  j["totals_by_phase"] = phases;
  ojson cells = ojson::array();
  for (const auto& c : r.breakdown)
    cells.push_back({{"scope", to_string(c.scope)},
                     {"group", to_string(c.group)},
                     {"kgco2e", c.kgco2e},
                     {"uncertainty", c.abs_uncertainty_kgco2e}});
  j["breakdown"] = cells;
  j["generated_note"] = r.generated_note;
  return j;
}

inline ojson delta_to_json(const SeriesDelta& d) {
  ojson j;
  j["previous"] = d.previous;
  j["next"] = d.next;
  j["absolute"] = d.absolute;
  if (d.percent) j["percent"] = *d.percent;
  else j["percent"] = "n/a";
  return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Report

inline std::string render_json(const Report& r) { return detail::report_to_json(r).dump(2) + "\n"; }

/// Reads a report written by render_json. Numbers come back bit-exact.
inline Report parse_report_json(std::string_view content) {
  detail::ojson j;
  try {
    j = detail::ojson::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what(), 0);
  }
  try {
    Report r;
    r.reporting_year = j.at("reporting_year").get<int>();
    r.perimeter = j.at("perimeter").get<std::string>();
    for (Scope s : kAllScopes)
      r.totals_by_scope[static_cast<std::size_t>(s)] = j.at("totals_by_scope").at(std::string(to_string(s))).get<double>();
    for (Group g : kCategoryGroups)
      r.totals_by_group[static_cast<std::size_t>(g)] = j.at("totals_by_group").at(std::string(to_string(g))).get<double>();
    r.external_total = j.at("external_total").get<double>();
    r.grand_total_kgco2e = j.at("grand_total_kgco2e").get<double>();
    r.abs_uncertainty_kgco2e = j.at("abs_uncertainty_kgco2e").get<double>();
    r.line_count = j.at("line_count").get<std::size_t>();
    r.factor_db_hash = j.at("factor_db_hash").get<std::string>();
    r.factor_db_name = j.value("factor_db_name", std::string{});
    if (j.contains("methodology")) {
      const auto& m = j.at("methodology");
      r.grid_factor_kgco2e_per_kwh = m.at("grid_factor_kgco2e_per_kwh").get<double>();
      r.work_year_hours = m.at("work_year_hours").get<double>();
      r.continuous_hours = m.at("continuous_hours").get<double>();
    }
    if (j.contains("totals_by_phase"))
      for (Phase p : kAllPhases)
        r.totals_by_phase[static_cast<std::size_t>(p)] = j.at("totals_by_phase").at(std::string(to_string(p))).get<double>();
    if (j.contains("breakdown")) {
      for (const auto& c : j.at("breakdown")) {
        const auto scope = parse_scope(c.at("scope").get<std::string>());
        const auto group = parse_group(c.at("group").get<std::string>());
        if (!scope || !group) throw ParseError("invalid breakdown cell in report JSON", 0);
        r.breakdown.push_back({*scope, *group, c.at("kgco2e").get<double>(), c.at("uncertainty").get<double>()});
      }
    }
    r.generated_note = j.value("generated_note", std::string{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON does not match the report schema: ") + e.what(), 0);
  }
}

inline std::string render_csv(const Report& r) {
  std::string out = "year,scope,group,kgco2e,uncertainty\n";
  const std::string year = std::to_string(r.reporting_year);
  for (const auto& c : r.breakdown)
    out += year + ',' + std::string(to_string(c.scope)) + ',' + std::string(to_string(c.group)) + ',' +
           detail::kg(c.kgco2e) + ',' + detail::kg(c.abs_uncertainty_kgco2e) + '\n';
  out += year + ",ALL,ALL," + detail::kg(r.grand_total_kgco2e) + ',' + detail::kg(r.abs_uncertainty_kgco2e) + '\n';
  return out;
}

inline std::string render_markdown(const Report& r) {
  std::string out;
  out += "# IT greenhouse-gas assessment " + std::to_string(r.reporting_year) + "\n\n";
  out += "## Perimeter\n\n" + r.perimeter + "\n\n";

  out += "## Totals by scope\n\n| Scope | kgCO₂e |\n|---|---:|\n";
  out += "| S1 (direct, refrigerant leaks) | " + detail::kg(r.scope_total(Scope::S1)) + " |\n";
  out += "| S2 (electricity) | " + detail::kg(r.scope_total(Scope::S2)) + " |\n";
  out += "| S3 (fabrication, transport, end of life) | " + detail::kg(r.scope_total(Scope::S3)) + " |\n";
  out += "| **Total** | **" + detail::kg(r.grand_total_kgco2e) + "** |\n\n";
  out += "Uncertainty: ± " + detail::kg(r.abs_uncertainty_kgco2e) + " kgCO₂e (" + std::to_string(r.line_count) +
         " emission lines)\n\n";

  out += "## Totals by equipment group\n\n| Group | kgCO₂e |\n|---|---:|\n";
  for (Group g : kCategoryGroups) out += "| " + std::string(to_string(g)) + " | " + detail::kg(r.group_total(g)) + " |\n";
  out += "| external (declared) | " + detail::kg(r.external_total) + " |\n\n";

  out += "## Totals by life-cycle phase\n\n| Phase | kgCO₂e |\n|---|---:|\n";
  for (Phase p : kAllPhases) out += "| " + std::string(to_string(p)) + " | " + detail::kg(r.phase_total(p)) + " |\n";
  out += "\n";

  out += "## Methodology\n\n";
  out += "- Fabrication and transport are counted only for equipment acquired in " + std::to_string(r.reporting_year) +
         "; end of life only for equipment disposed of in " + std::to_string(r.reporting_year) + ".\n";
  out += "- Usage: " + text::format_number(r.work_year_hours) + " h/year for office-hours equipment, " +
         text::format_number(r.continuous_hours) +
         " h/year for server-room and always-on equipment; stored equipment has no usage.\n";
  out += "- Electricity: " + text::format_number(r.grid_factor_kgco2e_per_kwh) +
         " kgCO₂e/kWh. Measured power replaces typical power; whole-room metering replaces both.\n";
  out += "- Uncertainty adds linearly within one factor source and in quadrature across sources.\n";
  if (!r.factor_db_hash.empty() || !r.factor_db_name.empty())
    out += "- Factor database: " + (r.factor_db_name.empty() ? std::string("(unnamed)") : r.factor_db_name) + " (" +
           r.factor_db_hash + ")\n";
  out += "\n" + r.generated_note + "\n";
  return out;
}

inline std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::json: return render_json(r);
    case Format::csv: return render_csv(r);
    case Format::markdown: return render_markdown(r);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Year comparison

inline std::string render_json(const YearComparison& c) {
  detail::ojson j;
  j["years"] = c.years;
  detail::ojson series = detail::ojson::object();
  for (Scope s : kAllScopes) series[std::string(to_string(s))] = c.scope_series[static_cast<std::size_t>(s)];
  series["total"] = c.grand_total_series;
  j["series"] = series;
  detail::ojson deltas = detail::ojson::array();
  for (const auto& d : c.deltas) {
    detail::ojson dj;
    dj["from_year"] = d.from_year;
    dj["to_year"] = d.to_year;
    for (Scope s : kAllScopes)
      dj[std::string(to_string(s))] = detail::delta_to_json(d.by_scope[static_cast<std::size_t>(s)]);
    dj["total"] = detail::delta_to_json(d.grand_total);
    deltas.push_back(dj);
  }
  j["deltas"] = deltas;
  j["warnings"] = c.warnings;
  return j.dump(2) + "\n";
}

inline std::string render_csv(const YearComparison& c) {
  std::string out = "from_year,to_year,series,previous_kgco2e,next_kgco2e,delta_kgco2e,delta_percent\n";
  for (const auto& d : c.deltas) {
    const auto row = [&](std::string_view name, const SeriesDelta& sd) {
      out += std::to_string(d.from_year) + ',' + std::to_string(d.to_year) + ',' + std::string(name) + ',' +
             detail::kg(sd.previous) + ',' + detail::kg(sd.next) + ',' + detail::kg(sd.absolute) + ',' +
             (sd.percent ? text::format_fixed(*sd.percent, 1) : "n/a") + '\n';
    };
    for (Scope s : kAllScopes) row(to_string(s), d.by_scope[static_cast<std::size_t>(s)]);
    row("total", d.grand_total);
  }
  return out;
}

inline std::string render_markdown(const YearComparison& c) {
  std::string out = "# Year-over-year comparison\n\n| Year | S1 | S2 | S3 | Total |\n|---|---:|---:|---:|---:|\n";
  for (std::size_t i = 0; i < c.years.size(); ++i) {
    out += "| " + std::to_string(c.years[i]);
    for (std::size_t s = 0; s < 3; ++s) out += " | " + detail::kg(c.scope_series[s][i]);
    out += " | " + detail::kg(c.grand_total_series[i]) + " |\n";
  }
  out += "\n## Changes\n\n| Period | S1 | S2 | S3 | Total |\n|---|---:|---:|---:|---:|\n";
  for (const auto& d : c.deltas) {
    out += "| " + std::to_string(d.from_year) + " → " + std::to_string(d.to_year);
    const auto cell = [&](const SeriesDelta& sd) {
      return " | " + detail::kg(sd.absolute) + " (" + detail::percent_text(sd.percent) + ")";
    };
    for (const auto& sd : d.by_scope) out += cell(sd);
    out += cell(d.grand_total) + " |\n";
  }
  if (!c.warnings.empty()) {
    out += "\n## Warnings\n\n";
    for (const auto& w : c.warnings) out += "- " + w + "\n";
  }
  return out;
}

inline std::string render(const YearComparison& c, Format f) {
  switch (f) {
    case Format::json: return render_json(c);
    case Format::csv: return render_csv(c);
    case Format::markdown: return render_markdown(c);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Scenario

inline std::string render_json(const ScenarioResult& s) {
  detail::ojson j;
  j["baseline"] = detail::report_to_json(s.baseline);
  j["variant"] = detail::report_to_json(s.variant);
  j["delta_kgco2e"] = s.delta_kgco2e;
  j["added_fabrication_kgco2e"] = s.added_fabrication_kgco2e;
  j["annual_usage_savings_kgco2e"] = s.annual_usage_savings_kgco2e;
  if (s.payback_years) j["payback_years"] = *s.payback_years;
  else j["payback_years"] = nullptr;
  j["verdict"] = s.verdict;
  return j.dump(2) + "\n";
}

inline std::string render_csv(const ScenarioResult& s) {
  std::string out = "metric,value\n";
  out += "baseline_kgco2e," + detail::kg(s.baseline.grand_total_kgco2e) + "\n";
  out += "variant_kgco2e," + detail::kg(s.variant.grand_total_kgco2e) + "\n";
  out += "delta_kgco2e," + detail::kg(s.delta_kgco2e) + "\n";
  out += "added_fabrication_kgco2e," + detail::kg(s.added_fabrication_kgco2e) + "\n";
  out += "annual_usage_savings_kgco2e," + detail::kg(s.annual_usage_savings_kgco2e) + "\n";
  out += "payback_years," + (s.payback_years ? text::format_fixed(*s.payback_years, 2) : std::string("n/a")) + "\n";
  return out;
}

inline std::string render_markdown(const ScenarioResult& s) {
  std::string out = "# What-if scenario " + std::to_string(s.baseline.reporting_year) + "\n\n";
  out += "## Perimeter\n\n" + s.baseline.perimeter + "\n\n";
  out += "| | Baseline | Variant | Delta |\n|---|---:|---:|---:|\n";
  for (Scope sc : kAllScopes)
    out += "| " + std::string(to_string(sc)) + " | " + detail::kg(s.baseline.scope_total(sc)) + " | " +
           detail::kg(s.variant.scope_total(sc)) + " | " +
           detail::kg(s.variant.scope_total(sc) - s.baseline.scope_total(sc)) + " |\n";
  out += "| **Total** | **" + detail::kg(s.baseline.grand_total_kgco2e) + "** | **" +
         detail::kg(s.variant.grand_total_kgco2e) + "** | **" + detail::kg(s.delta_kgco2e) + "** |\n\n";
  out += "- Fabrication of added equipment: " + detail::kg(s.added_fabrication_kgco2e) + " kgCO₂e\n";
  out += "- Annual usage savings: " + detail::kg(s.annual_usage_savings_kgco2e) + " kgCO₂e/year\n";
  out += "- Payback: " +
         (s.payback_years ? text::format_fixed(*s.payback_years, 2) + " years" : std::string("n/a (no usage savings)")) +
         "\n\n";
  out += s.verdict + "\n";
  return out;
}

inline std::string render(const ScenarioResult& s, Format f) {
  switch (f) {
    case Format::json: return render_json(s);
    case Format::csv: return render_csv(s);
    case Format::markdown: return render_markdown(s);
  }
  return {};
}

}  // namespace ecodiag
