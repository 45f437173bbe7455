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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ecodiag/error.hpp"

namespace ecodiag {

enum class Scope : std::uint8_t { S1 = 0, S2 = 1, S3 = 2 };
inline constexpr std::array<Scope, 3> kAllScopes{Scope::S1, Scope::S2, Scope::S3};

// Category groups. `external` is the reporting pseudo-group of declared
// third-party entries and is never the group of a taxonomy category.
enum class Group : std::uint8_t { office, telephony, server_room, shared, compute, bulk, external };
inline constexpr std::array<Group, 6> kCategoryGroups{Group::office,      Group::telephony,
                                                      Group::server_room, Group::shared,
                                                      Group::compute,     Group::bulk};

enum class HourProfile : std::uint8_t { work_year, continuous, none };

enum class Category : std::uint8_t {
  // office
  desktop,
  laptop,
  tablet,
  screen,
  keyboard,
  mouse,
  office_printer,
  usb_key,
  external_hdd,
  // telephony
  ip_phone,
  mobile_phone,
  // server room
  server,
  workstation_24x7,
  network_switch,
  router,
  storage_array,
  ups,
  air_conditioner,
  // shared
  videoprojector,
  visio_system,
  wifi_ap,
  multifunction_copier,
  // compute
  compute_campaign,
  // bulk
  cable_cat5,
  cable_hdmi,
};
inline constexpr std::size_t kCategoryCount = 25;

class ScopeMask {
 public:
  constexpr ScopeMask() = default;
  constexpr ScopeMask(std::initializer_list<Scope> scopes) {
    for (Scope s : scopes) bits_ |= bit(s);
  }
  constexpr bool contains(Scope s) const { return (bits_ & bit(s)) != 0; }
  constexpr bool operator==(const ScopeMask&) const = default;

 private:
  static constexpr std::uint8_t bit(Scope s) { return std::uint8_t(1u << static_cast<unsigned>(s)); }
  std::uint8_t bits_ = 0;
};

struct CategoryInfo {
  Category id;
  std::string_view token;
  Group group;
  ScopeMask scopes;
  HourProfile default_profile;
};

namespace detail {

using enum Category;
using enum Group;
using enum HourProfile;
inline constexpr ScopeMask kS23{Scope::S2, Scope::S3};

inline constexpr std::array<CategoryInfo, kCategoryCount> kTaxonomy{{
    {desktop, "desktop", office, kS23, work_year},
    {laptop, "laptop", office, kS23, work_year},
    {tablet, "tablet", office, kS23, work_year},
    {screen, "screen", office, kS23, work_year},
    {keyboard, "keyboard", office, kS23, work_year},
    {mouse, "mouse", office, kS23, work_year},
    {office_printer, "office_printer", office, kS23, work_year},
    {usb_key, "usb_key", office, kS23, work_year},
    {external_hdd, "external_hdd", office, kS23, work_year},
    {ip_phone, "ip_phone", telephony, kS23, continuous},
    {mobile_phone, "mobile_phone", telephony, kS23, work_year},
    {server, "server", server_room, kS23, continuous},
    {workstation_24x7, "workstation_24x7", server_room, kS23, continuous},
    {network_switch, "network_switch", server_room, kS23, continuous},
    {router, "router", server_room, kS23, continuous},
    {storage_array, "storage_array", server_room, kS23, continuous},
    {ups, "ups", server_room, ScopeMask{Scope::S2}, continuous},
    {air_conditioner, "air_conditioner", server_room, ScopeMask{Scope::S1, Scope::S2}, continuous},
    {videoprojector, "videoprojector", shared, kS23, work_year},
    {visio_system, "visio_system", shared, kS23, work_year},
    {wifi_ap, "wifi_ap", shared, kS23, continuous},
    {multifunction_copier, "multifunction_copier", shared, kS23, work_year},
    {compute_campaign, "compute_campaign", compute, ScopeMask{Scope::S2}, none},
    {cable_cat5, "cable_cat5", bulk, ScopeMask{Scope::S3}, none},
    {cable_hdmi, "cable_hdmi", bulk, ScopeMask{Scope::S3}, none},
}};

}  // namespace detail

inline constexpr const std::array<CategoryInfo, kCategoryCount>& taxonomy() { return detail::kTaxonomy; }

inline constexpr const CategoryInfo& info(Category c) { return detail::kTaxonomy[static_cast<std::size_t>(c)]; }
inline constexpr std::string_view to_string(Category c) { return info(c).token; }
inline constexpr Group group_of(Category c) { return info(c).group; }
inline constexpr ScopeMask scopes_of(Category c) { return info(c).scopes; }

// Categories an inventory Asset may carry: everything except bulk items and
// compute campaigns, which have their own fleet entries.
inline constexpr bool is_asset_category(Category c) {
  return group_of(c) != Group::bulk && group_of(c) != Group::compute;
}
inline constexpr bool is_cable_category(Category c) { return group_of(c) == Group::bulk; }

inline std::optional<Category> parse_category(std::string_view token) {
  for (const auto& ci : detail::kTaxonomy)
    if (ci.token == token) return ci.id;
  return std::nullopt;
}

inline constexpr std::string_view to_string(Scope s) {
  switch (s) {
    case Scope::S1: return "S1";
    case Scope::S2: return "S2";
    case Scope::S3: return "S3";
  }
  return "?";
}

inline std::optional<Scope> parse_scope(std::string_view token) {
  for (Scope s : kAllScopes)
    if (to_string(s) == token) return s;
  return std::nullopt;
}

inline constexpr std::string_view to_string(Group g) {
  switch (g) {
    case Group::office: return "office";
    case Group::telephony: return "telephony";
    case Group::server_room: return "server_room";
    case Group::shared: return "shared";
    case Group::compute: return "compute";
    case Group::bulk: return "bulk";
    case Group::external: return "external";
  }
  return "?";
}

inline std::optional<Group> parse_group(std::string_view token) {
  for (Group g : {Group::office, Group::telephony, Group::server_room, Group::shared, Group::compute,
                  Group::bulk, Group::external})
    if (to_string(g) == token) return g;
  return std::nullopt;
}

inline constexpr std::string_view to_string(HourProfile p) {
  switch (p) {
    case HourProfile::work_year: return "work_year";
    case HourProfile::continuous: return "continuous";
    case HourProfile::none: return "none";
  }
  return "?";
}

}  // namespace ecodiag
