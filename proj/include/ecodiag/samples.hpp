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

// Bundled sample inputs written by `ecodiag init`. The factor values are
// ILLUSTRATIVE placeholders, not reference data: replace them with the
// current reference factors before using results.

#include <array>
#include <string_view>

namespace ecodiag::samples {

inline constexpr std::string_view kFactorFile = R"(# SAMPLE emission-factor file. Values are illustrative placeholders for
# demonstration and testing only; they are NOT an official reference table.
# Edit or replace every row with current reference data.
#
# [factors] category,fab_transport_kgco2e,eol_kgco2e,typical_power_w,rel_uncertainty,
#           source_name,source_year,source_kind,commissioner_neutral,peer_reviewed
[factors]
desktop,296,4.5,60,0.3,sample-public-base,2019,public_base,true,false
laptop,156,2.5,30,0.3,sample-public-base,2019,public_base,true,false
laptop,190,2.5,25,0.2,sample-vendor-fiche,2020,vendor_fiche,false,false
tablet,87,1,8,0.4,sample-public-base,2019,public_base,true,false
screen,250,3,25,0.3,sample-public-base,2019,public_base,true,false
keyboard,20,0.3,1,0.5,sample-public-base,2019,public_base,true,false
mouse,5,0.1,0.5,0.5,sample-public-base,2019,public_base,true,false
office_printer,100,3,30,0.5,sample-public-base,2019,public_base,true,false
usb_key,5,0.05,0.5,0.6,sample-public-base,2019,public_base,true,false
external_hdd,30,0.3,5,0.4,sample-public-base,2019,public_base,true,false
ip_phone,35,0.5,4,0.4,sample-public-base,2019,public_base,true,false
mobile_phone,55,0.8,2,0.3,sample-peer-study,2018,peer_reviewed,true,true
server,1300,15,200,0.4,sample-public-base,2019,public_base,true,false
workstation_24x7,600,8,150,0.35,sample-public-base,2019,public_base,true,false
network_switch,250,3,60,0.4,sample-public-base,2019,public_base,true,false
network_switch,250,3,45,0.25,sample-pdu-campaign,2019,internal_measure,true,false
router,150,2,40,0.4,sample-public-base,2019,public_base,true,false
storage_array,2000,25,400,0.5,sample-public-base,2019,public_base,true,false
ups,400,10,0,0.5,sample-public-base,2019,public_base,true,false
air_conditioner,1200,20,2500,0.5,sample-public-base,2019,public_base,true,false
videoprojector,120,2,200,0.4,sample-public-base,2019,public_base,true,false
visio_system,300,4,80,0.4,sample-public-base,2019,public_base,true,false
wifi_ap,40,0.5,10,0.4,sample-public-base,2019,public_base,true,false
multifunction_copier,800,15,150,0.4,sample-public-base,2019,public_base,true,false
cable_cat5,1.2,0,0,0.5,sample-public-base,2019,public_base,true,false
cable_hdmi,2.5,0,0,0.5,sample-public-base,2019,public_base,true,false

# Refrigerant GWP (kgCO2e per kg leaked), 100-year values from a public
# listing; editable configuration.
[gwp]
R410A,2088
R32,675
R134a,1430
R407C,1774
R404A,3922

[grid]
grid_factor_kgco2e_per_kwh,0.119
)";

inline constexpr std::string_view kFleetCsv =
    R"(# SAMPLE fleet: a research unit with 150 client posts and 35 servers in a
# cooled, UPS-backed server room, one multifunction copier, individual
# printers and smartphones.
# perimeter: Sample research unit - 150 client posts, 35 servers in one cooled UPS-backed room, office, telephony and shared equipment, HPC campaigns and hosted mail
kind,id,category,quantity,acquisition_year,disposal_year,status,measured_power_w,vendor_fab_kgco2e,extra
asset,desk-2012,desktop,50,2012,,in_use,,,
asset,desk-2016,desktop,50,2016,,in_use,,,
asset,desk-2019,desktop,20,2019,,in_use,,,
asset,lap-2017,laptop,18,2017,,in_use,,,
asset,lap-2019,laptop,12,2019,,in_use,,,
asset,desk-retired,desktop,10,2009,2019,stored,,,
asset,lap-spare,laptop,4,2018,,stored,,,
asset,screen-2016,screen,120,2016,,in_use,,,
asset,screen-2019,screen,40,2019,,in_use,,,
asset,kbd-2019,keyboard,20,2019,,in_use,,,
asset,mouse-2019,mouse,32,2019,,in_use,,,
asset,usb-2019,usb_key,30,2019,,in_use,,,
asset,hdd-backup,external_hdd,5,2018,,in_use,,,
asset,printer-desk,office_printer,6,2015,,in_use,,,
asset,copier,multifunction_copier,1,2017,,in_use,,,
asset,smartphone-2018,mobile_phone,12,2018,,in_use,,,
asset,smartphone-2019,mobile_phone,3,2019,,in_use,,,
asset,ip-phones,ip_phone,150,2014,,in_use,,,
asset,srv-2005,server,10,2005,,in_use,350,,room=room-1
asset,srv-2013,server,17,2013,,in_use,,,room=room-1
asset,srv-2019,server,8,2019,,in_use,,1100,room=room-1
asset,storage-2016,storage_array,2,2016,,in_use,,,room=room-1
asset,switch-room,network_switch,6,2015,,in_use,,,room=room-1
asset,router-1,router,1,2015,,in_use,,,room=room-1
asset,clim-1,air_conditioner,2,2012,,in_use,3000,,room=room-1
asset,switch-floor,network_switch,8,2017,,in_use,,,
asset,wifi,wifi_ap,8,2018,,in_use,,,
asset,projectors,videoprojector,4,2016,,in_use,,,
asset,visio,visio_system,1,2019,,in_use,,,
room,room-1,,,,,,,,fluid=R410A;leak_kg=1.5;ups_overhead=0.08
campaign,hpc-cpu,,,,,,,,kwh=12000
campaign,hpc-gpu,,,,,,,,core_hours=250000;watts_per_core=12;pue=1.4
external,mail-hosting,,,,,,,,kgco2e=85;scope=S3;note=provider environmental statement
cable,cat5-2019,cable_cat5,60,,,,,,
cable,hdmi-2019,cable_hdmi,12,,,,,,
)";

inline constexpr std::string_view kMappingRules = R"(# GLPI mapping rules: match_field,pattern,target_category
# First matching rule wins. Patterns with * or ? are globs over the whole
# field, others are case-insensitive substrings.
match_field,pattern,target_category
type,laptop,laptop
type,portable,laptop
type,server,server
type,serveur,server
type,monitor,screen
type,ecran,screen
model,*switch*,network_switch
type,printer,office_printer
type,imprimante,office_printer
type,phone,ip_phone
type,computer,desktop
type,ordinateur,desktop
)";

inline constexpr std::string_view kGlpiExport = R"(name;type;model;purchase_date;status;measured_power_w
pc-accueil;Computer;OptiPlex 7070;2019-03-14;En service;
pc-compta;Computer;OptiPlex 5050;2016-09-01;En service;
lap-dir;Laptop;Latitude 5400;2019-11-20;En service;
lap-old;Laptop;Latitude E6410;2012-01-10;Stock;
ecran-1;Monitor;P2419H;2019-03-14;En service;
srv-web;Server;PowerEdge R640;2019-06-30;En service;230
sw-core;Network device;Catalyst switch 2960;2015-02-02;En service;
imp-rdc;Printer;LaserJet M404;2018-05-05;Réparation;
frigo;Refrigerator;Office fridge;2017-07-07;En service;
)";

inline constexpr std::string_view kScenarioActions = R"(# Replace the ten 2005 servers (350 W measured) by ten new ones drawing 200 W.
op,target_id,id,category,quantity,acquisition_year,disposal_year,status,measured_power_w,vendor_fab_kgco2e,extra
replace,srv-2005,srv-2019-new,server,10,2019,,in_use,200,1000,
)";

struct SampleFile {
  std::string_view name;
  std::string_view content;
};

inline constexpr std::array<SampleFile, 5> kFiles{{
    {"sample_factors.txt", kFactorFile},
    {"sample_fleet.csv", kFleetCsv},
    {"sample_rules.csv", kMappingRules},
    {"sample_glpi_export.csv", kGlpiExport},
    {"sample_actions.csv", kScenarioActions},
}};

}  // namespace ecodiag::samples
