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

#include "ecodiag/category.hpp"
#include "ecodiag/engine.hpp"
#include "ecodiag/error.hpp"
#include "ecodiag/factors.hpp"
#include "ecodiag/inventory.hpp"
#include "ecodiag/render.hpp"
#include "ecodiag/report.hpp"
#include "ecodiag/samples.hpp"
