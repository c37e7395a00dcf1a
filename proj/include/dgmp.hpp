// Copyright 2026 The DGMP Authors
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

#include "dgmp/constraints.hpp"
#include "dgmp/constructions.hpp"
#include "dgmp/effectivity.hpp"
#include "dgmp/error.hpp"
#include "dgmp/game.hpp"
#include "dgmp/mixed.hpp"
#include "dgmp/monte_carlo.hpp"
#include "dgmp/parallel.hpp"
#include "dgmp/pure.hpp"
#include "dgmp/rational.hpp"
#include "dgmp/refute.hpp"
#include "dgmp/stationarity.hpp"
#include "dgmp/text_format.hpp"
