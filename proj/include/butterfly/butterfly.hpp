// Copyright 2026 The Butterfly Router Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "butterfly/benes.hpp"
#include "butterfly/compiler.hpp"
#include "butterfly/edge_coloring.hpp"
#include "butterfly/io.hpp"
#include "butterfly/router.hpp"
#include "butterfly/schedule.hpp"
#include "butterfly/sorting_networks.hpp"
#include "butterfly/topology.hpp"
