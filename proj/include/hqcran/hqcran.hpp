// Copyright 2026 The hqcran Authors.
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

#include "hqcran/annealing.hpp"
#include "hqcran/bench.hpp"
#include "hqcran/benders.hpp"
#include "hqcran/bounds.hpp"
#include "hqcran/common.hpp"
#include "hqcran/encode.hpp"
#include "hqcran/lp.hpp"
#include "hqcran/milp.hpp"
#include "hqcran/network.hpp"
#include "hqcran/qubo.hpp"
#include "hqcran/samples.hpp"
#include "hqcran/verifiers.hpp"
