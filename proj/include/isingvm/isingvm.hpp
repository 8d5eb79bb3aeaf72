// Copyright 2026 The isingvm Authors
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

// Umbrella header.

#include "isingvm/core.hpp"
#include "isingvm/tqft.hpp"
#include "isingvm/rng.hpp"
#include "isingvm/fusion_space.hpp"
#include "isingvm/measurement.hpp"
#include "isingvm/surface.hpp"
#include "isingvm/extended_state.hpp"
#include "isingvm/clifford.hpp"
#include "isingvm/circuit.hpp"
#include "isingvm/program.hpp"
#include "isingvm/executor.hpp"
#include "isingvm/protocols.hpp"
#include "isingvm/distillation.hpp"
#include "isingvm/compiler.hpp"
#include "isingvm/verify.hpp"
