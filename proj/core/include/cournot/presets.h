// Copyright 2026 The Cournot Learning Authors.
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

#ifndef COURNOT_PRESETS_H_
#define COURNOT_PRESETS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cournot/game.h"

namespace cournot {

struct Preset {
  std::string id;
  std::string description;
  CournotGame game;
  // Published equilibrium, rounded to 3 decimals (2 for M1/M2).
  std::optional<ActionProfile> expected_ne;
};

// M1, M2 and the appendix games G1..G9, in that order.
const std::vector<Preset>& AllPresets();
// Only G1..G9.
std::vector<const Preset*> TablePresets();
// Throws kConfiguration for an unknown id.
const Preset& FindPreset(std::string_view id);

// Non-monotonicity witness for the piecewise-linear game M2.
struct ProbePair {
  ActionProfile x;
  ActionProfile x2;
};
const ProbePair& CounterExamplePair();

}  // namespace cournot

#endif  // COURNOT_PRESETS_H_
