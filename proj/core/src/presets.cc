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

#include "cournot/presets.h"

#include "cournot/error.h"

namespace cournot {
namespace {

std::vector<CostFunction> LinearCosts(std::vector<double> c) {
  std::vector<CostFunction> out;
  for (double ci : c) out.push_back(CostFunction::Linear(ci));
  return out;
}

std::vector<CostFunction> QuadraticCosts(std::vector<double> a) {
  std::vector<CostFunction> out;
  for (double ai : a) out.push_back(CostFunction::Quadratic(ai));
  return out;
}

std::vector<Preset> BuildPresets() {
  const auto quad = PriceFunction::Quadratic();
  const auto cubic = PriceFunction::Cubic();
  const auto expo = PriceFunction::Exponential();
  auto same = [](double v) { return std::vector<double>(4, v); };

  std::vector<Preset> p;
  p.push_back({"M1", "linear price 1 - y, cost 0.05 x (monotone)",
               CournotGame::Symmetric(4, PriceFunction::Linear(),
                                      CostFunction::Linear(0.05)),
               same(0.19)});
  p.push_back({"M2", "piecewise-linear price max(1 - y, 0), cost 0.05 x",
               CournotGame::Symmetric(4, PriceFunction::PiecewiseLinear(),
                                      CostFunction::Linear(0.05)),
               same(0.19)});
  p.push_back({"G1", "quadratic price, cost 0.05 x",
               CournotGame(quad, LinearCosts(same(0.05))), same(0.199)});
  p.push_back({"G2", "cubic price, cost 0.3 x",
               CournotGame(cubic, LinearCosts(same(0.3))), same(0.184)});
  p.push_back({"G3", "exponential price, cost 0.5 x",
               CournotGame(expo, LinearCosts(same(0.5))), same(0.162)});
  p.push_back({"G4", "quadratic price, cost 0.5 x^2",
               CournotGame(quad, QuadraticCosts(same(0.5))), same(0.184)});
  p.push_back({"G5", "cubic price, cost 0.5 x^2",
               CournotGame(cubic, QuadraticCosts(same(0.5))), same(0.193)});
  p.push_back({"G6", "exponential price, cost 0.5 x^2",
               CournotGame(expo, QuadraticCosts(same(0.5))), same(0.189)});
  p.push_back({"G7", "quadratic price, costs 0.1/0.2/0.3/0.4 x",
               CournotGame(quad, LinearCosts({0.1, 0.2, 0.3, 0.4})),
               ActionProfile{0.283, 0.212, 0.141, 0.071}});
  p.push_back({"G8", "cubic price, costs 0.1/0.2/0.3/0.4 x",
               CournotGame(cubic, LinearCosts({0.1, 0.2, 0.3, 0.4})),
               ActionProfile{0.276, 0.218, 0.159, 0.101}});
  p.push_back({"G9", "cubic price, costs 0.5/1/2/4 x^2",
               CournotGame(cubic, QuadraticCosts({0.5, 1.0, 2.0, 4.0})),
               ActionProfile{0.284, 0.200, 0.126, 0.072}});
  return p;
}

}  // namespace

const std::vector<Preset>& AllPresets() {
  static const std::vector<Preset> presets = BuildPresets();
  return presets;
}

std::vector<const Preset*> TablePresets() {
  std::vector<const Preset*> out;
  for (const Preset& p : AllPresets()) {
    if (p.id.front() == 'G') out.push_back(&p);
  }
  return out;
}

const Preset& FindPreset(std::string_view id) {
  for (const Preset& p : AllPresets()) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::kConfiguration,
              "unknown preset '" + std::string(id) + "'");
}

const ProbePair& CounterExamplePair() {
  static const ProbePair pair{{0.2082, 0.2273, 0.1988, 0.2169},
                              {0.3506, 0.3279, 0.0456, 0.4439}};
  return pair;
}

}  // namespace cournot
