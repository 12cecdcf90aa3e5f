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

#include "cournot/game_json.h"

#include <algorithm>
#include <string>
#include <vector>

#include "cournot/error.h"

namespace cournot {

void RejectUnknownKeys(const nlohmann::json& object,
                       std::initializer_list<std::string_view> allowed,
                       std::string_view context) {
  if (!object.is_object()) {
    throw Error(ErrorCode::kConfiguration,
                std::string(context) + " must be a JSON object");
  }
  for (const auto& item : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) ==
        allowed.end()) {
      throw Error(ErrorCode::kConfiguration, "unknown key '" + item.key() +
                                                 "' in " +
                                                 std::string(context));
    }
  }
}

CournotGame GameFromJson(const nlohmann::json& doc) {
  RejectUnknownKeys(doc, {"players", "price", "costs"}, "game");
  try {
    const int players = doc.at("players").get<int>();
    if (players < 1) {
      throw Error(ErrorCode::kConfiguration, "players must be positive");
    }

    const nlohmann::json& price_doc = doc.at("price");
    RejectUnknownKeys(price_doc, {"kind", "params"}, "price");
    std::vector<double> params;
    if (price_doc.contains("params")) {
      params = price_doc.at("params").get<std::vector<double>>();
    }
    PriceFunction price = PriceFunction::Make(
        ParsePriceKind(price_doc.at("kind").get<std::string>()),
        std::move(params));

    const nlohmann::json& costs_doc = doc.at("costs");
    if (!costs_doc.is_array() ||
        static_cast<int>(costs_doc.size()) != players) {
      throw Error(ErrorCode::kConfiguration,
                  "costs must list exactly one entry per player");
    }
    std::vector<CostFunction> costs;
    costs.reserve(players);
    for (const nlohmann::json& c : costs_doc) {
      RejectUnknownKeys(c, {"kind", "coefficient"}, "cost");
      costs.emplace_back(ParseCostKind(c.at("kind").get<std::string>()),
                         c.at("coefficient").get<double>());
    }
    return CournotGame(std::move(price), std::move(costs));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfiguration,
                std::string("malformed game document: ") + e.what());
  }
}

nlohmann::json GameToJson(const CournotGame& game) {
  nlohmann::json costs = nlohmann::json::array();
  for (const CostFunction& c : game.costs()) {
    costs.push_back({{"kind", CostKindName(c.kind())},
                     {"coefficient", c.coefficient()}});
  }
  return {{"players", game.n_players()},
          {"price",
           {{"kind", PriceKindName(game.price().kind())},
            {"params", game.price().params()}}},
          {"costs", costs}};
}

}  // namespace cournot
