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

#ifndef COURNOT_GAME_JSON_H_
#define COURNOT_GAME_JSON_H_

#include <initializer_list>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cournot/game.h"

namespace cournot {

// Parses {"players": N, "price": {"kind": ..., "params": [...]},
//         "costs": [{"kind": ..., "coefficient": c}, ...]}.
// Unknown keys anywhere in the document are rejected with kConfiguration.
CournotGame GameFromJson(const nlohmann::json& doc);
nlohmann::json GameToJson(const CournotGame& game);

// Throws kConfiguration if `object` is not a JSON object or carries a key
// outside `allowed`.
void RejectUnknownKeys(const nlohmann::json& object,
                       std::initializer_list<std::string_view> allowed,
                       std::string_view context);

}  // namespace cournot

#endif  // COURNOT_GAME_JSON_H_
