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

#include "cournot/error.h"

namespace cournot {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kRejectedGame: return "rejected-game";
    case ErrorCode::kDegenerateGame: return "degenerate-game";
    case ErrorCode::kSingularMatrix: return "singular-matrix";
    case ErrorCode::kFlatRegion: return "flat-region";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kNumeric: return "numeric";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + " error: " +
                         message),
      code_(code) {}

}  // namespace cournot
