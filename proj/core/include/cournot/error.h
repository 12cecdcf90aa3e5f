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

#ifndef COURNOT_ERROR_H_
#define COURNOT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cournot {

enum class ErrorCode {
  kDomain,         // argument outside the operation's domain
  kRejectedGame,   // game fails assumption validation
  kDegenerateGame,
  kSingularMatrix,
  kFlatRegion,     // evaluation where the price is identically zero
  kProtocol,       // learner methods called out of order
  kNumeric,        // non-finite input or result
  kConfiguration,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cournot

#endif  // COURNOT_ERROR_H_
