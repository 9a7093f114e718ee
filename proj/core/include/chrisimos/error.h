// Copyright 2026 The Chrisimos Authors
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

#ifndef CHRISIMOS_ERROR_H_
#define CHRISIMOS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace chrisimos {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  // Graph loading and generation.
  kMalformedHeader,
  kMalformedEdge,
  kVertexOutOfRange,
  kSelfLoop,
  kEmptyGraph,
  kInvalidModelParams,
  kRetryExhausted,
  // Bit rules.
  kChunkUnderflow,
  kIndexOutOfRange,
  // Solvers.
  kTooLarge,
  // Ledger.
  kEmptySet,
  kMalformedBlock,
  kMalformedInstance,
  kZeroMinDegree,
  // Retrieval.
  kNotDominatingG,
  // Lookup table.
  kEmptyTable,
  // Fork choice.
  kIncompatibleGenesis,
  kHeightOutOfRange,
  // Simulation.
  kUnknownScenario,
};

std::string_view ErrorCodeName(ErrorCode code);

// Contract violations and malformed inputs. Domain outcomes such as a
// rejected block are reported through result types instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chrisimos

#endif  // CHRISIMOS_ERROR_H_
