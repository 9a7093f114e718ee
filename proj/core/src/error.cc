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

#include "chrisimos/error.h"

#include <string>

namespace chrisimos {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kMalformedEdge: return "MalformedEdge";
    case ErrorCode::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kInvalidModelParams: return "InvalidModelParams";
    case ErrorCode::kRetryExhausted: return "RetryExhausted";
    case ErrorCode::kChunkUnderflow: return "ChunkUnderflow";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kMalformedBlock: return "MalformedBlock";
    case ErrorCode::kMalformedInstance: return "MalformedInstance";
    case ErrorCode::kZeroMinDegree: return "ZeroMinDegree";
    case ErrorCode::kNotDominatingG: return "NotDominatingG";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kIncompatibleGenesis: return "IncompatibleGenesis";
    case ErrorCode::kHeightOutOfRange: return "HeightOutOfRange";
    case ErrorCode::kUnknownScenario: return "UnknownScenario";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace chrisimos
