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
#ifndef CHRISIMOS_TOOLS_CLI_H_
#define CHRISIMOS_TOOLS_CLI_H_

#include <iosfwd>

namespace chrisimos::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line. Exit codes: 0 success, 1 domain rejection (a block
// fails verification, mining aborts, a scenario misses its outcome), 2 usage
// errors and malformed input.
int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace chrisimos::cli

#endif  // CHRISIMOS_TOOLS_CLI_H_
