// Copyright 2026 The AlignDP Authors
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

#ifndef ALIGNDP_TOOLS_CLI_H_
#define ALIGNDP_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace aligndp::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // invalid value, I/O, overwrite refusal
inline constexpr int kExitUsage = 2;    // unknown subcommand or flag

// Runs one invocation of the aligndp tool. args[0] is the program name.
// Normal output goes to `out`, diagnostics to `err`.
int ParseAndDispatch(const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err);

}  // namespace aligndp::cli

#endif  // ALIGNDP_TOOLS_CLI_H_
