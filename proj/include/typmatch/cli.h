// Copyright 2026 The typmatch Authors.
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

#ifndef TYPMATCH_CLI_H_
#define TYPMATCH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace typmatch {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitInput = 3,
  kExitGuard = 4,
};

// Entry point of the `typmatch` tool. args[0] is the program name.
// Subcommands: gen, match, permtyp, sweep, mi.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace typmatch

#endif  // TYPMATCH_CLI_H_
