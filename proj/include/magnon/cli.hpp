// Copyright 2026 The magnonsim Authors
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


#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace magnon {

/// Exit statuses of the command line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitNumerical = 3 };

/// Runs one command line. args[0] is the program name. Human-readable
/// output goes to `out`, diagnostics to `err`; tables and summaries are
/// written to files under the --out prefix.
int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magnon
