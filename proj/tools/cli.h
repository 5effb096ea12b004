// Copyright 2026 The anonrec Authors
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

#ifndef ANONREC_TOOLS_CLI_H_
#define ANONREC_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace anonrec::cli {

// Runs one `anonrec` invocation; args[0] is the program name. Returns the
// process exit status. Diagnostics go to `err`, reports to `out`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anonrec::cli

#endif  // ANONREC_TOOLS_CLI_H_
