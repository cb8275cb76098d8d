// Copyright 2026 The atcrole Authors.
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

// Command-line front end. Every subcommand prints one JSON run manifest on
// the output stream; human-readable tables go to the error stream.
//
// Exit codes: 0 success, 1 data error (manifest carries the error name),
// 2 usage error.

#ifndef ATCROLE_CLI_H_
#define ATCROLE_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace atcrole {

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err);

/// 64-bit FNV-1a, hex encoded. Used for manifest config hashes.
std::string Fnv1aHex(const std::string &data);

}  // namespace atcrole

#endif  // ATCROLE_CLI_H_
