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

// Transcript records and the newline-delimited JSON corpus format.
//
// One object per line:
//   {"id": "u1", "text": "skytravel eight four juliett", "role": "atco",
//    "callsigns": ["TVS84J"]}
// `role` and `callsigns` are optional. An absent `callsigns` field means the
// utterance has no surveillance context; an empty array means the context
// was present but listed nothing.

#ifndef ATCROLE_CORPUS_IO_H_
#define ATCROLE_CORPUS_IO_H_

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace atcrole {

enum class Role { kAtco, kPilot };

const char *RoleName(Role role);  // "atco" / "pilot"
/// Accepts "atco"/"pilot" in any case; nullopt for anything else.
std::optional<Role> ParseRole(std::string_view name);

struct Utterance {
  std::string id;
  std::string text;  // as read; kept so outputs round-trip verbatim
  std::vector<std::string> tokens;
  std::optional<Role> gold_role;
  std::optional<std::vector<std::string>> context_callsigns;
};

class CorpusFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Utterance MakeUtterance(std::string id, std::string text);

/// Parses one corpus line. Throws CorpusFormatError on invalid JSON or
/// fields of the wrong type.
Utterance ParseUtteranceLine(std::string_view line);

nlohmann::json UtteranceToJson(const Utterance &utt);

/// Reads a JSONL stream in chunks of up to `chunk_size` records, calling
/// `fn` once per chunk. Blank lines are skipped; a bad line throws
/// CorpusFormatError naming its line number. Memory use is bounded by the
/// chunk size.
void ForEachUtteranceChunk(
    std::istream &is, size_t chunk_size,
    const std::function<void(std::vector<Utterance> &)> &fn);

/// Runs `fn(i)` for i in [0, n) over `threads` workers (0 = hardware
/// concurrency). Each index is visited exactly once.
void ParallelFor(size_t n, size_t threads, const std::function<void(size_t)> &fn);

}  // namespace atcrole

#endif  // ATCROLE_CORPUS_IO_H_
