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

// Exact token-sequence matching of spoken callsign variants against
// transcripts, and corpus filtering on the expected-callsign context.

#ifndef ATCROLE_MATCHER_H_
#define ATCROLE_MATCHER_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "atcrole/callsign.h"
#include "atcrole/corpus_io.h"
#include "json.hpp"

namespace atcrole {

struct CallsignVariant {
  Callsign callsign;
  SpokenVariant variant;
};

struct CallsignMatch {
  Callsign callsign;
  SpokenVariant variant;
  size_t start_index = 0;
  size_t end_index = 0;  // exclusive

  bool operator==(const CallsignMatch &) const = default;
};

/// Expands each raw context callsign. Malformed entries are skipped and
/// counted in `*malformed` when non-null.
std::vector<CallsignVariant> ExpandContext(
    const std::vector<std::string> &raw_callsigns, const TelephonyLexicon &lex,
    uint64_t *malformed = nullptr, const ExpandOptions &opts = {});

/// All occurrences of any variant as a contiguous token subsequence, sorted
/// by start index, then longer variant first, then input order. Overlapping
/// matches are all reported.
std::vector<CallsignMatch> FindMatches(std::span<const std::string> tokens,
                                       std::span<const CallsignVariant> variants);

struct FilterStats {
  uint64_t total = 0;
  uint64_t kept = 0;
  uint64_t dropped = 0;
  uint64_t no_context = 0;           // subset of dropped
  uint64_t malformed_callsigns = 0;  // context entries, not utterances
  uint64_t tokens_in = 0;
  uint64_t tokens_kept = 0;

  FilterStats &operator+=(const FilterStats &other);
  bool operator==(const FilterStats &) const = default;
  nlohmann::json ToJson() const;
};

struct FilterDecision {
  bool kept = false;
  bool had_context = false;
  uint64_t malformed = 0;
  std::vector<CallsignMatch> matches;
};

/// Keep/drop decision for one utterance: kept iff a variant of one of its
/// own context callsigns occurs in its transcript.
FilterDecision FilterUtterance(const Utterance &utt, const TelephonyLexicon &lex,
                               const ExpandOptions &opts = {});

nlohmann::json MatchToJson(const CallsignMatch &m);

struct FilterOptions {
  size_t threads = 1;  // 0 = hardware concurrency
  size_t chunk_size = 4096;
  ExpandOptions expand;
};

using KeptSink =
    std::function<void(const Utterance &, const std::vector<CallsignMatch> &)>;

/// Streams a JSONL corpus, calling `sink` for every kept utterance in input
/// order. Within a chunk utterances may be processed concurrently.
FilterStats FilterCorpus(std::istream &corpus, const TelephonyLexicon &lex,
                         const KeptSink &sink, const FilterOptions &opts = {});

}  // namespace atcrole

#endif  // ATCROLE_MATCHER_H_
