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

#include "atcrole/matcher.h"

#include <algorithm>
#include <unordered_map>

namespace atcrole {

using nlohmann::json;

std::vector<CallsignVariant> ExpandContext(
    const std::vector<std::string> &raw_callsigns, const TelephonyLexicon &lex,
    uint64_t *malformed, const ExpandOptions &opts) {
  std::vector<CallsignVariant> out;
  for (const auto &raw : raw_callsigns) {
    Callsign cs;
    try {
      cs = ParseCallsign(raw);
    } catch (const MalformedCallsign &) {
      if (malformed) ++*malformed;
      continue;
    }
    for (auto &v : ExpandCallsign(cs, lex, opts)) out.push_back({cs, std::move(v)});
  }
  return out;
}

std::vector<CallsignMatch> FindMatches(
    std::span<const std::string> tokens,
    std::span<const CallsignVariant> variants) {
  // Bucket variants by first token so each position only tries candidates
  // that can possibly start there.
  std::unordered_map<std::string_view, std::vector<size_t>> by_first;
  for (size_t v = 0; v < variants.size(); ++v) {
    const auto &vt = variants[v].variant.tokens;
    if (!vt.empty()) by_first[vt.front()].push_back(v);
  }

  struct Hit {
    size_t start, length, order;
  };
  std::vector<Hit> hits;
  for (size_t start = 0; start < tokens.size(); ++start) {
    auto it = by_first.find(tokens[start]);
    if (it == by_first.end()) continue;
    for (size_t v : it->second) {
      const auto &vt = variants[v].variant.tokens;
      if (start + vt.size() > tokens.size()) continue;
      if (std::equal(vt.begin(), vt.end(), tokens.begin() + start))
        hits.push_back({start, vt.size(), v});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit &a, const Hit &b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.length != b.length) return a.length > b.length;
    return a.order < b.order;
  });

  std::vector<CallsignMatch> out;
  out.reserve(hits.size());
  for (const auto &h : hits)
    out.push_back({variants[h.order].callsign, variants[h.order].variant,
                   h.start, h.start + h.length});
  return out;
}

FilterStats &FilterStats::operator+=(const FilterStats &o) {
  total += o.total;
  kept += o.kept;
  dropped += o.dropped;
  no_context += o.no_context;
  malformed_callsigns += o.malformed_callsigns;
  tokens_in += o.tokens_in;
  tokens_kept += o.tokens_kept;
  return *this;
}

json FilterStats::ToJson() const {
  return json{{"total", total},
              {"kept", kept},
              {"dropped", dropped},
              {"no_context", no_context},
              {"malformed_callsigns", malformed_callsigns},
              {"tokens_in", tokens_in},
              {"tokens_kept", tokens_kept}};
}

FilterDecision FilterUtterance(const Utterance &utt, const TelephonyLexicon &lex,
                               const ExpandOptions &opts) {
  FilterDecision d;
  if (!utt.context_callsigns) return d;
  d.had_context = true;
  auto variants = ExpandContext(*utt.context_callsigns, lex, &d.malformed, opts);
  d.matches = FindMatches(utt.tokens, variants);
  d.kept = !d.matches.empty();
  return d;
}

json MatchToJson(const CallsignMatch &m) {
  return json{{"callsign", m.callsign.ToString()},
              {"kind", VariantKindName(m.variant.kind)},
              {"variant", m.variant.Text()},
              {"start", m.start_index},
              {"end", m.end_index}};
}

FilterStats FilterCorpus(std::istream &corpus, const TelephonyLexicon &lex,
                         const KeptSink &sink, const FilterOptions &opts) {
  FilterStats stats;
  std::vector<FilterDecision> decisions;
  ForEachUtteranceChunk(corpus, opts.chunk_size, [&](std::vector<Utterance> &chunk) {
    decisions.assign(chunk.size(), {});
    ParallelFor(chunk.size(), opts.threads, [&](size_t i) {
      decisions[i] = FilterUtterance(chunk[i], lex, opts.expand);
    });
    for (size_t i = 0; i < chunk.size(); ++i) {
      const auto &d = decisions[i];
      uint64_t ntok = chunk[i].tokens.size();
      ++stats.total;
      stats.tokens_in += ntok;
      stats.malformed_callsigns += d.malformed;
      if (!d.had_context) ++stats.no_context;
      if (d.kept) {
        ++stats.kept;
        stats.tokens_kept += ntok;
        sink(chunk[i], d.matches);
      } else {
        ++stats.dropped;
      }
    }
  });
  return stats;
}

}  // namespace atcrole
