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

#include "atcrole/hmm_graph.h"

#include <cmath>
#include <fstream>

#include "atcrole/text.h"

namespace atcrole {

void HmmGraph::Validate(int num_phones) const {
  if (num_states <= 0) throw GraphError("graph has no states");
  auto valid_state = [this](int s) { return s >= 0 && s < num_states; };
  if (!valid_state(start)) throw GraphError("start state out of range");
  for (const Arc &a : arcs) {
    if (!valid_state(a.src) || !valid_state(a.dst))
      throw GraphError("arc state out of range");
    if (a.phone < 0 || a.phone >= num_phones)
      throw GraphError("arc phone label out of range");
    if (!std::isfinite(a.log_weight)) throw GraphError("non-finite arc weight");
  }
  if (finals.empty()) throw GraphError("graph has no final state");
  for (const auto &[s, w] : finals) {
    if (!valid_state(s)) throw GraphError("final state out of range");
    if (!std::isfinite(w)) throw GraphError("non-finite final weight");
  }
}

PronunciationLexicon PronunciationLexicon::Read(std::istream &is) {
  PronunciationLexicon lex;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view sv = Trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    size_t tab = sv.find('\t');
    if (tab == std::string_view::npos)
      throw GraphError("pronunciation lexicon line " + std::to_string(line_no) +
                       ": expected word<TAB>phones");
    auto phones = SplitWhitespace(sv.substr(tab + 1));
    if (phones.empty())
      throw GraphError("pronunciation lexicon line " + std::to_string(line_no) +
                       ": empty pronunciation");
    lex.Add(std::string(Trim(sv.substr(0, tab))), phones);
  }
  return lex;
}

PronunciationLexicon PronunciationLexicon::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw GraphError("cannot open pronunciation lexicon " + path);
  return Read(is);
}

void PronunciationLexicon::Add(const std::string &word,
                               const std::vector<std::string> &phones) {
  std::vector<int> ids;
  for (const auto &p : phones) {
    auto [it, inserted] =
        phone_ids_.emplace(p, static_cast<int>(phones_.size()));
    if (inserted) phones_.push_back(p);
    ids.push_back(it->second);
  }
  words_[word] = std::move(ids);
}

const std::vector<int> &PronunciationLexicon::Pronunciation(
    const std::string &word) const {
  auto it = words_.find(word);
  if (it == words_.end()) throw OovWord(word);
  return it->second;
}

std::vector<int> PronunciationLexicon::PhoneSequence(
    std::span<const std::string> words) const {
  std::vector<int> out;
  for (const auto &w : words) {
    const auto &p = Pronunciation(w);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

HmmGraph BuildNumerator(std::span<const int> phones) {
  HmmGraph g;
  g.num_states = static_cast<int>(phones.size()) + 1;
  g.start = 0;
  for (size_t i = 0; i < phones.size(); ++i) {
    int s = static_cast<int>(i) + 1;
    g.arcs.push_back({s - 1, s, phones[i], 0.0});
    g.arcs.push_back({s, s, phones[i], 0.0});
  }
  g.finals.emplace_back(g.num_states - 1, 0.0);
  return g;
}

HmmGraph BuildNumerator(std::span<const std::string> words,
                        const PronunciationLexicon &lex) {
  return BuildNumerator(lex.PhoneSequence(words));
}

void PhoneBigramCounts::AddSequence(std::span<const int> phones) {
  for (size_t i = 0; i < phones.size(); ++i) {
    if (i == 0) {
      initial[phones[0]] += 1.0;
    } else {
      transitions(phones[i - 1], phones[i]) += 1.0;
    }
  }
}

double SmoothedBigramLogProb(const PhoneBigramCounts &counts, int prev,
                             int next) {
  double row_total = 0.0, c = 0.0;
  if (prev < 0) {
    for (double v : counts.initial) row_total += v;
    c = counts.initial[next];
  } else {
    for (int q = 0; q < counts.num_phones; ++q)
      row_total += counts.transitions(prev, q);
    c = counts.transitions(prev, next);
  }
  return std::log((c + 1.0) / (row_total + counts.num_phones));
}

HmmGraph BuildDenominator(const PhoneBigramCounts &counts) {
  const int n = counts.num_phones;
  HmmGraph g;
  g.num_states = n + 1;
  g.start = 0;
  for (int prev = -1; prev < n; ++prev) {
    for (int next = 0; next < n; ++next)
      g.arcs.push_back(
          {prev + 1, next + 1, next, SmoothedBigramLogProb(counts, prev, next)});
  }
  for (int k = 0; k < n; ++k) g.finals.emplace_back(k + 1, 0.0);
  return g;
}

}  // namespace atcrole
