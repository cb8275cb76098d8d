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

// Scoring: 2x2 role confusion matrix with rates, and word error rate.

#ifndef ATCROLE_EVAL_H_
#define ATCROLE_EVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "atcrole/corpus_io.h"
#include "json.hpp"

namespace atcrole {

// ATCO is the positive class.
struct ConfusionMatrix {
  uint64_t tp = 0;  // actual ATCO, predicted ATCO
  uint64_t fn = 0;  // actual ATCO, predicted pilot
  uint64_t fp = 0;  // actual pilot, predicted ATCO
  uint64_t tn = 0;  // actual pilot, predicted pilot

  void Add(Role predicted, Role actual);
  ConfusionMatrix &operator+=(const ConfusionMatrix &other);
  bool operator==(const ConfusionMatrix &) const = default;

  uint64_t actual_atco() const { return tp + fn; }
  uint64_t actual_pilot() const { return fp + tn; }
  uint64_t total() const { return tp + fn + fp + tn; }
};

ConfusionMatrix Accumulate(std::span<const std::pair<Role, Role>> pairs);

/// A rate is absent when its denominator class is empty.
struct Rates {
  std::optional<double> tpr;
  std::optional<double> tnr;
  std::optional<double> accuracy;
};

Rates ComputeRates(const ConfusionMatrix &cm);

nlohmann::json ConfusionToJson(const ConfusionMatrix &cm, const Rates &rates);
/// Aligned text table, rows = predicted, columns = actual, with
/// percent-of-column shares.
std::string ConfusionTable(const ConfusionMatrix &cm, const Rates &rates);

class EmptyReference : public std::runtime_error {
 public:
  EmptyReference() : std::runtime_error("empty reference with non-empty hypothesis") {}
};

struct WerBreakdown {
  uint64_t substitutions = 0;
  uint64_t deletions = 0;
  uint64_t insertions = 0;
  uint64_t ref_words = 0;

  uint64_t total_edits() const { return substitutions + deletions + insertions; }
  /// (S+D+I)/N; 0 for an empty reference with no edits.
  double wer() const;
  WerBreakdown &operator+=(const WerBreakdown &other);
  nlohmann::json ToJson() const;
};

/// Word-level Levenshtein alignment with unit costs. Among minimal
/// alignments the one with the most substitutions is reported, so
/// Wer(b, a) equals Wer(a, b) with deletions and insertions swapped.
/// Throws EmptyReference when ref is empty and hyp is not.
WerBreakdown Wer(std::span<const std::string> ref,
                 std::span<const std::string> hyp);

/// Corpus WER with error counts pooled before dividing.
WerBreakdown WerCorpus(
    std::span<const std::pair<std::vector<std::string>, std::vector<std::string>>>
        pairs);

}  // namespace atcrole

#endif  // ATCROLE_EVAL_H_
