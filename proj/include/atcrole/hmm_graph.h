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

// Small HMM graphs over a shared phone set: numerator chains built from a
// transcript and phone-loop denominator graphs weighted by a bigram phone LM.
// Each arc consumes one observation frame, emitted by the arc's phone.

#ifndef ATCROLE_HMM_GRAPH_H_
#define ATCROLE_HMM_GRAPH_H_

#include <cstddef>
#include <istream>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace atcrole {

/// Dense row-major matrix of doubles.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double &operator()(size_t r, size_t c) { return data[r * cols + c]; }
  double operator()(size_t r, size_t c) const { return data[r * cols + c]; }
  bool operator==(const Matrix &) const = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OovWord : public std::runtime_error {
 public:
  explicit OovWord(const std::string &word)
      : std::runtime_error("word not in lexicon: '" + word + "'") {}
};

struct Arc {
  int src = 0;
  int dst = 0;
  int phone = 0;
  double log_weight = 0.0;
};

struct HmmGraph {
  int num_states = 0;
  int start = 0;
  std::vector<Arc> arcs;
  std::vector<std::pair<int, double>> finals;  // (state, final log-weight)

  /// Checks state/phone ranges and finite weights. Throws GraphError.
  void Validate(int num_phones) const;
};

/// Word -> phone-id sequence, over a phone inventory named in order of first
/// appearance.
class PronunciationLexicon {
 public:
  /// TSV lines `word<TAB>phone phone ...`; '#' lines are comments.
  static PronunciationLexicon Read(std::istream &is);
  static PronunciationLexicon ReadFile(const std::string &path);

  void Add(const std::string &word, const std::vector<std::string> &phones);

  /// Throws OovWord for unknown words.
  const std::vector<int> &Pronunciation(const std::string &word) const;
  /// Concatenated phones of a word sequence.
  std::vector<int> PhoneSequence(std::span<const std::string> words) const;
  bool Contains(const std::string &word) const { return words_.count(word) > 0; }

  int num_phones() const { return static_cast<int>(phones_.size()); }
  const std::vector<std::string> &phones() const { return phones_; }

 private:
  std::vector<std::string> phones_;
  std::map<std::string, int> phone_ids_;
  std::map<std::string, std::vector<int>> words_;
};

/// Linear chain: start state 0, one emitting state per phone entered by an
/// arc labelled with that phone and carrying a self-loop with the same label.
/// All arc and final weights are log 1. An empty phone sequence yields a
/// single state that is both start and final.
HmmGraph BuildNumerator(std::span<const int> phones);
HmmGraph BuildNumerator(std::span<const std::string> words,
                        const PronunciationLexicon &lex);

/// Raw phone bigram statistics, including the sentence-initial context.
struct PhoneBigramCounts {
  int num_phones = 0;
  std::vector<double> initial;  // [phone]
  Matrix transitions;           // [previous phone][phone]

  explicit PhoneBigramCounts(int phones = 0)
      : num_phones(phones),
        initial(static_cast<size_t>(phones), 0.0),
        transitions(static_cast<size_t>(phones), static_cast<size_t>(phones)) {}

  void AddSequence(std::span<const int> phones);
};

/// Add-one smoothed bigram probability log p(next | prev); prev = -1 is the
/// sentence-initial context.
double SmoothedBigramLogProb(const PhoneBigramCounts &counts, int prev, int next);

/// Phone loop: state 0 is the start, state k+1 remembers that phone k was
/// the last one emitted. Every arc into k+1 is labelled k and weighted with
/// the smoothed bigram log-prob; all non-start states are final.
HmmGraph BuildDenominator(const PhoneBigramCounts &counts);

}  // namespace atcrole

#endif  // ATCROLE_HMM_GRAPH_H_
