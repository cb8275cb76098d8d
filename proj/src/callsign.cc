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

#include "atcrole/callsign.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "atcrole/text.h"

namespace atcrole {

namespace {

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

constexpr std::array<const char *, 26> kNato = {
    "alfa",   "bravo",   "charlie", "delta",  "echo",    "foxtrot", "golf",
    "hotel",  "india",   "juliett", "kilo",   "lima",    "mike",    "november",
    "oscar",  "papa",    "quebec",  "romeo",  "sierra",  "tango",   "uniform",
    "victor", "whiskey", "x-ray",   "yankee", "zulu"};

constexpr std::array<const char *, 10> kPlainDigits = {
    "zero", "one", "two", "three", "four",
    "five", "six", "seven", "eight", "nine"};

constexpr std::array<const char *, 10> kIcaoDigits = {
    "zero", "one", "two", "tree", "four",
    "fife", "six", "seven", "eight", "niner"};

bool IsValidCode(std::string_view code) {
  return code.size() == 3 && std::all_of(code.begin(), code.end(), IsUpper);
}

}  // namespace

Callsign ParseCallsign(std::string_view raw) {
  // Layout: 3 letters, 1-4 digits, 0-2 letters, nothing else.
  size_t pos = 0;
  while (pos < raw.size() && IsUpper(raw[pos])) ++pos;
  if (pos != 3) throw MalformedCallsign(std::string(raw));
  size_t digits_end = pos;
  while (digits_end < raw.size() && IsDigit(raw[digits_end])) ++digits_end;
  size_t num_digits = digits_end - pos;
  if (num_digits < 1 || num_digits > 4) throw MalformedCallsign(std::string(raw));
  size_t suffix_end = digits_end;
  while (suffix_end < raw.size() && IsUpper(raw[suffix_end])) ++suffix_end;
  if (suffix_end != raw.size() || suffix_end - digits_end > 2)
    throw MalformedCallsign(std::string(raw));

  Callsign cs;
  cs.airline_code = std::string(raw.substr(0, 3));
  cs.number_part = std::string(raw.substr(3, num_digits));
  cs.suffix = std::string(raw.substr(digits_end));
  return cs;
}

std::string SpokenDigit(char digit, DigitStyle style) {
  if (!IsDigit(digit))
    throw std::invalid_argument(std::string("not a digit: '") + digit + "'");
  const auto &table = style == DigitStyle::kIcao ? kIcaoDigits : kPlainDigits;
  return table[digit - '0'];
}

std::string NatoLetter(char letter) {
  char up = letter;
  if (up >= 'a' && up <= 'z') up = static_cast<char>(up - 'a' + 'A');
  if (!IsUpper(up))
    throw std::invalid_argument(std::string("not a letter: '") + letter + "'");
  return kNato[up - 'A'];
}

TelephonyLexicon TelephonyLexicon::Read(std::istream &is) {
  TelephonyLexicon lex;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    size_t tab = trimmed.find('\t');
    if (tab == std::string_view::npos)
      throw LexiconError("telephony lexicon line " + std::to_string(line_no) +
                         ": expected CODE<TAB>designator");
    try {
      lex.Add(std::string(Trim(trimmed.substr(0, tab))),
              std::string(trimmed.substr(tab + 1)));
    } catch (const LexiconError &e) {
      throw LexiconError("telephony lexicon line " + std::to_string(line_no) +
                         ": " + e.what());
    }
  }
  return lex;
}

TelephonyLexicon TelephonyLexicon::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw LexiconError("cannot open telephony lexicon " + path);
  return Read(is);
}

void TelephonyLexicon::Add(const std::string &code,
                           const std::string &designator) {
  if (!IsValidCode(code)) throw LexiconError("bad airline code '" + code + "'");
  std::vector<std::string> tokens = SplitWhitespace(ToLower(designator));
  if (tokens.empty())
    throw LexiconError("empty designator for airline code " + code);
  entries_[code] = std::move(tokens);
}

const std::vector<std::string> *TelephonyLexicon::Lookup(
    std::string_view code) const {
  auto it = entries_.find(code);
  return it == entries_.end() ? nullptr : &it->second;
}

bool TelephonyLexicon::HasDesignatorToken(std::string_view token) const {
  for (const auto &[code, tokens] : entries_) {
    if (std::find(tokens.begin(), tokens.end(), token) != tokens.end())
      return true;
  }
  return false;
}

const char *VariantKindName(VariantKind kind) {
  switch (kind) {
    case VariantKind::kFullTelephony: return "FULL_TELEPHONY";
    case VariantKind::kLetterSpelled: return "LETTER_SPELLED";
    case VariantKind::kShortened: return "SHORTENED";
  }
  return "?";
}

std::string SpokenVariant::Text() const { return JoinTokens(tokens); }

std::vector<SpokenVariant> ExpandCallsign(const Callsign &cs,
                                          const TelephonyLexicon &lex,
                                          const ExpandOptions &opts) {
  std::vector<std::string> tail;
  for (char d : cs.number_part) tail.push_back(SpokenDigit(d, opts.digit_style));
  for (char c : cs.suffix) tail.push_back(NatoLetter(c));

  std::vector<SpokenVariant> out;
  auto add = [&out](std::vector<std::string> tokens, VariantKind kind) {
    for (const auto &v : out)
      if (v.tokens == tokens) return;
    out.push_back({std::move(tokens), kind});
  };

  if (const auto *designator = lex.Lookup(cs.airline_code)) {
    std::vector<std::string> full = *designator;
    full.insert(full.end(), tail.begin(), tail.end());
    add(std::move(full), VariantKind::kFullTelephony);
  }
  std::vector<std::string> spelled;
  for (char c : cs.airline_code) spelled.push_back(NatoLetter(c));
  spelled.insert(spelled.end(), tail.begin(), tail.end());
  add(std::move(spelled), VariantKind::kLetterSpelled);
  add(tail, VariantKind::kShortened);
  return out;
}

bool IsSpokenAlphabetToken(std::string_view token,
                           const TelephonyLexicon &lex) {
  for (const char *w : kNato)
    if (token == w) return true;
  for (const char *w : kPlainDigits)
    if (token == w) return true;
  for (const char *w : kIcaoDigits)
    if (token == w) return true;
  return lex.HasDesignatorToken(token);
}

}  // namespace atcrole
