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

// Shared generators for the property tests.

#ifndef ATCROLE_TESTS_TEST_UTIL_H_
#define ATCROLE_TESTS_TEST_UTIL_H_

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "atcrole/callsign.h"

namespace atcrole::testing {

inline int RandInt(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::string RandomCallsignString(std::mt19937_64 &rng) {
  std::string s;
  for (int i = 0; i < 3; ++i) s += static_cast<char>('A' + RandInt(rng, 0, 25));
  int digits = RandInt(rng, 1, 4);
  for (int i = 0; i < digits; ++i) s += static_cast<char>('0' + RandInt(rng, 0, 9));
  int suffix = RandInt(rng, 0, 2);
  for (int i = 0; i < suffix; ++i) s += static_cast<char>('A' + RandInt(rng, 0, 25));
  return s;
}

inline TelephonyLexicon SmallTelephony() {
  std::istringstream is(
      "TVS\tskytravel\nLUF\tlufthansa\nCSA\tcsa lines\nBAW\tspeedbird\n");
  return TelephonyLexicon::Read(is);
}

inline std::vector<std::string> Words(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace atcrole::testing

#endif  // ATCROLE_TESTS_TEST_UTIL_H_
