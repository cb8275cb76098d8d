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

// Transcript text normalization helpers.

#ifndef ATCROLE_TEXT_H_
#define ATCROLE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace atcrole {

std::string_view Trim(std::string_view s);
std::string ToLower(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string JoinTokens(const std::vector<std::string> &tokens);

/// Transcript tokenization: lowercase, split on ASCII whitespace, strip
/// punctuation from both token edges. Tokens that are pure punctuation
/// vanish; inner punctuation ("x-ray") is kept.
std::vector<std::string> TokenizeTranscript(std::string_view text);

}  // namespace atcrole

#endif  // ATCROLE_TEXT_H_
