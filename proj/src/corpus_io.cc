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

#include "atcrole/corpus_io.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "atcrole/text.h"

namespace atcrole {

using nlohmann::json;

const char *RoleName(Role role) {
  return role == Role::kAtco ? "atco" : "pilot";
}

std::optional<Role> ParseRole(std::string_view name) {
  std::string lower = ToLower(name);
  if (lower == "atco") return Role::kAtco;
  if (lower == "pilot") return Role::kPilot;
  return std::nullopt;
}

Utterance MakeUtterance(std::string id, std::string text) {
  Utterance utt;
  utt.id = std::move(id);
  utt.tokens = TokenizeTranscript(text);
  utt.text = std::move(text);
  return utt;
}

Utterance ParseUtteranceLine(std::string_view line) {
  json j = json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw CorpusFormatError("not a JSON object");
  if (!j.contains("id") || !j["id"].is_string())
    throw CorpusFormatError("missing string field 'id'");
  std::string text;
  if (j.contains("text")) {
    if (!j["text"].is_string())
      throw CorpusFormatError("field 'text' must be a string");
    text = j["text"].get<std::string>();
  }
  Utterance utt = MakeUtterance(j["id"].get<std::string>(), std::move(text));
  if (j.contains("role") && !j["role"].is_null()) {
    if (!j["role"].is_string())
      throw CorpusFormatError("field 'role' must be a string");
    utt.gold_role = ParseRole(j["role"].get<std::string>());
    if (!utt.gold_role)
      throw CorpusFormatError("unknown role '" + j["role"].get<std::string>() +
                              "'");
  }
  if (j.contains("callsigns") && !j["callsigns"].is_null()) {
    const json &cs = j["callsigns"];
    if (!cs.is_array())
      throw CorpusFormatError("field 'callsigns' must be an array");
    std::vector<std::string> list;
    for (const auto &c : cs) {
      if (!c.is_string())
        throw CorpusFormatError("callsign entries must be strings");
      list.push_back(c.get<std::string>());
    }
    utt.context_callsigns = std::move(list);
  }
  return utt;
}

json UtteranceToJson(const Utterance &utt) {
  json j = json::object();
  j["id"] = utt.id;
  j["text"] = utt.text;
  if (utt.gold_role) j["role"] = RoleName(*utt.gold_role);
  if (utt.context_callsigns) j["callsigns"] = *utt.context_callsigns;
  return j;
}

void ForEachUtteranceChunk(
    std::istream &is, size_t chunk_size,
    const std::function<void(std::vector<Utterance> &)> &fn) {
  if (chunk_size == 0) chunk_size = 1;
  std::vector<Utterance> chunk;
  chunk.reserve(chunk_size);
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      chunk.push_back(ParseUtteranceLine(line));
    } catch (const CorpusFormatError &e) {
      throw CorpusFormatError("corpus line " + std::to_string(line_no) + ": " +
                              e.what());
    }
    if (chunk.size() == chunk_size) {
      fn(chunk);
      chunk.clear();
    }
  }
  if (!chunk.empty()) fn(chunk);
}

void ParallelFor(size_t n, size_t threads,
                 const std::function<void(size_t)> &fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace atcrole
