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

#include "atcrole/eval.h"

#include <cstdio>
#include <sstream>

namespace atcrole {

using nlohmann::json;

void ConfusionMatrix::Add(Role predicted, Role actual) {
  if (actual == Role::kAtco) {
    ++(predicted == Role::kAtco ? tp : fn);
  } else {
    ++(predicted == Role::kAtco ? fp : tn);
  }
}

ConfusionMatrix &ConfusionMatrix::operator+=(const ConfusionMatrix &o) {
  tp += o.tp;
  fn += o.fn;
  fp += o.fp;
  tn += o.tn;
  return *this;
}

ConfusionMatrix Accumulate(std::span<const std::pair<Role, Role>> pairs) {
  ConfusionMatrix cm;
  for (const auto &[predicted, actual] : pairs) cm.Add(predicted, actual);
  return cm;
}

Rates ComputeRates(const ConfusionMatrix &cm) {
  Rates r;
  if (cm.actual_atco() > 0)
    r.tpr = static_cast<double>(cm.tp) / static_cast<double>(cm.actual_atco());
  if (cm.actual_pilot() > 0)
    r.tnr = static_cast<double>(cm.tn) / static_cast<double>(cm.actual_pilot());
  if (cm.total() > 0)
    r.accuracy =
        static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  return r;
}

json ConfusionToJson(const ConfusionMatrix &cm, const Rates &rates) {
  auto opt = [](const std::optional<double> &v) -> json {
    return v ? json(*v) : json(nullptr);
  };
  return json{{"tp", cm.tp},
              {"fn", cm.fn},
              {"fp", cm.fp},
              {"tn", cm.tn},
              {"tpr", opt(rates.tpr)},
              {"tnr", opt(rates.tnr)},
              {"accuracy", opt(rates.accuracy)}};
}

std::string ConfusionTable(const ConfusionMatrix &cm, const Rates &rates) {
  auto share = [](uint64_t n, uint64_t col) -> std::string {
    if (col == 0) return "  -";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%3.0f%%", 100.0 * n / col);
    return buf;
  };
  auto rate = [](const std::optional<double> &v) -> std::string {
    if (!v) return "n/a";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", *v);
    return buf;
  };
  char line[128];
  std::ostringstream os;
  os << "predicted \\ actual        ATCO         pilot\n";
  std::snprintf(line, sizeof(line), "ATCO              %7llu %5s %7llu %5s\n",
                static_cast<unsigned long long>(cm.tp),
                share(cm.tp, cm.actual_atco()).c_str(),
                static_cast<unsigned long long>(cm.fp),
                share(cm.fp, cm.actual_pilot()).c_str());
  os << line;
  std::snprintf(line, sizeof(line), "pilot             %7llu %5s %7llu %5s\n",
                static_cast<unsigned long long>(cm.fn),
                share(cm.fn, cm.actual_atco()).c_str(),
                static_cast<unsigned long long>(cm.tn),
                share(cm.tn, cm.actual_pilot()).c_str());
  os << line;
  os << "tpr " << rate(rates.tpr) << "  tnr " << rate(rates.tnr)
     << "  accuracy " << rate(rates.accuracy) << "\n";
  return os.str();
}

double WerBreakdown::wer() const {
  if (ref_words == 0) return 0.0;
  return static_cast<double>(total_edits()) / static_cast<double>(ref_words);
}

WerBreakdown &WerBreakdown::operator+=(const WerBreakdown &o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  ref_words += o.ref_words;
  return *this;
}

json WerBreakdown::ToJson() const {
  return json{{"substitutions", substitutions},
              {"deletions", deletions},
              {"insertions", insertions},
              {"ref_words", ref_words},
              {"wer", wer()}};
}

WerBreakdown Wer(std::span<const std::string> ref,
                 std::span<const std::string> hyp) {
  if (ref.empty() && !hyp.empty()) throw EmptyReference();
  const size_t n = ref.size(), m = hyp.size();
  // Cell (i, j) aligns ref[0,i) with hyp[0,j). Among minimal-cost
  // alignments keep the one with the most substitutions; with the total and
  // D - I = n - m fixed this determines the breakdown, and swapping ref and
  // hyp then only swaps D and I.
  struct Cell {
    uint32_t cost = 0;
    uint32_t subs = 0;
    bool Better(const Cell &o) const {
      return cost != o.cost ? cost < o.cost : subs > o.subs;
    }
    bool operator==(const Cell &) const = default;
  };
  std::vector<Cell> table((n + 1) * (m + 1));
  auto at = [m, &table](size_t i, size_t j) -> Cell & {
    return table[i * (m + 1) + j];
  };
  auto diag = [&](size_t i, size_t j) {
    bool same = ref[i - 1] == hyp[j - 1];
    Cell c = at(i - 1, j - 1);
    return Cell{c.cost + (same ? 0u : 1u), c.subs + (same ? 0u : 1u)};
  };
  auto del = [&](size_t i, size_t j) {
    return Cell{at(i - 1, j).cost + 1, at(i - 1, j).subs};
  };
  auto ins = [&](size_t i, size_t j) {
    return Cell{at(i, j - 1).cost + 1, at(i, j - 1).subs};
  };
  for (size_t i = 1; i <= n; ++i) at(i, 0) = del(i, 0);
  for (size_t j = 1; j <= m; ++j) at(0, j) = ins(0, j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      Cell best = diag(i, j);
      if (Cell d = del(i, j); d.Better(best)) best = d;
      if (Cell s = ins(i, j); s.Better(best)) best = s;
      at(i, j) = best;
    }
  }

  // Backtrace, preferring substitution/match, then deletion, then insertion.
  WerBreakdown b;
  b.ref_words = n;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && diag(i, j) == at(i, j)) {
      if (ref[i - 1] != hyp[j - 1]) ++b.substitutions;
      --i;
      --j;
    } else if (i > 0 && del(i, j) == at(i, j)) {
      ++b.deletions;
      --i;
    } else {
      ++b.insertions;
      --j;
    }
  }
  return b;
}

WerBreakdown WerCorpus(
    std::span<const std::pair<std::vector<std::string>, std::vector<std::string>>>
        pairs) {
  WerBreakdown total;
  for (const auto &[ref, hyp] : pairs) total += Wer(ref, hyp);
  return total;
}

}  // namespace atcrole
