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

#include "atcrole/mmi_verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace atcrole {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double Uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int UniformInt(std::mt19937_64 &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

PronunciationLexicon RandomLexicon(std::mt19937_64 &rng, int phones) {
  PronunciationLexicon lex;
  // One single-phone word per phone first, so every phone id exists.
  for (int p = 0; p < phones; ++p)
    lex.Add("p" + std::to_string(p), {"p" + std::to_string(p)});
  for (int w = 0; w < 3; ++w) {
    std::vector<std::string> pron(UniformInt(rng, 1, 2));
    for (auto &ph : pron) ph = "p" + std::to_string(UniformInt(rng, 0, phones - 1));
    lex.Add("w" + std::to_string(w), pron);
  }
  return lex;
}

std::vector<std::string> RandomWords(std::mt19937_64 &rng, int phones) {
  std::vector<std::string> words(UniformInt(rng, 1, 2));
  for (auto &w : words) {
    int pick = UniformInt(rng, 0, phones + 2);
    w = pick < phones ? "p" + std::to_string(pick)
                      : "w" + std::to_string(pick - phones);
  }
  return words;
}

std::vector<int> RandomSymbols(std::mt19937_64 &rng, size_t min_len,
                               size_t max_len, int symbols) {
  std::vector<int> out(UniformInt(rng, static_cast<int>(min_len),
                                  static_cast<int>(max_len)));
  for (int &s : out) s = UniformInt(rng, 0, symbols - 1);
  return out;
}

void Enumerate(const HmmGraph &g, const Matrix &log_em,
               std::span<const int> symbols, size_t t, int state, double acc,
               std::vector<double> &out) {
  if (t == symbols.size()) {
    for (const auto &[f, w] : g.finals)
      if (f == state) out.push_back(acc + w);
    return;
  }
  for (const Arc &a : g.arcs) {
    if (a.src != state) continue;
    Enumerate(g, log_em, symbols, t + 1, a.dst,
              acc + a.log_weight + log_em(a.phone, symbols[t]), out);
  }
}

}  // namespace

double EnumeratePathsLogProb(const HmmGraph &g, const Matrix &log_emissions,
                             std::span<const int> symbols) {
  std::vector<double> paths;
  Enumerate(g, log_emissions, symbols, 0, g.start, 0.0, paths);
  if (paths.empty()) return kNegInf;
  double max = *std::max_element(paths.begin(), paths.end());
  double sum = 0.0;
  for (double v : paths) sum += std::exp(v - max);
  return max + std::log(sum);
}

HmmGraph RandomGraph(std::mt19937_64 &rng, int max_states, int num_phones) {
  HmmGraph g;
  g.num_states = UniformInt(rng, 1, max_states);
  g.start = UniformInt(rng, 0, g.num_states - 1);
  std::bernoulli_distribution keep_arc(0.4), keep_final(0.5);
  for (int s = 0; s < g.num_states; ++s)
    for (int d = 0; d < g.num_states; ++d)
      for (int p = 0; p < num_phones; ++p)
        if (keep_arc(rng)) g.arcs.push_back({s, d, p, Uniform(rng, -2.0, 0.5)});
  for (int s = 0; s < g.num_states; ++s)
    if (keep_final(rng)) g.finals.emplace_back(s, Uniform(rng, -1.0, 0.0));
  if (g.finals.empty())
    g.finals.emplace_back(UniformInt(rng, 0, g.num_states - 1), 0.0);
  return g;
}

EmissionModel RandomEmissionModel(std::mt19937_64 &rng, size_t phones,
                                  size_t symbols, size_t tasks, double scale) {
  EmissionModel em(phones, symbols, tasks);
  for (double &v : em.shared.data) v = Uniform(rng, -scale, scale);
  for (auto &b : em.bias)
    for (double &v : b.data) v = Uniform(rng, -scale, scale);
  return em;
}

MmiInstance RandomMmiInstance(std::mt19937_64 &rng) {
  const int phones = UniformInt(rng, 1, 3);
  const int symbols = UniformInt(rng, 2, 4);
  const int tasks = UniformInt(rng, 1, 2);
  PronunciationLexicon lex = RandomLexicon(rng, phones);

  MmiInstance inst;
  for (int t = 0; t < tasks; ++t) {
    std::vector<TrainingUtterance> batch(UniformInt(rng, 1, 2));
    for (auto &u : batch) {
      u.task = static_cast<size_t>(t);
      u.words = RandomWords(rng, phones);
      size_t min_len = std::max<size_t>(1, lex.PhoneSequence(u.words).size());
      u.symbols = RandomSymbols(rng, min_len, 5, symbols);
    }
    PhoneBigramCounts counts(phones);
    for (double &c : counts.initial) c = UniformInt(rng, 0, 3);
    for (double &c : counts.transitions.data) c = UniformInt(rng, 0, 3);

    MmiTask task;
    task.name = "task" + std::to_string(t);
    task.lexicon = lex;
    task.den_graph = BuildDenominator(counts);
    task.alpha = Uniform(rng, 0.2, 1.0);
    task.lm_logprob = [](std::span<const std::string> w) {
      return -0.25 * static_cast<double>(w.size());
    };
    inst.tasks.push_back(std::move(task));
    inst.batches.push_back(std::move(batch));
  }
  inst.model = RandomEmissionModel(rng, phones, symbols, tasks);
  return inst;
}

double RelativeError(double a, double b, double floor) {
  double scale = std::max({std::fabs(a), std::fabs(b), floor});
  return std::fabs(a - b) / scale;
}

GradientCheck CheckGradient(const MmiInstance &inst, double step) {
  EmissionGradient analytic = MmiGradient(inst.batches, inst.tasks, inst.model);
  GradientCheck check;
  auto objective = [&inst](const EmissionModel &em) {
    return ComputeMultitaskObjective(inst.batches, inst.tasks, em).total;
  };
  auto probe = [&](const std::function<double &(EmissionModel &)> &param,
                   double expected) {
    EmissionModel plus = inst.model, minus = inst.model;
    param(plus) += step;
    param(minus) -= step;
    double fd = (objective(plus) - objective(minus)) / (2.0 * step);
    check.max_rel_error = std::max(check.max_rel_error, RelativeError(expected, fd));
    ++check.parameters;
  };
  for (size_t i = 0; i < inst.model.shared.data.size(); ++i)
    probe([i](EmissionModel &em) -> double & { return em.shared.data[i]; },
          analytic.shared.data[i]);
  for (size_t t = 0; t < inst.model.bias.size(); ++t)
    for (size_t i = 0; i < inst.model.bias[t].data.size(); ++i)
      probe([t, i](EmissionModel &em) -> double & { return em.bias[t].data[i]; },
            analytic.bias[t].data[i]);
  return check;
}

VerifyCheck CheckForwardAgainstEnumeration(const VerifyConfig &config) {
  VerifyCheck check;
  check.name = "forward_vs_enumeration";
  std::mt19937_64 rng(config.seed);
  // Sweep every graph size up to 4 states and every length up to 5 frames.
  for (size_t rep = 0; rep < config.instances; ++rep) {
    for (int states = 1; states <= 4; ++states) {
      for (size_t frames = 0; frames <= 5; ++frames) {
        const int phones = UniformInt(rng, 1, 3);
        const int symbols = UniformInt(rng, 2, 4);
        HmmGraph g;
        do {
          g = RandomGraph(rng, 4, phones);
        } while (g.num_states != states);
        EmissionModel em = RandomEmissionModel(rng, phones, symbols, 1);
        Matrix log_em = em.LogEmissions(0);
        std::vector<int> x = RandomSymbols(rng, frames, frames, symbols);
        double fwd = ForwardLogProb(g, log_em, x);
        double brute = EnumeratePathsLogProb(g, log_em, x);
        ++check.cases;
        double err = (fwd == kNegInf && brute == kNegInf)
                         ? 0.0
                         : std::fabs(fwd - brute);
        if (std::isnan(err) || err > config.forward_tolerance) {
          check.passed = false;
          std::ostringstream os;
          os << "states=" << states << " frames=" << frames
             << " forward=" << fwd << " enumerated=" << brute;
          check.detail = os.str();
        }
        if (!std::isnan(err)) check.worst = std::max(check.worst, err);
      }
    }
  }
  return check;
}

VerifyCheck CheckGradientsAgainstFiniteDifferences(const VerifyConfig &config) {
  VerifyCheck check;
  check.name = "gradient_vs_finite_differences";
  std::mt19937_64 rng(config.seed + 1);
  for (size_t i = 0; i < config.instances; ++i) {
    MmiInstance inst = RandomMmiInstance(rng);
    GradientCheck g = CheckGradient(inst, config.fd_step);
    ++check.cases;
    check.worst = std::max(check.worst, g.max_rel_error);
    if (!(g.max_rel_error <= config.gradient_tolerance)) {
      check.passed = false;
      check.detail = "instance " + std::to_string(i) +
                     " relative error " + std::to_string(g.max_rel_error);
    }
  }
  return check;
}

VerifyCheck CheckNumeratorEqualsDenominator(const VerifyConfig &config) {
  VerifyCheck check;
  check.name = "numerator_equals_denominator";
  std::mt19937_64 rng(config.seed + 2);
  for (size_t i = 0; i < config.instances; ++i) {
    MmiInstance inst = RandomMmiInstance(rng);
    for (size_t t = 0; t < inst.tasks.size(); ++t) {
      inst.batches[t].resize(1);
      inst.tasks[t].den_graph =
          BuildNumerator(inst.batches[t][0].words, inst.tasks[t].lexicon);
      inst.tasks[t].lm_logprob = nullptr;
    }
    double f = ComputeMultitaskObjective(inst.batches, inst.tasks, inst.model).total;
    EmissionGradient g = MmiGradient(inst.batches, inst.tasks, inst.model);
    double worst = std::fabs(f);
    for (double v : g.shared.data) worst = std::max(worst, std::fabs(v));
    for (const auto &b : g.bias)
      for (double v : b.data) worst = std::max(worst, std::fabs(v));
    ++check.cases;
    check.worst = std::max(check.worst, worst);
    if (!(worst <= config.zero_tolerance)) {
      check.passed = false;
      check.detail = "instance " + std::to_string(i) + " deviation " +
                     std::to_string(worst);
    }
  }
  return check;
}

VerifyCheck CheckSingleTaskReduction(const VerifyConfig &config) {
  VerifyCheck check;
  check.name = "single_task_reduction";
  std::mt19937_64 rng(config.seed + 3);
  for (size_t i = 0; i < config.instances; ++i) {
    MmiInstance inst = RandomMmiInstance(rng);
    inst.tasks.resize(1);
    inst.batches.resize(1);
    inst.tasks[0].alpha = 1.0;
    inst.model.bias.resize(1);
    double multi = ComputeMultitaskObjective(inst.batches, inst.tasks, inst.model).total;
    double single = MmiObjective(inst.batches[0], inst.tasks[0], 0, inst.model).value;
    Matrix g_single = MmiTaskGradient(inst.batches[0], inst.tasks[0], 0, inst.model);
    EmissionGradient g_multi = MmiGradient(inst.batches, inst.tasks, inst.model);
    ++check.cases;
    bool same = multi == single && g_multi.shared == g_single &&
                g_multi.bias[0] == g_single;
    if (!same) {
      check.passed = false;
      check.worst = std::max(check.worst, std::fabs(multi - single));
      check.detail = "instance " + std::to_string(i) + " differs";
    }
  }
  return check;
}

SyntheticCorpus SyntheticTwoTaskCorpus(uint64_t seed,
                                       size_t utterances_per_task) {
  std::mt19937_64 rng(seed);
  SyntheticCorpus c;
  c.lexicon.Add("a", {"a"});
  c.lexicon.Add("b", {"b"});
  c.lexicon.Add("ab", {"a", "b"});
  c.lexicon.Add("ba", {"b", "a"});
  c.task_names = {"atco", "pilot"};
  c.num_symbols = 4;
  const std::vector<std::string> vocab = {"a", "b", "ab", "ba"};
  std::bernoulli_distribution noise(0.1);
  for (size_t t = 0; t < 2; ++t) {
    for (size_t i = 0; i < utterances_per_task; ++i) {
      TrainingUtterance u;
      u.task = t;
      u.words.resize(UniformInt(rng, 1, 3));
      for (auto &w : u.words) w = vocab[UniformInt(rng, 0, 3)];
      for (int phone : c.lexicon.PhoneSequence(u.words)) {
        int dwell = UniformInt(rng, 1, 3);
        for (int f = 0; f < dwell; ++f) {
          int sym = static_cast<int>(2 * t) + phone;
          if (noise(rng)) sym = UniformInt(rng, 0, 3);
          u.symbols.push_back(sym);
        }
      }
      c.utterances.push_back(std::move(u));
    }
  }
  return c;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck &c) { return c.passed; });
}

nlohmann::json VerifyReport::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto &c : checks) {
    nlohmann::json j{{"name", c.name},
                     {"passed", c.passed},
                     {"cases", c.cases},
                     {"worst_error", c.worst}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    out.push_back(std::move(j));
  }
  return out;
}

VerifyReport RunMmiVerification(const VerifyConfig &config) {
  VerifyReport report;
  report.checks.push_back(CheckForwardAgainstEnumeration(config));
  report.checks.push_back(CheckGradientsAgainstFiniteDifferences(config));
  report.checks.push_back(CheckNumeratorEqualsDenominator(config));
  report.checks.push_back(CheckSingleTaskReduction(config));
  return report;
}

}  // namespace atcrole
