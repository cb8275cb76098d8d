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

#include "atcrole/mmi.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace atcrole {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckSymbols(std::span<const int> symbols, const Matrix &log_emissions) {
  for (int s : symbols)
    if (s < 0 || static_cast<size_t>(s) >= log_emissions.cols)
      throw std::out_of_range("observation symbol " + std::to_string(s) +
                              " out of range");
}

}  // namespace

double LogAdd(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

EmissionModel::EmissionModel(size_t num_phones, size_t num_symbols,
                             size_t num_tasks)
    : shared(num_phones, num_symbols),
      bias(num_tasks, Matrix(num_phones, num_symbols)) {}

Matrix EmissionModel::LogEmissions(size_t task) const {
  const Matrix &b = bias.at(task);
  Matrix out(shared.rows, shared.cols);
  for (size_t p = 0; p < shared.rows; ++p) {
    double row_max = kNegInf;
    for (size_t s = 0; s < shared.cols; ++s) {
      out(p, s) = shared(p, s) + b(p, s);
      row_max = std::max(row_max, out(p, s));
    }
    double sum = 0.0;
    for (size_t s = 0; s < shared.cols; ++s) sum += std::exp(out(p, s) - row_max);
    double log_norm = row_max + std::log(sum);
    for (size_t s = 0; s < shared.cols; ++s) out(p, s) -= log_norm;
  }
  return out;
}

double ForwardLogProb(const HmmGraph &g, const Matrix &log_emissions,
                      std::span<const int> symbols) {
  CheckSymbols(symbols, log_emissions);
  std::vector<double> prev(g.num_states, kNegInf), cur(g.num_states);
  prev[g.start] = 0.0;
  for (int sym : symbols) {
    std::fill(cur.begin(), cur.end(), kNegInf);
    for (const Arc &a : g.arcs) {
      if (prev[a.src] == kNegInf) continue;
      cur[a.dst] = LogAdd(cur[a.dst],
                          prev[a.src] + a.log_weight + log_emissions(a.phone, sym));
    }
    prev.swap(cur);
  }
  double total = kNegInf;
  for (const auto &[state, w] : g.finals) total = LogAdd(total, prev[state] + w);
  return total;
}

Occupancy ForwardBackward(const HmmGraph &g, const Matrix &log_emissions,
                          std::span<const int> symbols) {
  CheckSymbols(symbols, log_emissions);
  const size_t frames = symbols.size();
  const size_t n = static_cast<size_t>(g.num_states);
  Matrix alpha(frames + 1, n, kNegInf), beta(frames + 1, n, kNegInf);

  alpha(0, g.start) = 0.0;
  for (size_t t = 1; t <= frames; ++t) {
    int sym = symbols[t - 1];
    for (const Arc &a : g.arcs) {
      double from = alpha(t - 1, a.src);
      if (from == kNegInf) continue;
      alpha(t, a.dst) = LogAdd(alpha(t, a.dst),
                               from + a.log_weight + log_emissions(a.phone, sym));
    }
  }
  for (const auto &[state, w] : g.finals)
    beta(frames, state) = LogAdd(beta(frames, state), w);
  for (size_t t = frames; t >= 1; --t) {
    int sym = symbols[t - 1];
    for (const Arc &a : g.arcs) {
      double to = beta(t, a.dst);
      if (to == kNegInf) continue;
      beta(t - 1, a.src) = LogAdd(beta(t - 1, a.src),
                                  to + a.log_weight + log_emissions(a.phone, sym));
    }
  }

  Occupancy occ;
  occ.log_prob = beta(0, g.start);
  if (occ.log_prob == kNegInf)
    throw NoPath("no path of length " + std::to_string(frames) +
                 " through graph");
  occ.counts = Matrix(log_emissions.rows, log_emissions.cols);
  for (size_t t = 1; t <= frames; ++t) {
    int sym = symbols[t - 1];
    for (const Arc &a : g.arcs) {
      double lp = alpha(t - 1, a.src) + a.log_weight +
                  log_emissions(a.phone, sym) + beta(t, a.dst);
      if (lp == kNegInf) continue;
      occ.counts(a.phone, sym) += std::exp(lp - occ.log_prob);
    }
  }
  return occ;
}

MmiTask MakeTask(std::string name, PronunciationLexicon lexicon,
                 std::span<const TrainingUtterance> utterances, double alpha) {
  PhoneBigramCounts counts(lexicon.num_phones());
  for (const auto &u : utterances) counts.AddSequence(lexicon.PhoneSequence(u.words));
  MmiTask task;
  task.name = std::move(name);
  task.den_graph = BuildDenominator(counts);
  task.lexicon = std::move(lexicon);
  task.alpha = alpha;
  return task;
}

TaskObjective MmiObjective(std::span<const TrainingUtterance> batch,
                           const MmiTask &task, size_t task_index,
                           const EmissionModel &em) {
  const Matrix log_em = em.LogEmissions(task_index);
  TaskObjective obj;
  for (const auto &u : batch) {
    HmmGraph num = BuildNumerator(u.words, task.lexicon);
    double num_lp = ForwardLogProb(num, log_em, u.symbols);
    if (num_lp == kNegInf) {
      ++obj.no_path;
      obj.value = kNegInf;
      continue;
    }
    double den_lp = ForwardLogProb(task.den_graph, log_em, u.symbols);
    double lm = task.lm_logprob ? task.lm_logprob(u.words) : 0.0;
    obj.value += num_lp + lm - den_lp;
  }
  return obj;
}

MultitaskObjective ComputeMultitaskObjective(
    std::span<const std::vector<TrainingUtterance>> batches,
    std::span<const MmiTask> tasks, const EmissionModel &em) {
  if (batches.size() != tasks.size())
    throw std::invalid_argument("one batch per task expected");
  MultitaskObjective out;
  for (size_t t = 0; t < tasks.size(); ++t) {
    TaskObjective f = MmiObjective(batches[t], tasks[t], t, em);
    out.per_task.push_back(f.value);
    out.no_path += f.no_path;
    out.total += tasks[t].alpha * f.value;
  }
  return out;
}

Matrix MmiTaskGradient(std::span<const TrainingUtterance> batch,
                       const MmiTask &task, size_t task_index,
                       const EmissionModel &em) {
  const Matrix log_em = em.LogEmissions(task_index);
  const size_t phones = log_em.rows, syms = log_em.cols;
  Matrix grad(phones, syms);
  for (const auto &u : batch) {
    HmmGraph num = BuildNumerator(u.words, task.lexicon);
    Occupancy on = ForwardBackward(num, log_em, u.symbols);
    Occupancy od = ForwardBackward(task.den_graph, log_em, u.symbols);
    // Chain rule through the row softmax: d/dlogit(p,s) of sum_s' c(p,s')
    // log q(p,s') is c(p,s) - q(p,s) * sum_s' c(p,s').
    for (size_t p = 0; p < phones; ++p) {
      double row = 0.0;
      for (size_t s = 0; s < syms; ++s) row += on.counts(p, s) - od.counts(p, s);
      for (size_t s = 0; s < syms; ++s)
        grad(p, s) += on.counts(p, s) - od.counts(p, s) -
                      std::exp(log_em(p, s)) * row;
    }
  }
  return grad;
}

EmissionGradient MmiGradient(
    std::span<const std::vector<TrainingUtterance>> batches,
    std::span<const MmiTask> tasks, const EmissionModel &em) {
  if (batches.size() != tasks.size())
    throw std::invalid_argument("one batch per task expected");
  EmissionGradient g;
  g.shared = Matrix(em.num_phones(), em.num_symbols());
  g.bias.assign(em.num_tasks(), Matrix(em.num_phones(), em.num_symbols()));
  for (size_t t = 0; t < tasks.size(); ++t) {
    Matrix gt = MmiTaskGradient(batches[t], tasks[t], t, em);
    for (size_t i = 0; i < gt.data.size(); ++i) {
      double v = tasks[t].alpha * gt.data[i];
      g.bias[t].data[i] = v;
      g.shared.data[i] += v;
    }
  }
  return g;
}

TrainResult ToyTrain(std::vector<MmiTask> tasks,
                     std::span<const std::vector<TrainingUtterance>> batches,
                     EmissionModel init, const TrainConfig &config) {
  if (init.num_tasks() < tasks.size())
    throw std::invalid_argument("emission model has fewer tasks than given");
  if (config.alpha)
    for (auto &t : tasks) t.alpha = *config.alpha;

  TrainResult result;
  result.model = std::move(init);
  EmissionModel &em = result.model;
  double prev = ComputeMultitaskObjective(batches, tasks, em).total;
  result.objective_trace.push_back(prev);
  size_t decreases = 0;
  for (size_t step = 1; step <= config.steps; ++step) {
    EmissionGradient g = MmiGradient(batches, tasks, em);
    for (size_t i = 0; i < em.shared.data.size(); ++i)
      em.shared.data[i] += config.learning_rate * g.shared.data[i];
    for (size_t t = 0; t < tasks.size(); ++t)
      for (size_t i = 0; i < em.bias[t].data.size(); ++i)
        em.bias[t].data[i] += config.learning_rate * g.bias[t].data[i];

    double f = ComputeMultitaskObjective(batches, tasks, em).total;
    result.objective_trace.push_back(f);
    decreases = f < prev ? decreases + 1 : 0;
    if (decreases >= 10) throw DivergenceDetected(step);
    prev = f;
  }
  return result;
}

const char *TrainModeName(TrainMode mode) {
  switch (mode) {
    case TrainMode::kSingle: return "single";
    case TrainMode::kPooled: return "pooled";
    case TrainMode::kMultitask: return "multitask";
  }
  return "?";
}

ModeReport TrainInMode(TrainMode mode, const PronunciationLexicon &lexicon,
                       const std::vector<std::string> &task_names,
                       std::span<const TrainingUtterance> corpus,
                       size_t num_symbols, const TrainConfig &config) {
  const size_t num_tasks = task_names.size();
  const size_t phones = static_cast<size_t>(lexicon.num_phones());
  std::vector<std::vector<TrainingUtterance>> per_task(num_tasks);
  for (const auto &u : corpus) {
    if (u.task >= num_tasks) throw std::invalid_argument("utterance task out of range");
    per_task[u.task].push_back(u);
  }
  for (size_t t = 0; t < num_tasks; ++t)
    if (per_task[t].empty())
      throw std::invalid_argument("task '" + task_names[t] + "' has no utterances");

  // Each task's own denominator, used to score every mode.
  std::vector<MmiTask> eval_tasks;
  for (size_t t = 0; t < num_tasks; ++t)
    eval_tasks.push_back(MakeTask(task_names[t], lexicon, per_task[t], 1.0));

  ModeReport report;
  report.mode = mode;
  report.task_names = task_names;
  TrainConfig unweighted = config;
  unweighted.alpha.reset();

  switch (mode) {
    case TrainMode::kSingle:
      for (size_t t = 0; t < num_tasks; ++t) {
        EmissionModel init(phones, num_symbols, 1);
        std::vector<std::vector<TrainingUtterance>> batch{per_task[t]};
        report.initial_task_objective.push_back(
            MmiObjective(per_task[t], eval_tasks[t], 0, init).value);
        TrainResult r = ToyTrain({eval_tasks[t]}, batch, init, unweighted);
        report.final_task_objective.push_back(
            MmiObjective(per_task[t], eval_tasks[t], 0, r.model).value);
        report.traces.push_back(std::move(r.objective_trace));
        report.models.push_back(std::move(r.model));
      }
      break;
    case TrainMode::kPooled: {
      std::vector<std::vector<TrainingUtterance>> batch(1);
      for (const auto &u : corpus) {
        batch[0].push_back(u);
        batch[0].back().task = 0;
      }
      MmiTask pooled = MakeTask("pooled", lexicon, batch[0], 1.0);
      EmissionModel init(phones, num_symbols, 1);
      for (size_t t = 0; t < num_tasks; ++t)
        report.initial_task_objective.push_back(
            MmiObjective(per_task[t], eval_tasks[t], 0, init).value);
      TrainResult r = ToyTrain({pooled}, batch, init, unweighted);
      for (size_t t = 0; t < num_tasks; ++t)
        report.final_task_objective.push_back(
            MmiObjective(per_task[t], eval_tasks[t], 0, r.model).value);
      report.traces.push_back(std::move(r.objective_trace));
      report.models.push_back(std::move(r.model));
      break;
    }
    case TrainMode::kMultitask: {
      std::vector<MmiTask> tasks = eval_tasks;
      for (auto &t : tasks) t.alpha = config.alpha.value_or(0.5);
      EmissionModel init(phones, num_symbols, num_tasks);
      for (size_t t = 0; t < num_tasks; ++t)
        report.initial_task_objective.push_back(
            MmiObjective(per_task[t], eval_tasks[t], t, init).value);
      TrainResult r = ToyTrain(tasks, per_task, init, unweighted);
      for (size_t t = 0; t < num_tasks; ++t)
        report.final_task_objective.push_back(
            MmiObjective(per_task[t], eval_tasks[t], t, r.model).value);
      report.traces.push_back(std::move(r.objective_trace));
      report.models.push_back(std::move(r.model));
      break;
    }
  }
  return report;
}

}  // namespace atcrole
