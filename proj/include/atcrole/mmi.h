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

// Maximum mutual information objective over discrete-emission HMMs, with
// multitask weighting and exact gradients.
//
// For one task t with utterances u:
//
//   F_t = sum_u  log p(x_u | numerator(w_u)) + log p(w_u) - log p(x_u | den_t)
//
// and the multitask objective is F = sum_t alpha_t F_t. Emission scores are
// log-softmax rows of (shared logits + task bias), so the shared logits see
// every task while each task bias sees only its own.

#ifndef ATCROLE_MMI_H_
#define ATCROLE_MMI_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "atcrole/hmm_graph.h"

namespace atcrole {

class NoPath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergenceDetected : public std::runtime_error {
 public:
  explicit DivergenceDetected(size_t step)
      : std::runtime_error("objective decreased for 10 consecutive steps (step " +
                           std::to_string(step) + ")"),
        step_(step) {}
  size_t step() const { return step_; }

 private:
  size_t step_;
};

/// log(exp(a) + exp(b)) with -inf handled.
double LogAdd(double a, double b);

class EmissionModel {
 public:
  EmissionModel() = default;
  EmissionModel(size_t num_phones, size_t num_symbols, size_t num_tasks);

  size_t num_phones() const { return shared.rows; }
  size_t num_symbols() const { return shared.cols; }
  size_t num_tasks() const { return bias.size(); }

  /// [phone][symbol] log-probabilities for `task`; rows are normalized.
  Matrix LogEmissions(size_t task) const;

  Matrix shared;
  std::vector<Matrix> bias;  // one per task
};

struct EmissionGradient {
  Matrix shared;
  std::vector<Matrix> bias;
};

/// log p(symbols | graph): log-sum over every path of exactly
/// symbols.size() arcs from the start to a final state. -inf if none.
double ForwardLogProb(const HmmGraph &g, const Matrix &log_emissions,
                      std::span<const int> symbols);

struct Occupancy {
  double log_prob = 0.0;
  Matrix counts;  // [phone][symbol] expected emission counts
};

/// Forward-backward. Throws NoPath when the graph cannot produce the
/// sequence.
Occupancy ForwardBackward(const HmmGraph &g, const Matrix &log_emissions,
                          std::span<const int> symbols);

struct TrainingUtterance {
  size_t task = 0;
  std::vector<int> symbols;
  std::vector<std::string> words;
};

using LmLogProb = std::function<double(std::span<const std::string>)>;

struct MmiTask {
  std::string name;
  PronunciationLexicon lexicon;
  HmmGraph den_graph;
  double alpha = 0.5;
  LmLogProb lm_logprob;  // empty = log 1
};

/// Task whose denominator is the add-one bigram phone LM of `utterances`'
/// transcripts.
MmiTask MakeTask(std::string name, PronunciationLexicon lexicon,
                 std::span<const TrainingUtterance> utterances,
                 double alpha = 0.5);

struct TaskObjective {
  double value = 0.0;
  size_t no_path = 0;  // utterances whose numerator could not be aligned
};

/// Per-task objective F_t, scored with the emission model of `task_index`.
TaskObjective MmiObjective(std::span<const TrainingUtterance> batch,
                           const MmiTask &task, size_t task_index,
                           const EmissionModel &em);

struct MultitaskObjective {
  double total = 0.0;
  std::vector<double> per_task;
  size_t no_path = 0;
};

/// sum_t alpha_t F_t; batches[t] belongs to tasks[t].
MultitaskObjective ComputeMultitaskObjective(
    std::span<const std::vector<TrainingUtterance>> batches,
    std::span<const MmiTask> tasks, const EmissionModel &em);

/// dF_t / d(logits of task_index), unweighted. Throws NoPath.
Matrix MmiTaskGradient(std::span<const TrainingUtterance> batch,
                       const MmiTask &task, size_t task_index,
                       const EmissionModel &em);

/// Gradient of the multitask objective with respect to every parameter.
EmissionGradient MmiGradient(
    std::span<const std::vector<TrainingUtterance>> batches,
    std::span<const MmiTask> tasks, const EmissionModel &em);

struct TrainConfig {
  size_t steps = 200;
  double learning_rate = 0.1;
  // Overrides every task's alpha when set.
  std::optional<double> alpha;
};

struct TrainResult {
  EmissionModel model;
  std::vector<double> objective_trace;  // initial value, then one per step
};

/// Plain gradient ascent on all parameters over fixed batches. Throws
/// DivergenceDetected if the objective falls 10 steps in a row.
TrainResult ToyTrain(std::vector<MmiTask> tasks,
                     std::span<const std::vector<TrainingUtterance>> batches,
                     EmissionModel init, const TrainConfig &config);

enum class TrainMode { kSingle, kPooled, kMultitask };

const char *TrainModeName(TrainMode mode);

struct ModeReport {
  TrainMode mode = TrainMode::kMultitask;
  std::vector<std::string> task_names;
  // Per task: F_t on that task's data and denominator, before and after.
  std::vector<double> initial_task_objective;
  std::vector<double> final_task_objective;
  // Objective traces of every model trained (one per task for kSingle).
  std::vector<std::vector<double>> traces;
  std::vector<EmissionModel> models;
};

/// Trains the three configurations: one model per task (kSingle), one model
/// on all data as a single task (kPooled), or shared logits plus per-task
/// biases under the weighted objective (kMultitask). All models start from
/// zero logits. Per-task objectives are always evaluated against each
/// task's own denominator so the modes are comparable.
/// `corpus` task indices refer to `task_names`. Single and pooled models
/// are trained with alpha = 1; multitask uses config.alpha (default 0.5).
ModeReport TrainInMode(TrainMode mode, const PronunciationLexicon &lexicon,
                       const std::vector<std::string> &task_names,
                       std::span<const TrainingUtterance> corpus,
                       size_t num_symbols, const TrainConfig &config);

}  // namespace atcrole

#endif  // ATCROLE_MMI_H_
