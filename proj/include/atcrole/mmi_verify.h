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

// Independent numerical checks for the MMI engine: brute-force path
// enumeration for graph likelihoods and central finite differences for
// gradients, over randomly generated small instances.

#ifndef ATCROLE_MMI_VERIFY_H_
#define ATCROLE_MMI_VERIFY_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "atcrole/mmi.h"
#include "json.hpp"

namespace atcrole {

/// log-sum over explicitly enumerated arc sequences. Exponential in the
/// number of frames; meant for a handful of states and frames.
double EnumeratePathsLogProb(const HmmGraph &g, const Matrix &log_emissions,
                             std::span<const int> symbols);

/// Random graph with 1..max_states states, random arcs, weights and finals.
HmmGraph RandomGraph(std::mt19937_64 &rng, int max_states, int num_phones);

/// Model with logits drawn uniformly from [-scale, scale].
EmissionModel RandomEmissionModel(std::mt19937_64 &rng, size_t phones,
                                  size_t symbols, size_t tasks,
                                  double scale = 1.5);

/// A small multitask MMI problem: random lexicon over <= 3 phones, <= 4
/// symbols, utterances of <= 5 frames, 1 or 2 tasks.
struct MmiInstance {
  std::vector<MmiTask> tasks;
  std::vector<std::vector<TrainingUtterance>> batches;
  EmissionModel model;
};

MmiInstance RandomMmiInstance(std::mt19937_64 &rng);

/// |a - b| / max(|a|, |b|, floor).
double RelativeError(double a, double b, double floor = 1e-3);

struct GradientCheck {
  double max_rel_error = 0.0;
  size_t parameters = 0;
};

/// Compares MmiGradient with central differences of the multitask
/// objective, for every shared and every bias parameter.
GradientCheck CheckGradient(const MmiInstance &inst, double step = 1e-5);

struct VerifyConfig {
  uint64_t seed = 1;
  size_t instances = 100;
  double forward_tolerance = 1e-10;
  double gradient_tolerance = 1e-5;
  double fd_step = 1e-5;
  double zero_tolerance = 1e-10;
};

struct VerifyCheck {
  std::string name;
  bool passed = true;
  size_t cases = 0;
  double worst = 0.0;  // largest observed error for this check
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
  nlohmann::json ToJson() const;
};

/// Two tasks sharing the lexicon {a, b, ab, ba} over phones a and b, with
/// disjoint emission statistics: in task 0 phone a emits symbol 0 and b
/// emits 1, in task 1 they emit 2 and 3. Each phone dwells 1-3 frames and
/// 10% of frames are replaced by a random symbol.
struct SyntheticCorpus {
  PronunciationLexicon lexicon;
  std::vector<std::string> task_names;
  std::vector<TrainingUtterance> utterances;
  size_t num_symbols = 0;
};

SyntheticCorpus SyntheticTwoTaskCorpus(uint64_t seed,
                                       size_t utterances_per_task = 20);

/// The full numerical suite: forward vs. enumeration, gradient vs. finite
/// differences, numerator == denominator cancellation, and single-task
/// reduction of the multitask objective.
VerifyReport RunMmiVerification(const VerifyConfig &config);

VerifyCheck CheckForwardAgainstEnumeration(const VerifyConfig &config);
VerifyCheck CheckGradientsAgainstFiniteDifferences(const VerifyConfig &config);
VerifyCheck CheckNumeratorEqualsDenominator(const VerifyConfig &config);
VerifyCheck CheckSingleTaskReduction(const VerifyConfig &config);

}  // namespace atcrole

#endif  // ATCROLE_MMI_VERIFY_H_
