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

#include "atcrole/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "atcrole/callsign.h"
#include "atcrole/classifier.h"
#include "atcrole/corpus_io.h"
#include "atcrole/eval.h"
#include "atcrole/matcher.h"
#include "atcrole/mmi.h"
#include "atcrole/mmi_verify.h"
#include "atcrole/text.h"
#include "json.hpp"

namespace atcrole {

using nlohmann::json;

namespace {

const std::string kDataDir = ATCROLE_DATA_DIR;

// Errors raised by the CLI layer itself; `name` ends up in the manifest.
class DataError : public std::runtime_error {
 public:
  DataError(std::string name, const std::string &message)
      : std::runtime_error(message), name_(std::move(name)) {}
  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

std::string ErrorName(const std::exception &e) {
  if (auto *d = dynamic_cast<const DataError *>(&e)) return d->name();
  if (dynamic_cast<const MalformedCallsign *>(&e)) return "MalformedCallsign";
  if (dynamic_cast<const LexiconError *>(&e)) return "LexiconError";
  if (dynamic_cast<const CorpusFormatError *>(&e)) return "CorpusFormatError";
  if (dynamic_cast<const EmptyReference *>(&e)) return "EmptyReference";
  if (dynamic_cast<const OovWord *>(&e)) return "OovWord";
  if (dynamic_cast<const GraphError *>(&e)) return "GraphError";
  if (dynamic_cast<const NoPath *>(&e)) return "NoPath";
  if (dynamic_cast<const DivergenceDetected *>(&e)) return "DivergenceDetected";
  if (dynamic_cast<const json::exception *>(&e)) return "JsonError";
  return "Error";
}

std::ifstream OpenInput(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw DataError("IoError", "cannot open " + path);
  return is;
}

// Writes to `path.tmp` and renames over `path` on Commit(); an uncommitted
// file is removed.
class AtomicFile {
 public:
  explicit AtomicFile(std::string path)
      : path_(std::move(path)), tmp_(path_ + ".tmp") {
    os_.open(tmp_, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!os_) throw DataError("IoError", "cannot write " + tmp_);
  }
  AtomicFile(const AtomicFile &) = delete;
  AtomicFile &operator=(const AtomicFile &) = delete;
  ~AtomicFile() {
    if (committed_) return;
    os_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }

  std::ostream &stream() { return os_; }

  void Commit() {
    os_.close();
    if (os_.fail()) throw DataError("IoError", "failed writing " + tmp_);
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_;
  std::string tmp_;
  std::ofstream os_;
  bool committed_ = false;
};

struct Manifest {
  json j;

  explicit Manifest(const std::string &subcommand) {
    j["subcommand"] = subcommand;
    j["inputs"] = json::object();
    j["outputs"] = json::object();
    j["config"] = json::object();
    j["counts"] = json::object();
    j["metrics"] = json::object();
    j["status"] = "ok";
  }

  void Fail(const std::string &name, const std::string &message) {
    j["status"] = "error";
    j["error"] = {{"name", name}, {"message", message}};
  }

  std::string Dump() {
    j["config_hash"] = Fnv1aHex(j["config"].dump() + j["inputs"].dump());
    return j.dump();
  }
};

struct CommonOptions {
  std::string telephony = kDataDir + "/telephony.tsv";
  std::string lexicon;
  size_t threads = 0;
  uint64_t seed = 1;
  bool pretty = false;
};

// expand --------------------------------------------------------------------

struct ExpandArgs {
  std::vector<std::string> callsigns;
  bool icao_digits = false;
};

void RunExpand(const ExpandArgs &a, const CommonOptions &c, Manifest &m,
               std::ostream &err) {
  m.j["inputs"]["telephony"] = c.telephony;
  m.j["config"]["callsigns"] = a.callsigns;
  m.j["config"]["digit_style"] = a.icao_digits ? "icao" : "plain";
  TelephonyLexicon lex = TelephonyLexicon::ReadFile(c.telephony);
  ExpandOptions opts;
  opts.digit_style = a.icao_digits ? DigitStyle::kIcao : DigitStyle::kPlain;

  json variants = json::object();
  size_t total = 0;
  for (const auto &raw : a.callsigns) {
    Callsign cs = ParseCallsign(raw);
    json list = json::array();
    for (const auto &v : ExpandCallsign(cs, lex, opts)) {
      list.push_back({{"kind", VariantKindName(v.kind)}, {"text", v.Text()}});
      if (c.pretty)
        err << raw << "\t" << VariantKindName(v.kind) << "\t" << v.Text() << "\n";
      ++total;
    }
    variants[raw] = std::move(list);
  }
  m.j["variants"] = std::move(variants);
  m.j["counts"]["callsigns"] = a.callsigns.size();
  m.j["counts"]["variants"] = total;
}

// filter --------------------------------------------------------------------

struct FilterArgs {
  std::string corpus;
  std::string out;
  std::string stats;
};

void RunFilter(const FilterArgs &a, const CommonOptions &c, Manifest &m,
               std::ostream &err) {
  m.j["inputs"]["corpus"] = a.corpus;
  m.j["inputs"]["telephony"] = c.telephony;
  m.j["outputs"]["kept"] = a.out;
  if (!a.stats.empty()) m.j["outputs"]["stats"] = a.stats;
  TelephonyLexicon lex = TelephonyLexicon::ReadFile(c.telephony);
  std::ifstream corpus = OpenInput(a.corpus);

  AtomicFile out(a.out);
  FilterOptions opts;
  opts.threads = c.threads;
  FilterStats stats = FilterCorpus(
      corpus, lex,
      [&out](const Utterance &utt, const std::vector<CallsignMatch> &matches) {
        json j = UtteranceToJson(utt);
        j["matches"] = json::array();
        for (const auto &mt : matches) j["matches"].push_back(MatchToJson(mt));
        out.stream() << j.dump() << "\n";
      },
      opts);
  out.Commit();
  if (!a.stats.empty()) {
    AtomicFile s(a.stats);
    s.stream() << stats.ToJson().dump() << "\n";
    s.Commit();
  }
  m.j["counts"] = stats.ToJson();
  if (c.pretty)
    err << "kept " << stats.kept << " of " << stats.total << " utterances ("
        << stats.tokens_kept << " of " << stats.tokens_in << " tokens)\n";
}

// classify ------------------------------------------------------------------

struct ClassifyArgs {
  std::string corpus;
  std::string rule_order = "keywords-first";
  std::string out_prefix;
};

void RunClassify(const ClassifyArgs &a, const CommonOptions &c, Manifest &m,
                 std::ostream &err) {
  std::string lexicon_path =
      c.lexicon.empty() ? kDataDir + "/role_lexicon.txt" : c.lexicon;
  m.j["inputs"]["corpus"] = a.corpus;
  m.j["inputs"]["lexicon"] = lexicon_path;
  m.j["inputs"]["telephony"] = c.telephony;
  m.j["config"]["rule_order"] = a.rule_order;
  const std::string atco_path = a.out_prefix + ".atco.jsonl";
  const std::string pilot_path = a.out_prefix + ".pilot.jsonl";
  const std::string trace_path = a.out_prefix + ".traces.jsonl";
  m.j["outputs"] = {{"atco", atco_path}, {"pilot", pilot_path}, {"traces", trace_path}};

  RoleLexicon lex = RoleLexicon::ReadFile(lexicon_path);
  TelephonyLexicon telephony = TelephonyLexicon::ReadFile(c.telephony);
  std::ifstream corpus = OpenInput(a.corpus);

  SplitOptions opts;
  opts.threads = c.threads;
  opts.classifier.rule_order = a.rule_order == "callsign-first"
                                   ? RuleOrder::kCallsignFirst
                                   : RuleOrder::kKeywordsFirst;
  AtomicFile atco(atco_path), pilot(pilot_path), traces(trace_path);
  ConfusionMatrix cm;
  bool any_gold = false;
  std::map<std::string, uint64_t> rules;
  SplitSinks sinks;
  sinks.atco = [&atco](const Utterance &u) {
    atco.stream() << UtteranceToJson(u).dump() << "\n";
  };
  sinks.pilot = [&pilot](const Utterance &u) {
    pilot.stream() << UtteranceToJson(u).dump() << "\n";
  };
  sinks.trace = [&](const Utterance &u, const Classification &cl) {
    traces.stream() << TraceRecord(u, cl).dump() << "\n";
    ++rules[RuleFiredName(cl.trace.fired_rule)];
    if (u.gold_role) {
      any_gold = true;
      cm.Add(cl.role, *u.gold_role);
    }
  };
  SplitCounts counts = SplitCorpus(corpus, lex, telephony, sinks, opts);
  atco.Commit();
  pilot.Commit();
  traces.Commit();

  m.j["counts"] = counts.ToJson();
  m.j["counts"]["rules"] = rules;
  if (any_gold) {
    Rates r = ComputeRates(cm);
    m.j["metrics"]["confusion"] = ConfusionToJson(cm, r);
    if (c.pretty) err << ConfusionTable(cm, r);
  }
  if (c.pretty)
    err << "atco " << counts.atco << "  pilot " << counts.pilot << "  total "
        << counts.total << "\n";
}

// evaluate ------------------------------------------------------------------

struct EvaluateArgs {
  std::string gold;
  std::string pred;
};

void RunEvaluate(const EvaluateArgs &a, const CommonOptions &, Manifest &m,
                 std::ostream &err) {
  m.j["inputs"]["gold"] = a.gold;
  m.j["inputs"]["pred"] = a.pred;
  std::map<std::string, Role> predicted;
  {
    std::ifstream is = OpenInput(a.pred);
    ForEachUtteranceChunk(is, 4096, [&](std::vector<Utterance> &chunk) {
      for (const auto &u : chunk) {
        if (!u.gold_role)
          throw DataError("CorpusFormatError",
                          "prediction '" + u.id + "' has no role");
        if (!predicted.emplace(u.id, *u.gold_role).second)
          throw DataError("DuplicateId", "duplicate prediction id '" + u.id + "'");
      }
    });
  }
  ConfusionMatrix cm;
  uint64_t unlabeled = 0;
  std::ifstream is = OpenInput(a.gold);
  ForEachUtteranceChunk(is, 4096, [&](std::vector<Utterance> &chunk) {
    for (const auto &u : chunk) {
      if (!u.gold_role) {
        ++unlabeled;
        continue;
      }
      auto it = predicted.find(u.id);
      if (it == predicted.end())
        throw DataError("MissingPrediction", "no prediction for '" + u.id + "'");
      cm.Add(it->second, *u.gold_role);
    }
  });
  Rates r = ComputeRates(cm);
  m.j["metrics"]["confusion"] = ConfusionToJson(cm, r);
  m.j["counts"] = {{"scored", cm.total()},
                   {"unlabeled", unlabeled},
                   {"predictions", predicted.size()}};
  err << ConfusionTable(cm, r);
}

// wer -----------------------------------------------------------------------

struct WerArgs {
  std::string ref;
  std::string hyp;
};

// Lines are either corpus JSON ({"id","text"}) or "id word word ...".
std::vector<std::pair<std::string, std::vector<std::string>>> ReadTranscripts(
    const std::string &path) {
  std::ifstream is = OpenInput(path);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view sv = Trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '{') {
      Utterance u;
      try {
        u = ParseUtteranceLine(sv);
      } catch (const CorpusFormatError &e) {
        throw CorpusFormatError(path + ":" + std::to_string(line_no) + ": " +
                                e.what());
      }
      out.emplace_back(u.id, u.tokens);
    } else {
      size_t split = 0;
      while (split < sv.size() && sv[split] != ' ' && sv[split] != '\t') ++split;
      out.emplace_back(std::string(sv.substr(0, split)),
                       TokenizeTranscript(sv.substr(split)));
    }
  }
  return out;
}

void RunWer(const WerArgs &a, const CommonOptions &, Manifest &m,
            std::ostream &err) {
  m.j["inputs"]["ref"] = a.ref;
  m.j["inputs"]["hyp"] = a.hyp;
  auto refs = ReadTranscripts(a.ref);
  std::map<std::string, std::vector<std::string>> hyps;
  for (auto &[id, words] : ReadTranscripts(a.hyp))
    if (!hyps.emplace(id, std::move(words)).second)
      throw DataError("DuplicateId", "duplicate hypothesis id '" + id + "'");

  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
  for (auto &[id, words] : refs) {
    auto it = hyps.find(id);
    if (it == hyps.end())
      throw DataError("MissingHypothesis", "no hypothesis for '" + id + "'");
    pairs.emplace_back(std::move(words), it->second);
  }
  WerBreakdown b;
  for (size_t i = 0; i < pairs.size(); ++i) {
    try {
      b += Wer(pairs[i].first, pairs[i].second);
    } catch (const EmptyReference &) {
      throw DataError("EmptyReference", "empty reference for '" +
                                            refs[i].first +
                                            "' with non-empty hypothesis");
    }
  }
  m.j["metrics"]["wer"] = b.ToJson();
  m.j["counts"]["utterances"] = pairs.size();
  char line[160];
  std::snprintf(line, sizeof(line),
                "%%WER %.2f [ %llu / %llu, %llu ins, %llu del, %llu sub ]\n",
                100.0 * b.wer(), static_cast<unsigned long long>(b.total_edits()),
                static_cast<unsigned long long>(b.ref_words),
                static_cast<unsigned long long>(b.insertions),
                static_cast<unsigned long long>(b.deletions),
                static_cast<unsigned long long>(b.substitutions));
  err << line;
}

// mmi-check -----------------------------------------------------------------

struct MmiCheckArgs {
  size_t instances = 100;
};

bool RunMmiCheck(const MmiCheckArgs &a, const CommonOptions &c, Manifest &m,
                 std::ostream &err) {
  VerifyConfig config;
  config.seed = c.seed;
  config.instances = a.instances;
  m.j["config"] = {{"seed", config.seed},
                   {"instances", config.instances},
                   {"forward_tolerance", config.forward_tolerance},
                   {"gradient_tolerance", config.gradient_tolerance},
                   {"fd_step", config.fd_step},
                   {"zero_tolerance", config.zero_tolerance}};
  VerifyReport report = RunMmiVerification(config);
  m.j["metrics"]["checks"] = report.ToJson();
  size_t cases = 0;
  for (const auto &ch : report.checks) {
    cases += ch.cases;
    if (c.pretty || !ch.passed)
      err << (ch.passed ? "PASS " : "FAIL ") << ch.name << " cases=" << ch.cases
          << " worst=" << ch.worst << (ch.detail.empty() ? "" : " " + ch.detail)
          << "\n";
  }
  m.j["counts"]["cases"] = cases;
  return report.passed();
}

// mmi-train -----------------------------------------------------------------

struct MmiTrainArgs {
  std::string corpus;
  std::string mode = "multitask";
  size_t steps = 200;
  double learning_rate = 0.05;
  double alpha = 0.5;
  size_t num_symbols = 0;
  std::string model_out;
};

json MatrixToJson(const Matrix &mat) {
  json rows = json::array();
  for (size_t r = 0; r < mat.rows; ++r) {
    json row = json::array();
    for (size_t col = 0; col < mat.cols; ++col) row.push_back(mat(r, col));
    rows.push_back(std::move(row));
  }
  return rows;
}

void RunMmiTrain(const MmiTrainArgs &a, const CommonOptions &c, Manifest &m,
                 std::ostream &err) {
  m.j["inputs"]["corpus"] = a.corpus;
  m.j["inputs"]["lexicon"] = c.lexicon;
  m.j["config"] = {{"mode", a.mode},
                   {"steps", a.steps},
                   {"learning_rate", a.learning_rate},
                   {"alpha", a.alpha}};
  if (!a.model_out.empty()) m.j["outputs"]["model"] = a.model_out;

  PronunciationLexicon lexicon = PronunciationLexicon::ReadFile(c.lexicon);
  std::vector<std::string> task_names;
  std::vector<TrainingUtterance> corpus;
  int max_symbol = -1;
  std::ifstream is = OpenInput(a.corpus);
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto where = [&] { return a.corpus + ":" + std::to_string(line_no) + ": "; };
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("task") ||
        !j.contains("symbols") || !j.contains("words") ||
        !j["symbols"].is_array() || !j["words"].is_array())
      throw CorpusFormatError(where() + "expected {task, symbols, words}");
    std::string task = j["task"].is_string() ? j["task"].get<std::string>()
                                             : j["task"].dump();
    auto it = std::find(task_names.begin(), task_names.end(), task);
    TrainingUtterance u;
    u.task = static_cast<size_t>(it - task_names.begin());
    if (it == task_names.end()) task_names.push_back(task);
    for (const auto &s : j["symbols"]) {
      if (!s.is_number_integer() || s.get<int>() < 0)
        throw CorpusFormatError(where() + "symbols must be non-negative integers");
      u.symbols.push_back(s.get<int>());
      max_symbol = std::max(max_symbol, u.symbols.back());
    }
    for (const auto &w : j["words"]) {
      if (!w.is_string()) throw CorpusFormatError(where() + "words must be strings");
      u.words.push_back(w.get<std::string>());
      if (!lexicon.Contains(u.words.back())) throw OovWord(u.words.back());
    }
    if (u.symbols.empty()) throw CorpusFormatError(where() + "empty symbol sequence");
    corpus.push_back(std::move(u));
  }
  if (corpus.empty()) throw DataError("EmptyCorpus", "no training utterances");
  size_t num_symbols = std::max(a.num_symbols, static_cast<size_t>(max_symbol + 1));

  TrainMode mode = a.mode == "single"   ? TrainMode::kSingle
                   : a.mode == "pooled" ? TrainMode::kPooled
                                        : TrainMode::kMultitask;
  TrainConfig config;
  config.steps = a.steps;
  config.learning_rate = a.learning_rate;
  config.alpha = a.alpha;
  ModeReport report = TrainInMode(mode, lexicon, task_names, corpus, num_symbols, config);

  json tasks = json::array();
  for (size_t t = 0; t < task_names.size(); ++t) {
    tasks.push_back({{"task", task_names[t]},
                     {"initial_objective", report.initial_task_objective[t]},
                     {"final_objective", report.final_task_objective[t]}});
    if (c.pretty)
      err << task_names[t] << "\tF_t " << report.initial_task_objective[t]
          << " -> " << report.final_task_objective[t] << "\n";
  }
  json traces = json::array();
  for (const auto &tr : report.traces) traces.push_back(tr);
  m.j["metrics"]["tasks"] = std::move(tasks);
  m.j["metrics"]["objective_traces"] = std::move(traces);
  m.j["counts"] = {{"utterances", corpus.size()},
                   {"tasks", task_names.size()},
                   {"phones", lexicon.num_phones()},
                   {"symbols", num_symbols}};

  if (!a.model_out.empty()) {
    json models = json::array();
    for (const auto &em : report.models) {
      json bias = json::array();
      for (const auto &b : em.bias) bias.push_back(MatrixToJson(b));
      models.push_back({{"shared", MatrixToJson(em.shared)}, {"bias", bias}});
    }
    AtomicFile out(a.model_out);
    out.stream() << json{{"mode", TrainModeName(mode)},
                         {"phones", lexicon.phones()},
                         {"tasks", task_names},
                         {"num_symbols", num_symbols},
                         {"models", models}}
                        .dump()
                 << "\n";
    out.Commit();
  }
}

}  // namespace

std::string Fnv1aHex(const std::string &data) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Air-traffic transcript toolkit: callsign expansion, corpus "
               "filtering, speaker role classification, scoring and MMI checks",
               "atcrole"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&common](CLI::App *sub) {
    sub->add_flag("--pretty", common.pretty, "Human-readable summary on stderr");
    sub->add_option("--threads", common.threads, "Worker threads (0 = auto)");
  };

  ExpandArgs expand;
  auto *expand_cmd = app.add_subcommand("expand", "Spoken variants of ICAO callsigns");
  expand_cmd->add_option("--callsign", expand.callsigns, "ICAO callsign, e.g. TVS84J")
      ->required();
  expand_cmd->add_option("--telephony", common.telephony, "Telephony lexicon TSV");
  expand_cmd->add_flag("--icao-digits", expand.icao_digits,
                       "Use tree/fife/niner digit forms");
  add_common(expand_cmd);

  FilterArgs filter;
  auto *filter_cmd =
      app.add_subcommand("filter", "Keep utterances that mention a context callsign");
  filter_cmd->add_option("--corpus", filter.corpus, "Corpus JSONL")->required();
  filter_cmd->add_option("--telephony", common.telephony, "Telephony lexicon TSV");
  filter_cmd->add_option("--out", filter.out, "Kept utterances JSONL")->required();
  filter_cmd->add_option("--stats", filter.stats, "Write stats JSON here too");
  add_common(filter_cmd);

  ClassifyArgs classify;
  auto *classify_cmd = app.add_subcommand("classify", "Split a corpus into ATCO and pilot");
  classify_cmd->add_option("--corpus", classify.corpus, "Corpus JSONL")->required();
  classify_cmd->add_option("--lexicon", common.lexicon, "Role lexicon");
  classify_cmd->add_option("--telephony", common.telephony, "Telephony lexicon TSV");
  classify_cmd->add_option("--rule-order", classify.rule_order, "Rule precedence")
      ->check(CLI::IsMember({"keywords-first", "callsign-first"}));
  classify_cmd->add_option("--out-prefix", classify.out_prefix, "Output prefix")
      ->required();
  add_common(classify_cmd);

  EvaluateArgs evaluate;
  auto *evaluate_cmd = app.add_subcommand("evaluate", "Confusion matrix and TPR/TNR");
  evaluate_cmd->add_option("--gold", evaluate.gold, "Gold JSONL (id, role)")->required();
  evaluate_cmd->add_option("--pred", evaluate.pred, "Predictions JSONL (id, role)")
      ->required();
  add_common(evaluate_cmd);

  WerArgs wer;
  auto *wer_cmd = app.add_subcommand("wer", "Corpus word error rate");
  wer_cmd->add_option("--ref", wer.ref, "Reference transcripts")->required();
  wer_cmd->add_option("--hyp", wer.hyp, "Hypothesis transcripts")->required();
  add_common(wer_cmd);

  MmiCheckArgs mmi_check;
  auto *check_cmd = app.add_subcommand("mmi-check", "Numerical verification of the MMI engine");
  check_cmd->add_option("--seed", common.seed, "Random seed");
  check_cmd->add_option("--instances", mmi_check.instances, "Random instances per check");
  add_common(check_cmd);

  MmiTrainArgs mmi_train;
  auto *train_cmd = app.add_subcommand("mmi-train", "Toy MMI training");
  train_cmd->add_option("--corpus", mmi_train.corpus, "JSONL {task, symbols, words}")
      ->required();
  train_cmd->add_option("--lexicon", common.lexicon, "Pronunciation TSV")->required();
  train_cmd->add_option("--mode", mmi_train.mode, "Training configuration")
      ->check(CLI::IsMember({"single", "pooled", "multitask"}));
  train_cmd->add_option("--steps", mmi_train.steps, "Gradient steps");
  train_cmd->add_option("--lr", mmi_train.learning_rate, "Learning rate");
  train_cmd->add_option("--alpha", mmi_train.alpha, "Task weight (multitask)");
  train_cmd->add_option("--num-symbols", mmi_train.num_symbols,
                        "Observation alphabet size (default: max symbol + 1)");
  train_cmd->add_option("--model-out", mmi_train.model_out, "Write trained model JSON");
  add_common(train_cmd);

  std::vector<const char *> argv;
  argv.push_back("atcrole");
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << "\n";
    if (auto subs = app.get_subcommands(); !subs.empty())
      err << subs.front()->help();
    else
      err << app.help();
    return 2;
  }

  CLI::App *sub = app.get_subcommands().front();
  Manifest manifest(sub->get_name());
  bool ok = true;
  try {
    if (sub == expand_cmd) {
      RunExpand(expand, common, manifest, err);
    } else if (sub == filter_cmd) {
      RunFilter(filter, common, manifest, err);
    } else if (sub == classify_cmd) {
      RunClassify(classify, common, manifest, err);
    } else if (sub == evaluate_cmd) {
      RunEvaluate(evaluate, common, manifest, err);
    } else if (sub == wer_cmd) {
      RunWer(wer, common, manifest, err);
    } else if (sub == check_cmd) {
      if (!RunMmiCheck(mmi_check, common, manifest, err)) {
        manifest.Fail("VerificationFailed", "one or more numerical checks failed");
        ok = false;
      }
    } else if (sub == train_cmd) {
      RunMmiTrain(mmi_train, common, manifest, err);
    }
  } catch (const std::exception &e) {
    manifest.Fail(ErrorName(e), e.what());
    err << "error: " << e.what() << "\n";
    ok = false;
  }
  out << manifest.Dump() << "\n";
  return ok ? 0 : 1;
}

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return RunCli(args, out, err);
}

}  // namespace atcrole
