//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chemdiv/diversity.h"
#include "chemdiv/errors.h"
#include "chemdiv/fingerprint.h"
#include "chemdiv/molecule_set.h"
#include "chemdiv/parallel.h"
#include "chemdiv/scoring.h"
#include "chemdiv/seqgen/trainer.h"
#include "chemdiv/smiles.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace chemdiv {
namespace {

constexpr const char *kToolVersion = "0.1.0";
constexpr std::size_t kDefaultExternalSubsample = 3000;

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

std::string hash_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DataError("cannot open " + path);
  StableHasher h;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h.bytes(std::string_view(buf, static_cast<std::size_t>(in.gcount())));
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(h.digest()));
  return hex;
}

class Manifest {
public:
  explicit Manifest(std::string command): command_(std::move(command)) { }

  template <class T>
  void set(const std::string &key, const T &value) {
    config_[key] = value;
  }

  void input(const std::string &path) {
    if (path == "-")
      inputs_[path] = "stdin";
    else
      inputs_[path] = hash_file(path);
  }

  void seed(std::uint64_t s) { seed_ = s; }

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command_;
    j["config"] = config_;
    j["input_hashes"] = inputs_;
    j["seed"] = seed_ ? ordered_json(*seed_) : ordered_json(nullptr);
    j["tool_version"] = kToolVersion;
    return j;
  }

private:
  std::string command_;
  ordered_json config_ = ordered_json::object();
  ordered_json inputs_ = ordered_json::object();
  std::optional<std::uint64_t> seed_;
};

void write_text(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw DataError("cannot write " + path);
  out << text;
  if (!out)
    throw DataError("failed writing " + path);
}

// Writes the report and, for file outputs, the manifest next to it.
void emit_report(const std::string &out, const ordered_json &report,
                 const Manifest &manifest) {
  write_text(out, report.dump(2) + "\n");
  if (!out.empty() && out != "-")
    write_text(out + ".manifest.json", manifest.to_json().dump(2) + "\n");
}

ordered_json table_json(const TableReport &r) {
  ordered_json j;
  j["label"] = r.label;
  j["prop_valid"] = r.prop_valid;
  j["avg_score"] = r.avg_score;
  j["avg_internal_diversity"] = r.avg_internal_diversity;
  j["prop_above_threshold"] = r.prop_above_threshold;
  j["internal_diversity_above_threshold"] = r.internal_diversity_above_threshold;
  j["threshold"] = r.threshold;
  j["n_total"] = r.n_total;
  j["n_valid"] = r.n_valid;
  j["n_above"] = r.n_above;
  return j;
}

MoleculeSet load_set(const std::string &path, const std::string &label) {
  MoleculeSet set = MoleculeSet::from_file(path, label);
  if (set.empty())
    throw DataError("empty input: " + path);
  return set;
}

// validate ------------------------------------------------------------------

struct ValidateOptions {
  std::string input;
  bool per_line = false;
  std::string out;
};

int run_validate(const ValidateOptions &o) {
  auto records = read_smiles_file(o.input);
  if (records.empty())
    throw DataError("empty input");

  std::size_t valid = 0;
  ordered_json lines = ordered_json::array();
  for (const SmilesRecord &r: records) {
    ParseResult p = parse(r.smiles);
    valid += p.ok();
    if (o.per_line) {
      std::cout << r.line << '\t' << r.smiles << '\t'
                << (p.ok() ? std::string("valid") : p.error().message()) << '\n';
      ordered_json l;
      l["line"] = r.line;
      l["smiles"] = r.smiles;
      l["valid"] = p.ok();
      if (!p.ok()) {
        l["error"] = std::string(to_string(p.error().kind));
        l["position"] = p.error().position;
      }
      lines.push_back(std::move(l));
    }
  }
  const double frac = static_cast<double>(valid) / records.size();
  std::cout << "valid " << valid << "/" << records.size() << " = " << frac
            << '\n';

  if (!o.out.empty()) {
    Manifest m("validate");
    m.input(o.input);
    m.set("per_line", o.per_line);
    ordered_json rep;
    rep["n_total"] = records.size();
    rep["n_valid"] = valid;
    rep["prop_valid"] = frac;
    if (o.per_line)
      rep["lines"] = lines;
    emit_report(o.out, rep, m);
  }
  return kExitOk;
}

// divreport -----------------------------------------------------------------

struct DivreportOptions {
  std::string input;
  std::string against;
  std::string metric = "internal";
  int radius = 2;
  std::uint32_t nbits = 2048;
  bool folded = false;
  std::size_t subsample = 0;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out;
};

int run_divreport(const DivreportOptions &o) {
  FingerprintConfig cfg { o.radius, o.nbits, o.folded };
  try {
    cfg.check();
  } catch (const std::invalid_argument &e) {
    throw CLI::ValidationError("fingerprint", e.what());
  }
  const int workers = resolve_workers(o.workers);

  MoleculeSet a = load_set(o.input, fs::path(o.input).filename().string());
  MoleculeSet av = a.valid_subset();
  if (av.empty())
    throw DataError("no valid molecule in " + o.input);
  av.fingerprint_all(cfg, workers);

  Manifest m("divreport");
  m.input(o.input);
  m.set("metric", o.metric);
  m.set("radius", o.radius);
  m.set("nbits", o.nbits);
  m.set("folded", o.folded);
  m.set("subsample", o.subsample);

  DiversityEstimate est;
  std::string metric_name;
  if (o.metric == "internal" || o.metric == "variance") {
    if (!o.against.empty())
      throw CLI::ValidationError("--against", "only valid with --metric external");
    const bool sub = o.subsample > 0 && o.subsample < av.size();
    if (o.subsample > av.size())
      throw DataError("subsample " + std::to_string(o.subsample)
                      + " exceeds the " + std::to_string(av.size())
                      + " valid molecules");
    FingerprintBlock block = sub ? FingerprintBlock(av, sample_without_replacement(
                                                            av.size(), o.subsample, o.seed))
                                 : FingerprintBlock(av);
    if (o.metric == "internal") {
      metric_name = "internal_diversity";
      est = internal_diversity(block, workers);
    } else {
      metric_name = "tanimoto_variance";
      est = tanimoto_variance(block, workers);
    }
    if (sub) {
      est.subsampled = true;
      est.seed = o.seed;
    }
  } else if (o.metric == "external") {
    if (o.against.empty())
      throw CLI::ValidationError("--against", "required with --metric external");
    MoleculeSet b = load_set(o.against, fs::path(o.against).filename().string());
    MoleculeSet bv = b.valid_subset();
    if (bv.empty())
      throw DataError("no valid molecule in " + o.against);
    bv.fingerprint_all(cfg, workers);
    m.input(o.against);
    metric_name = "external_diversity";
    const std::size_t k = o.subsample > 0 ? o.subsample : kDefaultExternalSubsample;
    est = subsampled_external_diversity(av, bv, k, o.seed, workers);
  } else {
    throw CLI::ValidationError("--metric", "must be internal, external or variance");
  }
  if (est.subsampled)
    m.seed(o.seed);

  ordered_json rep;
  rep["label"] = a.label();
  rep["n_total"] = a.size();
  rep["n_valid"] = av.size();
  rep["metric"] = metric_name;
  rep["value"] = est.value;
  rep["n_used"] = est.n_used;
  rep["subsampled"] = est.subsampled;
  rep["seed"] = est.seed ? ordered_json(*est.seed) : ordered_json(nullptr);
  emit_report(o.out, rep, m);
  return kExitOk;
}

// challenge -----------------------------------------------------------------

struct ChallengeOptions {
  std::string generated;
  std::string nature;
  std::vector<std::string> scores;
  std::string score_col = "p_active";
  double threshold = kDefaultThreshold;
  int radius = 2;
  int workers = 0;
  std::string out;
};

int run_challenge(const ChallengeOptions &o) {
  if (o.scores.empty() || o.scores.size() > 2)
    throw CLI::ValidationError("--scores", "give one shared file or one per set");
  const int workers = resolve_workers(o.workers);
  FingerprintConfig cfg;
  cfg.radius = o.radius;

  MoleculeSet g = load_set(o.generated, "generated");
  MoleculeSet n = load_set(o.nature, "nature");
  const std::string &g_scores = o.scores.front();
  const std::string &n_scores = o.scores.back();

  auto attach = [&](MoleculeSet &set, const std::string &path) {
    ScoreTable t = load_scores(path, set);
    if (!t.columns.count(o.score_col))
      throw DataError("score file " + path + " has no column '" + o.score_col + "'");
    t.attach(set);
  };
  attach(g, g_scores);
  attach(n, n_scores);
  g.fingerprint_all(cfg, workers);
  n.fingerprint_all(cfg, workers);

  ChallengeVerdict v = challenge_compare(g, n, o.score_col, o.threshold, workers);

  Manifest m("challenge");
  m.input(o.generated);
  m.input(o.nature);
  for (const auto &s: o.scores)
    m.input(s);
  m.set("score_col", o.score_col);
  m.set("threshold", o.threshold);
  m.set("radius", o.radius);

  ordered_json rep;
  rep["i_g"] = v.i_g;
  rep["i_n"] = v.i_n;
  rep["ratio"] = v.ratio ? ordered_json(*v.ratio) : ordered_json(nullptr);
  rep["pass"] = v.pass;
  rep["n_g"] = v.n_g;
  rep["n_n"] = v.n_n;
  rep["threshold"] = o.threshold;
  rep["score_col"] = o.score_col;

  std::ostringstream text;
  text << (v.pass ? "PASS" : "FAIL") << ": I(G&P) = " << v.i_g << " (n = " << v.n_g
       << "), I(N&P) = " << v.i_n << " (n = " << v.n_n << ")";
  if (v.ratio)
    text << ", ratio = " << *v.ratio;
  text << '\n';

  const bool to_stdout = o.out.empty() || o.out == "-";
  emit_report(o.out, rep, m);
  (to_stdout ? std::cerr : std::cout) << text.str();
  return kExitOk;
}

// table ---------------------------------------------------------------------

struct TableOptions {
  std::vector<std::string> inputs;
  std::vector<std::string> scores;
  std::string score_col = "p_active";
  double threshold = kDefaultThreshold;
  int radius = 2;
  int workers = 0;
  std::string out;
};

int run_table(const TableOptions &o) {
  if (o.scores.size() != 1 && o.scores.size() != o.inputs.size())
    throw CLI::ValidationError("--scores", "give one shared file or one per input");
  const int workers = resolve_workers(o.workers);
  FingerprintConfig cfg;
  cfg.radius = o.radius;

  Manifest m("table");
  m.set("score_col", o.score_col);
  m.set("threshold", o.threshold);
  m.set("radius", o.radius);

  std::vector<TableReport> rows;
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    const std::string &path = o.inputs[i];
    const std::string &scores = o.scores.size() == 1 ? o.scores[0] : o.scores[i];
    MoleculeSet set = load_set(path, fs::path(path).stem().string());
    ScoreTable t = load_scores(scores, set);
    if (!t.columns.count(o.score_col))
      throw DataError("score file " + scores + " has no column '" + o.score_col + "'");
    t.attach(set);
    set.fingerprint_all(cfg, workers);
    rows.push_back(table_report(set, o.score_col, o.threshold, workers));
    m.input(path);
    m.input(scores);
  }

  std::cout << format_table(rows, o.score_col);
  if (!o.out.empty()) {
    ordered_json rep = ordered_json::array();
    for (const auto &r: rows)
      rep.push_back(table_json(r));
    emit_report(o.out, rep, m);
  }
  return kExitOk;
}

// fingerprint ---------------------------------------------------------------

struct FingerprintOptions {
  std::string input;
  int radius = 2;
  std::uint32_t nbits = 2048;
  bool folded = false;
  int workers = 0;
  std::string out;
};

int run_fingerprint(const FingerprintOptions &o) {
  FingerprintConfig cfg { o.radius, o.nbits, o.folded };
  try {
    cfg.check();
  } catch (const std::invalid_argument &e) {
    throw CLI::ValidationError("fingerprint", e.what());
  }
  MoleculeSet set = load_set(o.input, "input").valid_subset();
  set.fingerprint_all(cfg, resolve_workers(o.workers));
  std::vector<Fingerprint> fps;
  for (const auto &r: set.records())
    fps.push_back(*r.fingerprint);

  std::ofstream out(o.out, std::ios::binary);
  if (!out)
    throw DataError("cannot write " + o.out);
  write_fingerprint_cache(out, cfg, fps);
  std::cout << "wrote " << fps.size() << " fingerprints to " << o.out << '\n';
  return kExitOk;
}

// train / sample ------------------------------------------------------------

struct TrainOptions {
  std::string config;
  std::string out;
  int workers = 0;
};

std::vector<std::string> load_corpus(const seqgen::TrainingConfig &cfg,
                                     const std::string &config_path) {
  if (cfg.corpus.empty() || cfg.corpus == "builtin:toy")
    return seqgen::toy_corpus(500, derive_seed(cfg.seed, 0x70c0));
  fs::path p(cfg.corpus);
  if (p.is_relative() && !fs::exists(p))
    p = fs::path(config_path).parent_path() / p;
  std::vector<std::string> out;
  for (const auto &r: read_smiles_file(p.string()))
    out.push_back(r.smiles);
  if (out.empty())
    throw DataError("empty corpus " + p.string());
  return out;
}

ordered_json epoch_json(const seqgen::EpochReport &r) {
  ordered_json j;
  j["epoch"] = r.epoch;
  j["phase"] = r.phase;
  j["avg_reward"] = r.avg_reward;
  j["avg_discriminator"] = r.avg_discriminator;
  ordered_json table = table_json(r.table);
  for (auto &[k, v]: table.items())
    j[k] = v;
  return j;
}

int run_train(const TrainOptions &o) {
  seqgen::TrainingConfig cfg = seqgen::load_training_config(o.config);
  if (o.workers > 0)
    cfg.workers = o.workers;

  std::vector<std::string> corpus = load_corpus(cfg, o.config);
  std::shared_ptr<const TrainingSetIndex> index;
  if (cfg.mode == seqgen::SequenceMode::kSmiles)
    index = std::make_shared<TrainingSetIndex>(TrainingSetIndex::build(corpus));
  seqgen::Reward objective;
  try {
    objective = seqgen::make_objective(cfg.objective, index);
  } catch (const std::invalid_argument &e) {
    throw DataError(e.what());
  }

  fs::create_directories(o.out);
  const fs::path dir(o.out);
  std::ofstream reports(dir / "reports.jsonl", std::ios::binary);
  if (!reports)
    throw DataError("cannot write " + (dir / "reports.jsonl").string());

  auto result = seqgen::train(cfg, corpus, objective,
                              [&](const seqgen::EpochReport &r) {
                                reports << epoch_json(r).dump() << '\n';
                                reports.flush();
                                std::cerr << r.phase << " epoch " << r.epoch
                                          << ": valid " << r.table.prop_valid
                                          << ", above " << r.table.prop_above_threshold
                                          << ", div_above "
                                          << r.table.internal_diversity_above_threshold
                                          << '\n';
                              });

  std::ofstream ck(dir / "checkpoint.bin", std::ios::binary);
  seqgen::save_checkpoint(ck, result.policy,
                          result.discriminator ? &*result.discriminator : nullptr);
  ck.close();

  Manifest m("train");
  m.input(o.config);
  if (!cfg.corpus.empty() && cfg.corpus != "builtin:toy") {
    fs::path p(cfg.corpus);
    if (p.is_relative() && !fs::exists(p))
      p = fs::path(o.config).parent_path() / p;
    m.input(p.string());
  }
  for (const auto &[k, v]: cfg.to_map())
    m.set(k, v);
  m.seed(cfg.seed);
  write_text((dir / "manifest.json").string(), m.to_json().dump(2) + "\n");
  return kExitOk;
}

struct SampleOptions {
  std::string checkpoint;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::string out = "-";
};

int run_sample(const SampleOptions &o) {
  std::ifstream in(o.checkpoint, std::ios::binary);
  if (!in)
    throw DataError("cannot open checkpoint " + o.checkpoint);
  seqgen::Checkpoint ck = seqgen::load_checkpoint(in);

  SeedStream rng(o.seed);
  std::string text;
  for (std::size_t i = 0; i < o.n; ++i) {
    text += seqgen::strip_pad(seqgen::sample_sequence(ck.policy, rng));
    text += '\n';
  }
  write_text(o.out, text);
  if (o.out != "-") {
    Manifest m("sample");
    m.input(o.checkpoint);
    m.set("n", o.n);
    m.seed(o.seed);
    write_text(o.out + ".manifest.json", m.to_json().dump(2) + "\n");
  }
  return kExitOk;
}

int run(int argc, char **argv) {
  CLI::App app { "Chemical diversity metrics and desk-scale sequence generation" };
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ValidateOptions vo;
  auto *validate = app.add_subcommand("validate", "Check SMILES validity");
  validate->add_option("input", vo.input, "SMILES file ('-' for stdin)")->required();
  validate->add_flag("--per-line", vo.per_line, "Print one verdict per record");
  validate->add_option("--out", vo.out, "Write a JSON summary");

  DivreportOptions dopt;
  auto *divreport = app.add_subcommand("divreport", "Diversity report for a molecule set");
  divreport->add_option("input", dopt.input, "SMILES file")->required();
  divreport->add_option("--against", dopt.against, "Second set for --metric external");
  divreport->add_option("--metric", dopt.metric, "internal | external | variance")
      ->check(CLI::IsMember({ "internal", "external", "variance" }));
  divreport->add_option("--radius", dopt.radius, "Morgan radius");
  divreport->add_option("--nbits", dopt.nbits, "Folded width");
  divreport->add_flag("--folded", dopt.folded, "Compare folded bitsets");
  divreport->add_option("--subsample", dopt.subsample,
                        "Subsample size (external default 3000)");
  divreport->add_option("--seed", dopt.seed, "Subsampling seed");
  divreport->add_option("--workers", dopt.workers, "Worker threads");
  divreport->add_option("--out", dopt.out, "JSON report path (default stdout)");

  ChallengeOptions co;
  auto *challenge = app.add_subcommand("challenge", "Compare I(G&P) with I(N&P)");
  challenge->add_option("generated", co.generated, "Generated SMILES file")->required();
  challenge->add_option("nature", co.nature, "Natural SMILES file")->required();
  challenge->add_option("--scores", co.scores, "Score TSV (shared, or generated then nature)")
      ->required();
  challenge->add_option("--score-col", co.score_col, "Score column");
  challenge->add_option("--threshold", co.threshold, "Property threshold");
  challenge->add_option("--radius", co.radius, "Morgan radius");
  challenge->add_option("--workers", co.workers, "Worker threads");
  challenge->add_option("--out", co.out, "JSON verdict path (default stdout)");

  TableOptions to;
  auto *table = app.add_subcommand("table", "Table-style report per input set");
  table->add_option("inputs", to.inputs, "SMILES files")->required();
  table->add_option("--scores", to.scores, "Score TSV (shared, or one per input)")->required();
  table->add_option("--score-col", to.score_col, "Score column");
  table->add_option("--threshold", to.threshold, "Property threshold");
  table->add_option("--radius", to.radius, "Morgan radius");
  table->add_option("--workers", to.workers, "Worker threads");
  table->add_option("--out", to.out, "JSON report path");

  FingerprintOptions fo;
  auto *fingerprint = app.add_subcommand("fingerprint", "Write a fingerprint cache");
  fingerprint->add_option("input", fo.input, "SMILES file")->required();
  fingerprint->add_option("--radius", fo.radius, "Morgan radius");
  fingerprint->add_option("--nbits", fo.nbits, "Folded width");
  fingerprint->add_flag("--folded", fo.folded, "Store folded bitsets");
  fingerprint->add_option("--workers", fo.workers, "Worker threads");
  fingerprint->add_option("--out", fo.out, "Cache path")->required();

  TrainOptions tro;
  auto *train = app.add_subcommand("train", "MLE pretraining then RL/ORGAN training");
  train->add_option("--config", tro.config, "key=value config file")->required();
  train->add_option("--out", tro.out, "Output directory")->required();
  train->add_option("--workers", tro.workers, "Worker threads");

  SampleOptions so;
  auto *sample = app.add_subcommand("sample", "Sample sequences from a checkpoint");
  sample->add_option("--checkpoint", so.checkpoint, "Checkpoint file")->required();
  sample->add_option("--n", so.n, "Number of sequences");
  sample->add_option("--seed", so.seed, "Sampling seed");
  sample->add_option("--out", so.out, "Output path ('-' for stdout)");

  try {
    app.parse(argc, argv);
    if (*validate)
      return run_validate(vo);
    if (*divreport)
      return run_divreport(dopt);
    if (*challenge)
      return run_challenge(co);
    if (*table)
      return run_table(to);
    if (*fingerprint)
      return run_fingerprint(fo);
    if (*train)
      return run_train(tro);
    if (*sample)
      return run_sample(so);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::Error &e) {
    app.exit(e);
    return kExitUsage;
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const SmilesError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace chemdiv

int main(int argc, char **argv) {
  return chemdiv::run(argc, argv);
}
