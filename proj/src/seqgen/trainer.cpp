//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemdiv/diversity.h"
#include "chemdiv/errors.h"
#include "chemdiv/parallel.h"
#include "chemdiv/seqgen/trainer.h"

namespace chemdiv::seqgen {

void TrainingConfig::check() const {
  auto require = [](bool ok, const char *what) {
    if (!ok)
      throw std::invalid_argument(what);
  };
  require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
  require(rollouts >= 1, "rollouts must be >= 1");
  require(learning_rate > 0.0, "learning_rate must be > 0");
  require(epochs >= 0, "epochs must be >= 0");
  require(batch >= 1, "batch must be >= 1");
  require(order >= 0, "order must be >= 0");
  require(ngram >= 1, "ngram must be >= 1");
  require(length >= 1, "T must be >= 1");
  require(pretrain_epochs >= 0, "pretrain_epochs must be >= 0");
  require(pretrain_step > 0.0, "pretrain_step must be > 0");
  require(steps_per_epoch >= 1, "steps_per_epoch must be >= 1");
  require(disc_epochs >= 0, "disc_epochs must be >= 0");
  require(disc_step > 0.0, "disc_step must be > 0");
  require(disc_samples >= 1, "disc_samples must be >= 1");
  require(eval_samples >= 1, "eval_samples must be >= 1");
  require(penalty_alpha >= 0.0, "penalty_alpha must be >= 0");
  require(radius >= 0, "radius must be >= 0");
}

namespace {
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::map<std::string, std::string> TrainingConfig::to_map() const {
  return {
    { "lambda", format_double(lambda) },
    { "rollouts", std::to_string(rollouts) },
    { "learning_rate", format_double(learning_rate) },
    { "epochs", std::to_string(epochs) },
    { "batch", std::to_string(batch) },
    { "seed", std::to_string(seed) },
    { "objective", objective },
    { "order", std::to_string(order) },
    { "ngram", std::to_string(ngram) },
    { "T", std::to_string(length) },
    { "mode", mode == SequenceMode::kToy ? "toy" : "smiles" },
    { "alphabet", alphabet },
    { "corpus", corpus },
    { "pretrain_epochs", std::to_string(pretrain_epochs) },
    { "pretrain_step", format_double(pretrain_step) },
    { "steps_per_epoch", std::to_string(steps_per_epoch) },
    { "disc_epochs", std::to_string(disc_epochs) },
    { "disc_step", format_double(disc_step) },
    { "disc_samples", std::to_string(disc_samples) },
    { "eval_samples", std::to_string(eval_samples) },
    { "threshold", format_double(threshold) },
    { "penalty_alpha", format_double(penalty_alpha) },
    { "workers", std::to_string(workers) },
    { "radius", std::to_string(radius) },
  };
}

namespace {
template <class T>
T parse_value(const std::string &key, const std::string &value,
              std::size_t lineno) {
  T out {};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw DataError("config line " + std::to_string(lineno) + ": bad value '"
                    + value + "' for " + key);
  return out;
}

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

TrainingConfig parse_training_config(std::istream &in) {
  TrainingConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("config line " + std::to_string(lineno)
                      + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (key == "lambda")
      cfg.lambda = parse_value<double>(key, value, lineno);
    else if (key == "rollouts")
      cfg.rollouts = parse_value<int>(key, value, lineno);
    else if (key == "learning_rate")
      cfg.learning_rate = parse_value<double>(key, value, lineno);
    else if (key == "epochs")
      cfg.epochs = parse_value<int>(key, value, lineno);
    else if (key == "batch")
      cfg.batch = parse_value<int>(key, value, lineno);
    else if (key == "seed")
      cfg.seed = parse_value<std::uint64_t>(key, value, lineno);
    else if (key == "objective")
      cfg.objective = value;
    else if (key == "order")
      cfg.order = parse_value<int>(key, value, lineno);
    else if (key == "ngram")
      cfg.ngram = parse_value<int>(key, value, lineno);
    else if (key == "T" || key == "length")
      cfg.length = parse_value<int>(key, value, lineno);
    else if (key == "mode") {
      if (value == "toy")
        cfg.mode = SequenceMode::kToy;
      else if (value == "smiles")
        cfg.mode = SequenceMode::kSmiles;
      else
        throw DataError("config line " + std::to_string(lineno)
                        + ": mode must be toy or smiles");
    } else if (key == "alphabet")
      cfg.alphabet = value;
    else if (key == "corpus")
      cfg.corpus = value;
    else if (key == "pretrain_epochs")
      cfg.pretrain_epochs = parse_value<int>(key, value, lineno);
    else if (key == "pretrain_step")
      cfg.pretrain_step = parse_value<double>(key, value, lineno);
    else if (key == "steps_per_epoch")
      cfg.steps_per_epoch = parse_value<int>(key, value, lineno);
    else if (key == "disc_epochs")
      cfg.disc_epochs = parse_value<int>(key, value, lineno);
    else if (key == "disc_step")
      cfg.disc_step = parse_value<double>(key, value, lineno);
    else if (key == "disc_samples")
      cfg.disc_samples = parse_value<int>(key, value, lineno);
    else if (key == "eval_samples")
      cfg.eval_samples = parse_value<int>(key, value, lineno);
    else if (key == "threshold")
      cfg.threshold = parse_value<double>(key, value, lineno);
    else if (key == "penalty_alpha")
      cfg.penalty_alpha = parse_value<double>(key, value, lineno);
    else if (key == "workers")
      cfg.workers = parse_value<int>(key, value, lineno);
    else if (key == "radius")
      cfg.radius = parse_value<int>(key, value, lineno);
    else
      throw DataError("config line " + std::to_string(lineno)
                      + ": unknown key '" + key + "'");
  }

  try {
    cfg.check();
  } catch (const std::invalid_argument &e) {
    throw DataError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

TrainingConfig load_training_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open config " + path);
  return parse_training_config(in);
}

std::vector<std::string> toy_corpus(std::size_t count, std::uint64_t seed,
                                    int min_len, int max_len) {
  SeedStream rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  const std::string letters = "ABCD";
  for (std::size_t i = 0; i < count; ++i) {
    int len = min_len + static_cast<int>(rng.below(max_len - min_len + 1));
    std::string s;
    for (int k = 0; k < len; ++k)
      s += letters[rng.below(letters.size())];
    out.push_back(std::move(s));
  }
  return out;
}

ReinforceResult reinforce_step(const Policy &policy, const TrainingConfig &cfg,
                               const Reward &reward, std::uint64_t step_seed) {
  ReinforceResult res;
  SeedStream rng(derive_seed(step_seed, 0));
  res.batch.reserve(cfg.batch);
  for (int b = 0; b < cfg.batch; ++b)
    res.batch.push_back(sample_sequence(policy, rng));

  double reward_sum = 0.0, valid = 0.0;
  for (const Sequence &s: res.batch) {
    reward_sum += reward(s);
    valid += sequence_valid(cfg.mode, s) ? 1.0 : 0.0;
  }
  res.stats.avg_reward = reward_sum / cfg.batch;
  res.stats.avg_valid = valid / cfg.batch;

  LogitGradient grad = reinforce_gradient(policy, res.batch, reward,
                                          cfg.rollouts, derive_seed(step_seed, 1),
                                          cfg.workers);
  res.policy = policy;
  res.policy.apply(grad, cfg.learning_rate);
  return res;
}

TableReport evaluate_policy(const Policy &policy, const TrainingConfig &cfg,
                            const Reward &objective, std::size_t samples,
                            std::uint64_t seed, std::string label) {
  SeedStream rng(seed);
  std::vector<Sequence> seqs;
  seqs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i)
    seqs.push_back(sample_sequence(policy, rng));

  FingerprintConfig fp_cfg;
  fp_cfg.radius = cfg.radius;
  std::vector<std::optional<Fingerprint>> fps(samples);
  parallel_for(
      samples, cfg.workers,
      [&](std::size_t i) { fps[i] = sequence_fingerprint(cfg.mode, seqs[i], fp_cfg); },
      16);

  std::vector<RecordSummary> summaries(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    summaries[i].valid = fps[i].has_value();
    if (summaries[i].valid)
      summaries[i].score = objective(seqs[i]);
  }

  auto diversity = [&](std::span<const std::size_t> indices) {
    std::vector<const Fingerprint *> rows;
    rows.reserve(indices.size());
    for (std::size_t i: indices)
      rows.push_back(&*fps[i]);
    return internal_diversity(FingerprintBlock(std::span<const Fingerprint *const>(rows)),
                              cfg.workers)
        .value;
  };
  return aggregate_table_report(std::move(label), summaries, cfg.threshold,
                                diversity);
}

TrainResult train(const TrainingConfig &cfg, std::span<const std::string> corpus,
                  const Reward &objective, const EpochCallback &on_epoch) {
  cfg.check();

  std::vector<std::string> usable;
  for (const std::string &s: corpus)
    if (!s.empty() && s.size() <= static_cast<std::size_t>(cfg.length))
      usable.push_back(s);
  if (usable.empty())
    throw DataError("no corpus sequence fits in length "
                    + std::to_string(cfg.length));

  Alphabet alphabet = cfg.alphabet.empty() ? Alphabet::from_corpus(usable)
                                           : Alphabet(cfg.alphabet);
  Policy policy(alphabet, cfg.order, cfg.length);
  std::vector<Sequence> real;
  real.reserve(usable.size());
  for (const std::string &s: usable)
    real.push_back(to_sequence(policy, s));

  TrainResult result;
  result.pretrained = mle_pretrain(policy, real, cfg.pretrain_epochs,
                                   cfg.pretrain_step);
  result.policy = result.pretrained;

  auto emit = [&](EpochReport rep) {
    if (on_epoch)
      on_epoch(rep);
    result.reports.push_back(std::move(rep));
  };

  EpochReport base;
  base.epoch = 0;
  base.phase = "pretrain";
  base.table = evaluate_policy(result.policy, cfg, objective, cfg.eval_samples,
                               derive_seed(cfg.seed, 0x5eed0000), "epoch 0");
  emit(base);

  std::shared_ptr<Discriminator> disc;
  if (cfg.lambda > 0.0)
    disc = std::make_shared<Discriminator>(cfg.ngram);

  std::optional<SimilarityPenalty> penalty;
  if (cfg.penalty_alpha > 0.0) {
    FingerprintConfig fp_cfg;
    fp_cfg.radius = cfg.radius;
    penalty.emplace(objective, MoleculeSet("archive"), cfg.penalty_alpha, fp_cfg);
  }
  const Reward &base_objective = objective;
  Reward shaped = penalty ? penalty->as_reward() : objective;

  // Real sequences shown to the discriminator each round.
  std::vector<Sequence> real_sample = real;
  if (real_sample.size() > static_cast<std::size_t>(cfg.disc_samples)) {
    auto picks = sample_without_replacement(real.size(), cfg.disc_samples,
                                            derive_seed(cfg.seed, 0xd15c));
    real_sample.clear();
    for (std::size_t i: picks)
      real_sample.push_back(real[i]);
  }

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const std::uint64_t epoch_seed = derive_seed(cfg.seed, epoch);

    if (disc) {
      SeedStream rng(derive_seed(epoch_seed, 2));
      std::vector<Sequence> fake;
      for (int i = 0; i < cfg.disc_samples; ++i)
        fake.push_back(sample_sequence(result.policy, rng));
      *disc = discriminator_train(*disc, real_sample, fake, cfg.disc_epochs,
                                  cfg.disc_step);
      ++result.discriminator_rounds;
    }

    Reward reward = mixed_reward(
        cfg.lambda, disc ? std::shared_ptr<const Discriminator>(std::make_shared<Discriminator>(*disc)) : nullptr,
        shaped);

    EpochReport rep;
    rep.epoch = epoch;
    rep.phase = "rl";
    for (int step = 0; step < cfg.steps_per_epoch; ++step) {
      auto res = reinforce_step(result.policy, cfg, reward,
                                derive_seed(epoch_seed, 16 + step));
      result.policy = std::move(res.policy);
      rep.avg_reward = res.stats.avg_reward;
      if (disc) {
        double d = 0.0;
        for (const Sequence &s: res.batch)
          d += disc->score(s);
        rep.avg_discriminator = d / res.batch.size();
      }
      if (penalty)
        for (const Sequence &s: res.batch)
          penalty->admit(s, base_objective(s), cfg.threshold);
    }

    rep.table = evaluate_policy(result.policy, cfg, objective, cfg.eval_samples,
                                derive_seed(epoch_seed, 3),
                                "epoch " + std::to_string(epoch));
    emit(std::move(rep));
  }

  if (disc)
    result.discriminator = *disc;
  return result;
}

namespace {
template <class T>
void put_le(std::ostream &out, T v) {
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<char>(static_cast<std::uint64_t>(v) >> (8 * i));
  out.write(buf, sizeof(T));
}

template <class T>
T get_le(std::istream &in) {
  unsigned char buf[sizeof(T)];
  if (!in.read(reinterpret_cast<char *>(buf), sizeof(T)))
    throw DataError("truncated checkpoint");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

void put_double(std::ostream &out, double v) {
  put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

double get_double(std::istream &in) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in));
}

void put_string(std::ostream &out, const std::string &s) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream &in) {
  auto n = get_le<std::uint32_t>(in);
  if (n > (1u << 24))
    throw DataError("corrupt checkpoint string length");
  std::string s(n, '\0');
  if (n > 0 && !in.read(s.data(), n))
    throw DataError("truncated checkpoint");
  return s;
}
}  // namespace

void save_checkpoint(std::ostream &out, const Policy &policy,
                     const Discriminator *disc) {
  out.write("CDCK", 4);
  put_le<std::uint16_t>(out, kCheckpointVersion);
  put_string(out, policy.alphabet().symbols());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(policy.order()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(policy.length()));

  std::vector<const std::pair<const std::string, std::vector<double>> *> entries;
  for (const auto &kv: policy.table())
    entries.push_back(&kv);
  std::sort(entries.begin(), entries.end(),
            [](auto *a, auto *b) { return a->first < b->first; });
  put_le<std::uint64_t>(out, entries.size());
  for (const auto *kv: entries) {
    put_string(out, kv->first);
    for (double v: kv->second)
      put_double(out, v);
  }

  put_le<std::uint8_t>(out, disc ? 1 : 0);
  if (disc) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(disc->n()));
    put_double(out, disc->bias());
    std::vector<std::pair<std::string, double>> weights(disc->weights().begin(),
                                                        disc->weights().end());
    std::sort(weights.begin(), weights.end());
    put_le<std::uint64_t>(out, weights.size());
    for (const auto &[gram, w]: weights) {
      put_string(out, gram);
      put_double(out, w);
    }
  }
  if (!out)
    throw DataError("failed writing checkpoint");
}

Checkpoint load_checkpoint(std::istream &in) {
  char magic[4];
  if (!in.read(magic, 4) || std::string_view(magic, 4) != "CDCK")
    throw DataError("not a checkpoint (bad magic)");
  auto version = get_le<std::uint16_t>(in);
  if (version != kCheckpointVersion)
    throw DataError("unsupported checkpoint version " + std::to_string(version));

  Checkpoint ck;
  try {
    Alphabet alphabet(get_string(in));
    int order = static_cast<int>(get_le<std::uint32_t>(in));
    int length = static_cast<int>(get_le<std::uint32_t>(in));
    ck.policy = Policy(alphabet, order, length);
  } catch (const std::invalid_argument &e) {
    throw DataError(std::string("corrupt checkpoint: ") + e.what());
  }

  auto contexts = get_le<std::uint64_t>(in);
  for (std::uint64_t c = 0; c < contexts; ++c) {
    std::string ctx = get_string(in);
    std::vector<double> logits(ck.policy.alphabet().size());
    for (double &v: logits)
      v = get_double(in);
    ck.policy.set_logits(std::move(ctx), std::move(logits));
  }

  if (get_le<std::uint8_t>(in)) {
    Discriminator disc(static_cast<int>(get_le<std::uint32_t>(in)));
    disc.set_bias(get_double(in));
    auto n = get_le<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string gram = get_string(in);
      disc.set_weight(std::move(gram), get_double(in));
    }
    ck.discriminator = std::move(disc);
  }
  return ck;
}

}  // namespace chemdiv::seqgen
