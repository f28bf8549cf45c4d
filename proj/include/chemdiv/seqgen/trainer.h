//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_SEQGEN_TRAINER_H_
#define CHEMDIV_SEQGEN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chemdiv/scoring.h"
#include "chemdiv/seqgen/discriminator.h"
#include "chemdiv/seqgen/policy.h"
#include "chemdiv/seqgen/rewards.h"

namespace chemdiv::seqgen {

struct TrainingConfig {
  double lambda = 0.0;
  int rollouts = 8;
  double learning_rate = 0.5;
  int epochs = 30;
  int batch = 32;
  std::uint64_t seed = 1;
  std::string objective = "motif:ABC";

  int order = 6;
  int ngram = 3;
  int length = 40;
  SequenceMode mode = SequenceMode::kSmiles;
  /// Empty: derived from the corpus.
  std::string alphabet;
  /// SMILES file path, or "builtin:toy" for the generated toy corpus.
  std::string corpus;

  int pretrain_epochs = 50;
  double pretrain_step = 1.0;
  int steps_per_epoch = 1;
  int disc_epochs = 3;
  double disc_step = 1.0;
  int disc_samples = 256;
  int eval_samples = 1000;
  double threshold = kDefaultThreshold;
  double penalty_alpha = 0.0;
  int workers = 1;
  int radius = 2;

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;

  /// Resolved key=value map, in key order.
  std::map<std::string, std::string> to_map() const;
};

/// Named presets for the mixing weights used in the reference runs.
inline constexpr double kLambdaOrgan004 = 0.04;
inline constexpr double kLambdaOrgan05 = 0.5;

/// Reads flat key=value lines ('#' comments). Unknown keys and malformed
/// values throw DataError.
TrainingConfig parse_training_config(std::istream &in);
TrainingConfig load_training_config(const std::string &path);

/// Random strings over A..D with lengths in [min_len, max_len].
std::vector<std::string> toy_corpus(std::size_t count, std::uint64_t seed,
                                    int min_len = 4, int max_len = 10);

struct ReinforceStats {
  double avg_reward = 0.0;
  double avg_valid = 0.0;
};

struct ReinforceResult {
  Policy policy;
  ReinforceStats stats;
  std::vector<Sequence> batch;
};

/// One policy-gradient update on a freshly sampled batch; the rollout
/// policy is the input policy, frozen for the whole batch.
ReinforceResult reinforce_step(const Policy &policy, const TrainingConfig &cfg,
                               const Reward &reward, std::uint64_t step_seed);

struct EpochReport {
  int epoch = 0;
  std::string phase;  // "pretrain" or "rl"
  TableReport table;
  double avg_reward = 0.0;
  double avg_discriminator = 0.0;
};

struct TrainResult {
  Policy pretrained;
  Policy policy;
  std::optional<Discriminator> discriminator;
  std::vector<EpochReport> reports;
  std::size_t discriminator_rounds = 0;
};

/// Evaluates `policy` on `samples` fresh sequences: validity, mean
/// objective over valid sequences, internal diversity overall and above
/// the threshold.
TableReport evaluate_policy(const Policy &policy, const TrainingConfig &cfg,
                            const Reward &objective, std::size_t samples,
                            std::uint64_t seed, std::string label);

using EpochCallback = std::function<void(const EpochReport &)>;

/// MLE pretraining, then `epochs` rounds of REINFORCE on the mixed reward
/// with discriminator updates (skipped when lambda == 0). A report is
/// produced after pretraining and after every epoch.
TrainResult train(const TrainingConfig &cfg, std::span<const std::string> corpus,
                  const Reward &objective, const EpochCallback &on_epoch = {});

/// Versioned binary dump: "CDCK", u16 version, policy (alphabet, order,
/// length, logits sorted by context), then an optional discriminator.
void save_checkpoint(std::ostream &out, const Policy &policy,
                     const Discriminator *disc);

struct Checkpoint {
  Policy policy;
  std::optional<Discriminator> discriminator;
};

Checkpoint load_checkpoint(std::istream &in);

inline constexpr std::uint16_t kCheckpointVersion = 1;

}  // namespace chemdiv::seqgen

#endif  // CHEMDIV_SEQGEN_TRAINER_H_
