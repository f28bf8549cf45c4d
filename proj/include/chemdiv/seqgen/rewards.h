//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_SEQGEN_REWARDS_H_
#define CHEMDIV_SEQGEN_REWARDS_H_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "chemdiv/fingerprint.h"
#include "chemdiv/molecule_set.h"
#include "chemdiv/scoring.h"
#include "chemdiv/seqgen/discriminator.h"
#include "chemdiv/seqgen/policy.h"

namespace chemdiv::seqgen {

/// seq -> lambda * D(seq) + (1 - lambda) * objective(seq). lambda = 0 is
/// plain RL, lambda = 1 is discriminator-only (SeqGAN). Throws
/// std::invalid_argument for lambda outside [0, 1].
Reward mixed_reward(double lambda, std::shared_ptr<const Discriminator> disc,
                    Reward objective);

/// (x^lambda + y^lambda)^(1/lambda); tends to min(x, y) as lambda -> -inf.
/// Throws std::invalid_argument for x <= 0, y <= 0 or lambda == 0.
double power_mean_combine(double x, double y, double lambda);

/// Subtracts alpha * (max Tanimoto similarity to an archived molecule) from
/// the reward of valid SMILES, clamping at 0. The archive only grows
/// through admit(), which the trainer calls between updates.
class SimilarityPenalty {
public:
  SimilarityPenalty(Reward base, MoleculeSet archive, double alpha,
                    FingerprintConfig cfg = {});

  double operator()(const Sequence &seq) const;
  Reward as_reward() const;

  /// Archives `seq` when it is valid SMILES and `score` exceeds
  /// `threshold`. Returns whether it was added.
  bool admit(const Sequence &seq, double score, double threshold);

  std::size_t archive_size() const;

private:
  struct State {
    Reward base;
    MoleculeSet archive;
    double alpha;
    FingerprintConfig cfg;
  };
  std::shared_ptr<State> state_;
};

Reward similarity_penalty_wrap(Reward reward, MoleculeSet archive, double alpha,
                               FingerprintConfig cfg = {});

enum class SequenceMode { kToy, kSmiles };

/// Validity of a generated sequence: non-empty text in toy mode, a valid
/// SMILES in SMILES mode.
bool sequence_valid(SequenceMode mode, const Sequence &seq);

/// Fingerprint used for diversity of generated sequences: Morgan in SMILES
/// mode, hashed 1..3-grams of the text in toy mode. nullopt when invalid.
std::optional<Fingerprint> sequence_fingerprint(SequenceMode mode,
                                                const Sequence &seq,
                                                const FingerprintConfig &cfg);

/// Named training objectives:
///   motif:<text>   1 if the text contains <text>, else 0
///   valid          1 for valid SMILES
///   conciseness    conciseness of the SMILES
///   novelty        novelty against `index`
///   druglikeness   mean of novelty and conciseness (partial composite)
/// Throws std::invalid_argument for an unknown name.
Reward make_objective(const std::string &name,
                      std::shared_ptr<const TrainingSetIndex> index = nullptr);

}  // namespace chemdiv::seqgen

#endif  // CHEMDIV_SEQGEN_REWARDS_H_
