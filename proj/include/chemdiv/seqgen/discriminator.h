//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_SEQGEN_DISCRIMINATOR_H_
#define CHEMDIV_SEQGEN_DISCRIMINATOR_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "chemdiv/seqgen/policy.h"

namespace chemdiv::seqgen {

/// Logistic model over n-gram counts. N-grams touching the pad are not
/// features, so trailing padding never changes the score.
class Discriminator {
public:
  Discriminator() = default;
  explicit Discriminator(int n);

  int n() const { return n_; }
  double bias() const { return bias_; }
  void set_bias(double b) { bias_ = b; }
  const std::unordered_map<std::string, double> &weights() const {
    return weights_;
  }
  void set_weight(std::string gram, double w) { weights_[std::move(gram)] = w; }

  /// Pad-free n-gram counts of `seq`.
  std::map<std::string, int> features(std::string_view seq) const;

  double logit(std::string_view seq) const;
  /// logistic(bias + sum of weights over the n-grams), in (0, 1).
  double score(std::string_view seq) const;

  friend bool operator==(const Discriminator &,
                         const Discriminator &) = default;

private:
  int n_ = 3;
  double bias_ = 0.0;
  std::unordered_map<std::string, double> weights_;
};

/// E_real[log D] + E_generated[log(1 - D)]; training ascends it.
double discriminator_objective(const Discriminator &disc,
                               std::span<const Sequence> real,
                               std::span<const Sequence> generated);

/// Full-batch gradient ascent on discriminator_objective. The step is
/// capped by the inverse curvature bound, so the objective is non-decreasing
/// across epochs. Throws std::invalid_argument on an empty corpus.
Discriminator discriminator_train(Discriminator disc,
                                  std::span<const Sequence> real,
                                  std::span<const Sequence> generated,
                                  int epochs, double step = 1.0);

/// Fraction of sequences classified correctly at the 0.5 cut.
double discriminator_accuracy(const Discriminator &disc,
                              std::span<const Sequence> real,
                              std::span<const Sequence> generated);

}  // namespace chemdiv::seqgen

#endif  // CHEMDIV_SEQGEN_DISCRIMINATOR_H_
