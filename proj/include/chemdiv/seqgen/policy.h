//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_SEQGEN_POLICY_H_
#define CHEMDIV_SEQGEN_POLICY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chemdiv/random.h"

namespace chemdiv::seqgen {

inline constexpr char kPad = '_';

/// A fixed-length sequence; once the pad symbol appears every later symbol
/// is pad.
using Sequence = std::string;

using Reward = std::function<double(const Sequence &)>;

class Alphabet {
public:
  Alphabet() = default;
  /// Throws std::invalid_argument unless symbols are distinct, include the
  /// pad, and number at least two.
  explicit Alphabet(std::string symbols);

  /// Sorted distinct characters of the corpus plus the pad.
  static Alphabet from_corpus(std::span<const std::string> corpus);

  std::size_t size() const { return symbols_.size(); }
  char symbol(std::size_t i) const { return symbols_[i]; }
  /// -1 if absent.
  int index(char c) const { return lookup_[static_cast<unsigned char>(c)]; }
  int pad_index() const { return index(kPad); }
  const std::string &symbols() const { return symbols_; }

  friend bool operator==(const Alphabet &a, const Alphabet &b) {
    return a.symbols_ == b.symbols_;
  }

private:
  std::string symbols_;
  std::vector<int> lookup_ = std::vector<int>(256, -1);
};

/// Text before the first pad.
std::string_view strip_pad(std::string_view seq);

/// Gradient with respect to each context's logit vector.
using LogitGradient = std::unordered_map<std::string, std::vector<double>>;

/// Order-k context table: G(y_{t+1} | Y_{1:t}) = softmax(logits[last k
/// symbols]). Unseen contexts are uniform.
class Policy {
public:
  Policy() = default;
  Policy(Alphabet alphabet, int order, int length);

  const Alphabet &alphabet() const { return alphabet_; }
  int order() const { return order_; }
  int length() const { return length_; }

  std::string_view context(std::string_view prefix) const;

  /// Softmax over the alphabet for the symbol following `prefix`.
  std::vector<double> probabilities(std::string_view prefix) const;
  std::vector<double> context_probabilities(std::string_view context) const;

  /// nullptr for an unseen context.
  const std::vector<double> *logits(std::string_view context) const;
  std::vector<double> &mutable_logits(std::string_view context);
  void set_logits(std::string context, std::vector<double> logits);

  const std::unordered_map<std::string, std::vector<double>> &table() const {
    return logits_;
  }

  /// Adds step * grad to the logits.
  void apply(const LogitGradient &grad, double step);

  /// True when position t of `seq` is forced by an earlier pad.
  static bool forced(std::string_view seq, std::size_t t) {
    return t > 0 && seq[t - 1] == kPad;
  }

  /// log G(seq); only unforced positions contribute.
  double log_prob(std::string_view seq) const;

  friend bool operator==(const Policy &a, const Policy &b);

private:
  Alphabet alphabet_;
  int order_ = 0;
  int length_ = 0;
  std::unordered_map<std::string, std::vector<double>> logits_;
};

/// Pads `text` to the policy length. Throws std::invalid_argument on
/// symbols outside the alphabet or text longer than the length.
Sequence to_sequence(const Policy &policy, std::string_view text);

/// Samples one full-length sequence.
Sequence sample_sequence(const Policy &policy, SeedStream &rng);

/// Completes `prefix` to full length by sampling.
Sequence complete_sequence(const Policy &policy, std::string_view prefix,
                           SeedStream &rng);

/// Mean negative log-likelihood per corpus sequence.
double corpus_nll(const Policy &policy, std::span<const Sequence> corpus);

/// Full-batch gradient ascent on each context's mean next-symbol
/// log-likelihood. With step < 4 the corpus NLL never increases.
Policy mle_pretrain(Policy policy, std::span<const Sequence> corpus, int epochs,
                    double step = 1.0);

/// Q(Y_{1:t-1}, y_t): the reward itself for a full sequence, otherwise the
/// mean reward of `rollouts` completions sampled from the policy.
double mc_rollout_q(const Policy &policy, std::string_view prefix,
                    const Reward &reward, int rollouts, std::uint64_t seed);

/// Batch REINFORCE estimate of grad J: mean over sequences of
/// sum_t Q_t * grad log G(y_t | Y_{1:t-1}), no baseline. Rollouts for
/// sequence b use seeds derived from (seed, b), so the result does not
/// depend on `workers`.
LogitGradient reinforce_gradient(const Policy &policy,
                                 std::span<const Sequence> batch,
                                 const Reward &reward, int rollouts,
                                 std::uint64_t seed, int workers = 1);

/// Exact grad J by enumerating every sequence; toy sizes only.
LogitGradient exact_policy_gradient(const Policy &policy, const Reward &reward);

}  // namespace chemdiv::seqgen

#endif  // CHEMDIV_SEQGEN_POLICY_H_
