//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_DIVERSITY_H_
#define CHEMDIV_DIVERSITY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chemdiv/fingerprint.h"
#include "chemdiv/molecule_set.h"

namespace chemdiv {

/// Fingerprints packed contiguously for the O(n^2) loops.
class FingerprintBlock {
public:
  FingerprintBlock() = default;
  explicit FingerprintBlock(std::span<const Fingerprint> fps);
  explicit FingerprintBlock(std::span<const Fingerprint *const> fps);
  /// Throws DataError if a record has no fingerprint.
  explicit FingerprintBlock(const MoleculeSet &set);
  FingerprintBlock(const MoleculeSet &set, std::span<const std::size_t> indices);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  const FingerprintConfig &config() const { return config_; }

  std::span<const std::uint64_t> row(std::size_t i) const {
    return { data_.data() + offsets_[i], offsets_[i + 1] - offsets_[i] };
  }

  /// Tanimoto distance between rows i and j.
  double distance(std::size_t i, std::size_t j) const;
  double distance_to(std::size_t i, const FingerprintBlock &other,
                     std::size_t j) const;

private:
  void append(const Fingerprint &fp);

  FingerprintConfig config_;
  bool has_config_ = false;
  std::vector<std::uint64_t> data_;
  std::vector<std::size_t> offsets_;
};

struct DiversityEstimate {
  double value = 0.0;
  std::size_t n_used = 0;
  bool subsampled = false;
  std::optional<std::uint64_t> seed;
};

/// I(A) = (1/|A|^2) sum over all ordered pairs of A x A, self-pairs included,
/// of the Tanimoto distance. Distances are accumulated in exact fixed point,
/// so the result does not depend on summation order or worker count.
DiversityEstimate internal_diversity(const FingerprintBlock &fps, int workers = 1);
DiversityEstimate internal_diversity(const MoleculeSet &set, int workers = 1);

/// V(A) = (1/|A|^2) sum over A x A of the squared Tanimoto distance.
DiversityEstimate tanimoto_variance(const FingerprintBlock &fps, int workers = 1);
DiversityEstimate tanimoto_variance(const MoleculeSet &set, int workers = 1);

struct InternalMoments {
  DiversityEstimate diversity;
  DiversityEstimate variance;
};

/// Both moments in one pass over the pairs.
InternalMoments internal_moments(const FingerprintBlock &fps, int workers = 1);

/// E(A1, A2) = (1/(|A1||A2|)) sum over A1 x A2 of the Tanimoto distance.
DiversityEstimate external_diversity(const FingerprintBlock &a1,
                                     const FingerprintBlock &a2,
                                     int workers = 1);
DiversityEstimate external_diversity(const MoleculeSet &a1,
                                     const MoleculeSet &a2, int workers = 1);

/// I(A') for A' a uniform k-subset of A drawn with `seed`.
DiversityEstimate subsampled_internal_diversity(const MoleculeSet &set,
                                                std::size_t k,
                                                std::uint64_t seed,
                                                int workers = 1);
DiversityEstimate subsampled_internal_diversity(const FingerprintBlock &fps,
                                                std::size_t k,
                                                std::uint64_t seed,
                                                int workers = 1);

/// E(A1, A2') where A2' is a uniform subset of A2 of size min(k, |A2|).
DiversityEstimate subsampled_external_diversity(const MoleculeSet &a1,
                                                const MoleculeSet &a2,
                                                std::size_t k,
                                                std::uint64_t seed,
                                                int workers = 1);

/// A record qualifies for the property filter when its score exceeds the
/// threshold.
constexpr bool above_threshold(double score, double threshold) {
  return score > threshold;
}

struct ChallengeVerdict {
  double i_g = 0.0;
  double i_n = 0.0;
  /// i_g / i_n; empty when i_n == 0.
  std::optional<double> ratio;
  bool pass = false;
  std::size_t n_g = 0;
  std::size_t n_n = 0;
};

/// Verdict from already computed filtered diversities. Sets with fewer than
/// two records carry diversity 0, and a generated set with fewer than two
/// qualifying records never passes.
ChallengeVerdict make_challenge_verdict(double i_g, std::size_t n_g,
                                        double i_n, std::size_t n_n);

/// Tests I(G ∩ P) >= I(N ∩ P), P = {valid, score > threshold}.
/// Both sets must be fingerprinted and carry `score_name` on every valid
/// record.
ChallengeVerdict challenge_compare(const MoleculeSet &generated,
                                   const MoleculeSet &nature,
                                   const std::string &score_name,
                                   double threshold, int workers = 1);

/// Indices of valid records whose `score_name` exceeds `threshold`. Throws
/// DataError if a valid record lacks the score.
std::vector<std::size_t> filter_by_score(const MoleculeSet &set,
                                         const std::string &score_name,
                                         double threshold);

}  // namespace chemdiv

#endif  // CHEMDIV_DIVERSITY_H_
