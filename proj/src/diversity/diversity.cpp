//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <string>
#include <vector>

#include "chemdiv/diversity.h"
#include "chemdiv/errors.h"
#include "chemdiv/parallel.h"
#include "chemdiv/random.h"

namespace chemdiv {

FingerprintBlock::FingerprintBlock(std::span<const Fingerprint> fps) {
  offsets_.push_back(0);
  for (const Fingerprint &fp: fps)
    append(fp);
}

FingerprintBlock::FingerprintBlock(std::span<const Fingerprint *const> fps) {
  offsets_.push_back(0);
  for (const Fingerprint *fp: fps)
    append(*fp);
}

FingerprintBlock::FingerprintBlock(const MoleculeSet &set) {
  offsets_.push_back(0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set[i].fingerprint)
      throw DataError("record " + std::to_string(i) + " (" + set[i].smiles
                      + ") has no fingerprint");
    append(*set[i].fingerprint);
  }
}

FingerprintBlock::FingerprintBlock(const MoleculeSet &set,
                                   std::span<const std::size_t> indices) {
  offsets_.push_back(0);
  for (std::size_t i: indices) {
    if (!set[i].fingerprint)
      throw DataError("record " + std::to_string(i) + " (" + set[i].smiles
                      + ") has no fingerprint");
    append(*set[i].fingerprint);
  }
}

void FingerprintBlock::append(const Fingerprint &fp) {
  if (!has_config_) {
    config_ = fp.config();
    has_config_ = true;
  } else if (fp.config() != config_) {
    throw IncomparableFingerprints(
        "fingerprints in one set use different configurations");
  }
  const auto &words = fp.folded ? *fp.folded : fp.features;
  data_.insert(data_.end(), words.begin(), words.end());
  offsets_.push_back(data_.size());
}

double FingerprintBlock::distance(std::size_t i, std::size_t j) const {
  return distance_to(i, *this, j);
}

double FingerprintBlock::distance_to(std::size_t i,
                                     const FingerprintBlock &other,
                                     std::size_t j) const {
  if (config_.use_folded)
    return 1.0 - bitset_tanimoto(row(i), other.row(j));
  return 1.0 - set_tanimoto(row(i), other.row(j));
}

namespace {
// Distances lie in [0, 1] and are either 0 or at least 1/|union|, so
// scaling by 2^80 (2^96 for squares) keeps every realistic term exact and
// leaves room for 2^30 terms in 128 bits.
constexpr int kDistanceBits = 80;
constexpr int kSquareBits = 96;

using Fixed = unsigned __int128;

struct FixedSums {
  Fixed distance = 0;
  Fixed square = 0;

  void add(double d) {
    distance += static_cast<Fixed>(std::ldexp(d, kDistanceBits));
    square += static_cast<Fixed>(std::ldexp(d * d, kSquareBits));
  }

  FixedSums &operator+=(const FixedSums &o) {
    distance += o.distance;
    square += o.square;
    return *this;
  }
};

double fixed_mean(Fixed sum, int bits, long double pairs) {
  long double total = std::ldexp(static_cast<long double>(sum), -bits);
  return static_cast<double>(total / pairs);
}

void check_compatible(const FingerprintBlock &a, const FingerprintBlock &b) {
  if (!a.empty() && !b.empty() && a.config() != b.config())
    throw IncomparableFingerprints(
        "sets were fingerprinted with different configurations");
}
}  // namespace

InternalMoments internal_moments(const FingerprintBlock &fps, int workers) {
  const std::size_t n = fps.size();
  if (n == 0)
    throw DataError("internal diversity of an empty set");

  // Upper triangle only; each off-diagonal pair counts twice and the
  // diagonal contributes zero.
  std::vector<FixedSums> rows(n);
  parallel_for(n, workers, [&](std::size_t i) {
    FixedSums s;
    for (std::size_t j = i + 1; j < n; ++j)
      s.add(fps.distance(i, j));
    rows[i] = s;
  });

  FixedSums total;
  for (const FixedSums &s: rows)
    total += s;
  total.distance *= 2;
  total.square *= 2;

  const long double pairs =
      static_cast<long double>(n) * static_cast<long double>(n);
  InternalMoments m;
  m.diversity.value = fixed_mean(total.distance, kDistanceBits, pairs);
  m.diversity.n_used = n;
  m.variance.value = fixed_mean(total.square, kSquareBits, pairs);
  m.variance.n_used = n;
  return m;
}

DiversityEstimate internal_diversity(const FingerprintBlock &fps, int workers) {
  return internal_moments(fps, workers).diversity;
}

DiversityEstimate internal_diversity(const MoleculeSet &set, int workers) {
  return internal_diversity(FingerprintBlock(set), workers);
}

DiversityEstimate tanimoto_variance(const FingerprintBlock &fps, int workers) {
  return internal_moments(fps, workers).variance;
}

DiversityEstimate tanimoto_variance(const MoleculeSet &set, int workers) {
  return tanimoto_variance(FingerprintBlock(set), workers);
}

DiversityEstimate external_diversity(const FingerprintBlock &a1,
                                     const FingerprintBlock &a2, int workers) {
  if (a1.empty() || a2.empty())
    throw DataError("external diversity needs two non-empty sets");
  check_compatible(a1, a2);

  std::vector<FixedSums> rows(a1.size());
  parallel_for(a1.size(), workers, [&](std::size_t i) {
    FixedSums s;
    for (std::size_t j = 0; j < a2.size(); ++j)
      s.add(a1.distance_to(i, a2, j));
    rows[i] = s;
  });

  FixedSums total;
  for (const FixedSums &s: rows)
    total += s;

  DiversityEstimate e;
  e.value = fixed_mean(total.distance, kDistanceBits,
                       static_cast<long double>(a1.size())
                           * static_cast<long double>(a2.size()));
  e.n_used = a2.size();
  return e;
}

DiversityEstimate external_diversity(const MoleculeSet &a1,
                                     const MoleculeSet &a2, int workers) {
  return external_diversity(FingerprintBlock(a1), FingerprintBlock(a2),
                            workers);
}

DiversityEstimate subsampled_internal_diversity(const FingerprintBlock &fps,
                                                std::size_t k,
                                                std::uint64_t seed,
                                                int workers) {
  if (k < 1 || k > fps.size())
    throw DataError("subsample size " + std::to_string(k)
                    + " outside [1, " + std::to_string(fps.size()) + "]");

  auto picks = sample_without_replacement(fps.size(), k, seed);
  std::vector<Fingerprint> chosen;
  chosen.reserve(k);
  for (std::size_t i: picks) {
    Fingerprint fp;
    fp.radius = fps.config().radius;
    fp.nbits = fps.config().nbits;
    auto words = fps.row(i);
    if (fps.config().use_folded)
      fp.folded.emplace(words.begin(), words.end());
    else
      fp.features.assign(words.begin(), words.end());
    chosen.push_back(std::move(fp));
  }

  DiversityEstimate est = internal_diversity(FingerprintBlock(chosen), workers);
  est.subsampled = true;
  est.seed = seed;
  return est;
}

DiversityEstimate subsampled_internal_diversity(const MoleculeSet &set,
                                                std::size_t k,
                                                std::uint64_t seed,
                                                int workers) {
  return subsampled_internal_diversity(FingerprintBlock(set), k, seed, workers);
}

DiversityEstimate subsampled_external_diversity(const MoleculeSet &a1,
                                                const MoleculeSet &a2,
                                                std::size_t k,
                                                std::uint64_t seed,
                                                int workers) {
  if (k < 1)
    throw DataError("subsample size must be >= 1");
  if (a2.size() <= k)
    return external_diversity(a1, a2, workers);

  auto picks = sample_without_replacement(a2.size(), k, seed);
  DiversityEstimate est = external_diversity(
      FingerprintBlock(a1), FingerprintBlock(a2, picks), workers);
  est.subsampled = true;
  est.seed = seed;
  return est;
}

std::vector<std::size_t> filter_by_score(const MoleculeSet &set,
                                         const std::string &score_name,
                                         double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const MoleculeRecord &rec = set[i];
    if (!rec.valid())
      continue;
    auto it = rec.scores.find(score_name);
    if (it == rec.scores.end())
      throw DataError("record '" + rec.smiles + "' has no score '" + score_name
                      + "'");
    if (above_threshold(it->second, threshold))
      out.push_back(i);
  }
  return out;
}

ChallengeVerdict make_challenge_verdict(double i_g, std::size_t n_g,
                                        double i_n, std::size_t n_n) {
  ChallengeVerdict v;
  v.n_g = n_g;
  v.n_n = n_n;
  v.i_g = n_g < 2 ? 0.0 : i_g;
  v.i_n = n_n < 2 ? 0.0 : i_n;
  if (v.i_n > 0.0)
    v.ratio = v.i_g / v.i_n;
  else if (v.i_g == 0.0 && n_g >= 2 && n_n >= 2)
    v.ratio = 1.0;
  v.pass = n_g >= 2 && v.i_g >= v.i_n;
  return v;
}

ChallengeVerdict challenge_compare(const MoleculeSet &generated,
                                   const MoleculeSet &nature,
                                   const std::string &score_name,
                                   double threshold, int workers) {
  auto g = filter_by_score(generated, score_name, threshold);
  auto n = filter_by_score(nature, score_name, threshold);

  double i_g = 0.0, i_n = 0.0;
  if (g.size() >= 2)
    i_g = internal_diversity(FingerprintBlock(generated, g), workers).value;
  if (n.size() >= 2)
    i_n = internal_diversity(FingerprintBlock(nature, n), workers).value;
  return make_challenge_verdict(i_g, g.size(), i_n, n.size());
}

}  // namespace chemdiv
