//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chemdiv/diversity.h"
#include "chemdiv/seqgen/rewards.h"

namespace chemdiv::seqgen {

Reward mixed_reward(double lambda, std::shared_ptr<const Discriminator> disc,
                    Reward objective) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
  if (lambda > 0.0 && !disc)
    throw std::invalid_argument("lambda > 0 needs a discriminator");
  if (lambda < 1.0 && !objective)
    throw std::invalid_argument("lambda < 1 needs an objective");

  if (lambda == 0.0)
    return objective;
  if (lambda == 1.0)
    return [disc](const Sequence &seq) { return disc->score(seq); };
  return [lambda, disc, objective = std::move(objective)](const Sequence &seq) {
    return lambda * disc->score(seq) + (1.0 - lambda) * objective(seq);
  };
}

double power_mean_combine(double x, double y, double lambda) {
  if (!(x > 0.0) || !(y > 0.0))
    throw std::invalid_argument("power mean needs positive inputs");
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw std::invalid_argument("power mean exponent must be finite and != 0");

  // log(x^l + y^l) via log-sum-exp so large |lambda| does not overflow.
  const double a = lambda * std::log(x), b = lambda * std::log(y);
  const double hi = std::max(a, b);
  const double lse = hi + std::log(std::exp(a - hi) + std::exp(b - hi));
  return std::exp(lse / lambda);
}

SimilarityPenalty::SimilarityPenalty(Reward base, MoleculeSet archive,
                                     double alpha, FingerprintConfig cfg)
    : state_(std::make_shared<State>(
        State { std::move(base), std::move(archive), alpha, cfg })) {
  if (alpha < 0.0)
    throw std::invalid_argument("penalty weight must be >= 0");
  for (auto &rec: state_->archive.records())
    if (rec.molecule && !rec.fingerprint)
      rec.fingerprint = morgan_fingerprint(*rec.molecule, cfg);
}

double SimilarityPenalty::operator()(const Sequence &seq) const {
  const State &s = *state_;
  double base = s.base(seq);
  if (s.archive.empty() || s.alpha == 0.0)
    return base;

  ParseResult parsed = parse(strip_pad(seq));
  if (!parsed)
    return base;
  Fingerprint fp = morgan_fingerprint(parsed.value(), s.cfg);
  double best = 0.0;
  for (const auto &rec: s.archive.records())
    if (rec.fingerprint)
      best = std::max(best, tanimoto_similarity(fp, *rec.fingerprint));
  return std::max(0.0, base - s.alpha * best);
}

Reward SimilarityPenalty::as_reward() const {
  return [self = *this](const Sequence &seq) { return self(seq); };
}

bool SimilarityPenalty::admit(const Sequence &seq, double score,
                              double threshold) {
  if (!above_threshold(score, threshold))
    return false;
  std::string text(strip_pad(seq));
  ParseResult parsed = parse(text);
  if (!parsed)
    return false;
  state_->archive.add(text);
  auto &rec = state_->archive.records().back();
  rec.fingerprint = morgan_fingerprint(*rec.molecule, state_->cfg);
  return true;
}

std::size_t SimilarityPenalty::archive_size() const {
  return state_->archive.size();
}

Reward similarity_penalty_wrap(Reward reward, MoleculeSet archive, double alpha,
                               FingerprintConfig cfg) {
  return SimilarityPenalty(std::move(reward), std::move(archive), alpha, cfg)
      .as_reward();
}

bool sequence_valid(SequenceMode mode, const Sequence &seq) {
  std::string_view text = strip_pad(seq);
  if (mode == SequenceMode::kToy)
    return !text.empty();
  return validate(text);
}

std::optional<Fingerprint> sequence_fingerprint(SequenceMode mode,
                                                const Sequence &seq,
                                                const FingerprintConfig &cfg) {
  std::string_view text = strip_pad(seq);
  if (mode == SequenceMode::kSmiles) {
    ParseResult parsed = parse(text);
    if (!parsed)
      return std::nullopt;
    return morgan_fingerprint(parsed.value(), cfg);
  }

  if (text.empty())
    return std::nullopt;
  Fingerprint fp;
  fp.radius = cfg.radius;
  fp.nbits = cfg.nbits;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t i = 0; i + n <= text.size(); ++i)
      fp.features.push_back(StableHasher().u32(static_cast<std::uint32_t>(n))
                                .bytes(text.substr(i, n))
                                .digest());
  std::sort(fp.features.begin(), fp.features.end());
  fp.features.erase(std::unique(fp.features.begin(), fp.features.end()),
                    fp.features.end());
  if (cfg.use_folded)
    fp.folded = fold_features(fp.features, cfg.nbits);
  return fp;
}

Reward make_objective(const std::string &name,
                      std::shared_ptr<const TrainingSetIndex> index) {
  if (name.rfind("motif:", 0) == 0) {
    std::string motif = name.substr(6);
    if (motif.empty())
      throw std::invalid_argument("motif objective needs a non-empty motif");
    return [motif](const Sequence &seq) {
      return strip_pad(seq).find(motif) != std::string_view::npos ? 1.0 : 0.0;
    };
  }
  if (name == "valid")
    return [](const Sequence &seq) { return validate(strip_pad(seq)) ? 1.0 : 0.0; };
  if (name == "conciseness")
    return [](const Sequence &seq) { return conciseness(strip_pad(seq)); };

  if (name == "novelty" || name == "druglikeness") {
    if (!index)
      index = std::make_shared<TrainingSetIndex>();
    if (name == "novelty")
      return [index](const Sequence &seq) {
        return novelty(strip_pad(seq), *index);
      };
    return [index](const Sequence &seq) {
      return druglikeness(strip_pad(seq), *index).value;
    };
  }
  throw std::invalid_argument("unknown objective '" + name + "'");
}

}  // namespace chemdiv::seqgen
