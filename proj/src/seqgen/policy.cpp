//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemdiv/parallel.h"
#include "chemdiv/seqgen/policy.h"

namespace chemdiv::seqgen {

Alphabet::Alphabet(std::string symbols): symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto c = static_cast<unsigned char>(symbols_[i]);
    if (lookup_[c] >= 0)
      throw std::invalid_argument(std::string("duplicate alphabet symbol '")
                                  + symbols_[i] + "'");
    lookup_[c] = static_cast<int>(i);
  }
  if (lookup_[static_cast<unsigned char>(kPad)] < 0)
    throw std::invalid_argument("alphabet must contain the pad symbol '_'");
  if (symbols_.size() < 2)
    throw std::invalid_argument("alphabet needs at least two symbols");
}

Alphabet Alphabet::from_corpus(std::span<const std::string> corpus) {
  std::vector<bool> seen(256, false);
  seen[static_cast<unsigned char>(kPad)] = true;
  for (const std::string &s: corpus)
    for (char c: s)
      seen[static_cast<unsigned char>(c)] = true;

  std::string symbols;
  for (int c = 0; c < 256; ++c)
    if (seen[c])
      symbols += static_cast<char>(c);
  return Alphabet(symbols);
}

std::string_view strip_pad(std::string_view seq) {
  return seq.substr(0, seq.find(kPad));
}

Policy::Policy(Alphabet alphabet, int order, int length)
    : alphabet_(std::move(alphabet)), order_(order), length_(length) {
  if (order < 0)
    throw std::invalid_argument("policy order must be >= 0");
  if (length < 1)
    throw std::invalid_argument("sequence length must be >= 1");
}

std::string_view Policy::context(std::string_view prefix) const {
  const std::size_t k = static_cast<std::size_t>(order_);
  return prefix.size() <= k ? prefix : prefix.substr(prefix.size() - k);
}

namespace {
std::vector<double> softmax(const std::vector<double> &logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - top);
    z += p[i];
  }
  for (double &v: p)
    v /= z;
  return p;
}

std::size_t draw(const std::vector<double> &p, SeedStream &rng) {
  double u = rng.uniform();
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0)
      continue;
    last = i;
    acc += p[i];
    if (u < acc)
      return i;
  }
  return last;
}
}  // namespace

std::vector<double> Policy::context_probabilities(std::string_view ctx) const {
  if (const auto *l = logits(ctx))
    return softmax(*l);
  return std::vector<double>(alphabet_.size(), 1.0 / alphabet_.size());
}

std::vector<double> Policy::probabilities(std::string_view prefix) const {
  return context_probabilities(context(prefix));
}

const std::vector<double> *Policy::logits(std::string_view ctx) const {
  auto it = logits_.find(std::string(ctx));
  return it == logits_.end() ? nullptr : &it->second;
}

std::vector<double> &Policy::mutable_logits(std::string_view ctx) {
  auto [it, inserted] = logits_.try_emplace(std::string(ctx));
  if (inserted)
    it->second.assign(alphabet_.size(), 0.0);
  return it->second;
}

void Policy::set_logits(std::string ctx, std::vector<double> values) {
  if (values.size() != alphabet_.size())
    throw std::invalid_argument("logit vector does not match alphabet size");
  logits_[std::move(ctx)] = std::move(values);
}

void Policy::apply(const LogitGradient &grad, double step) {
  for (const auto &[ctx, g]: grad) {
    if (std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; }))
      continue;
    auto &l = mutable_logits(ctx);
    for (std::size_t i = 0; i < l.size(); ++i)
      l[i] += step * g[i];
  }
}

double Policy::log_prob(std::string_view seq) const {
  double lp = 0.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    if (forced(seq, t))
      break;
    auto p = probabilities(seq.substr(0, t));
    lp += std::log(p[alphabet_.index(seq[t])]);
  }
  return lp;
}

bool operator==(const Policy &a, const Policy &b) {
  return a.alphabet_ == b.alphabet_ && a.order_ == b.order_
         && a.length_ == b.length_ && a.logits_ == b.logits_;
}

Sequence to_sequence(const Policy &policy, std::string_view text) {
  if (text.size() > static_cast<std::size_t>(policy.length()))
    throw std::invalid_argument("sequence '" + std::string(text)
                                + "' is longer than "
                                + std::to_string(policy.length()));
  for (char c: text)
    if (policy.alphabet().index(c) < 0)
      throw std::invalid_argument(std::string("symbol '") + c
                                  + "' is not in the alphabet");
  Sequence seq(text);
  if (auto pad = seq.find(kPad); pad != Sequence::npos)
    seq.resize(pad);
  seq.resize(policy.length(), kPad);
  return seq;
}

Sequence complete_sequence(const Policy &policy, std::string_view prefix,
                           SeedStream &rng) {
  Sequence seq(prefix);
  seq.reserve(policy.length());
  while (seq.size() < static_cast<std::size_t>(policy.length())) {
    if (Policy::forced(seq, seq.size())) {
      seq.push_back(kPad);
      continue;
    }
    auto p = policy.probabilities(seq);
    seq.push_back(policy.alphabet().symbol(draw(p, rng)));
  }
  return seq;
}

Sequence sample_sequence(const Policy &policy, SeedStream &rng) {
  return complete_sequence(policy, {}, rng);
}

double corpus_nll(const Policy &policy, std::span<const Sequence> corpus) {
  if (corpus.empty())
    return 0.0;
  double total = 0.0;
  for (const Sequence &s: corpus)
    total -= policy.log_prob(s);
  return total / static_cast<double>(corpus.size());
}

Policy mle_pretrain(Policy policy, std::span<const Sequence> corpus, int epochs,
                    double step) {
  // Next-symbol counts per context; ordered so updates are deterministic.
  std::map<std::string, std::vector<double>> counts;
  const std::size_t a = policy.alphabet().size();
  for (const Sequence &s: corpus) {
    if (s.size() != static_cast<std::size_t>(policy.length()))
      throw std::invalid_argument("corpus sequence has wrong length");
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (Policy::forced(s, t))
        break;
      int sym = policy.alphabet().index(s[t]);
      if (sym < 0)
        throw std::invalid_argument(std::string("symbol '") + s[t]
                                    + "' is not in the alphabet");
      auto &c = counts[std::string(policy.context(std::string_view(s).substr(0, t)))];
      if (c.empty())
        c.assign(a, 0.0);
      c[sym] += 1.0;
    }
  }
  for (auto &[_, c]: counts) {
    double n = 0.0;
    for (double v: c)
      n += v;
    for (double &v: c)
      v /= n;
  }

  for (int e = 0; e < epochs; ++e) {
    for (const auto &[ctx, empirical]: counts) {
      auto &logits = policy.mutable_logits(ctx);
      auto p = softmax(logits);
      for (std::size_t i = 0; i < a; ++i)
        logits[i] += step * (empirical[i] - p[i]);
    }
  }
  return policy;
}

double mc_rollout_q(const Policy &policy, std::string_view prefix,
                    const Reward &reward, int rollouts, std::uint64_t seed) {
  const std::size_t length = static_cast<std::size_t>(policy.length());
  if (prefix.size() > length)
    throw std::invalid_argument("prefix longer than the sequence length");
  if (prefix.size() == length)
    return reward(Sequence(prefix));
  if (!prefix.empty() && prefix.back() == kPad) {
    Sequence full(prefix);
    full.resize(length, kPad);
    return reward(full);
  }
  if (rollouts < 1)
    throw std::invalid_argument("rollouts must be >= 1");

  double total = 0.0;
  for (int n = 0; n < rollouts; ++n) {
    SeedStream rng(derive_seed(seed, static_cast<std::uint64_t>(n)));
    total += reward(complete_sequence(policy, prefix, rng));
  }
  return total / rollouts;
}

namespace {
void accumulate(LogitGradient &grad, const Policy &policy, std::string_view ctx,
                int symbol, double weight) {
  auto p = policy.context_probabilities(ctx);
  auto &g = grad[std::string(ctx)];
  if (g.empty())
    g.assign(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    g[i] -= weight * p[i];
  g[symbol] += weight;
}
}  // namespace

LogitGradient reinforce_gradient(const Policy &policy,
                                 std::span<const Sequence> batch,
                                 const Reward &reward, int rollouts,
                                 std::uint64_t seed, int workers) {
  std::vector<LogitGradient> partial(batch.size());
  parallel_for(batch.size(), workers, [&](std::size_t b) {
    const Sequence &seq = batch[b];
    LogitGradient &g = partial[b];
    for (std::size_t t = 0; t < seq.size(); ++t) {
      if (Policy::forced(seq, t))
        break;
      std::string_view view(seq);
      double q = mc_rollout_q(policy, view.substr(0, t + 1), reward, rollouts,
                              derive_seed(seed, b * (seq.size() + 1) + t));
      accumulate(g, policy, policy.context(view.substr(0, t)),
                 policy.alphabet().index(seq[t]), q);
    }
  });

  LogitGradient total;
  const double scale = batch.empty() ? 0.0 : 1.0 / batch.size();
  for (const LogitGradient &g: partial) {
    for (const auto &[ctx, v]: g) {
      auto &dst = total[ctx];
      if (dst.empty())
        dst.assign(v.size(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i)
        dst[i] += scale * v[i];
    }
  }
  return total;
}

namespace {
class ExactGradient {
public:
  ExactGradient(const Policy &policy, const Reward &reward)
      : policy_(policy), reward_(reward) { }

  double value(Sequence &prefix, double weight) {
    const std::size_t length = static_cast<std::size_t>(policy_.length());
    if (prefix.size() == length)
      return reward_(prefix);
    if (!prefix.empty() && prefix.back() == kPad) {
      Sequence full = prefix;
      full.resize(length, kPad);
      return reward_(full);
    }

    auto p = policy_.probabilities(prefix);
    std::string ctx(policy_.context(prefix));
    std::vector<double> child(p.size());
    double v = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a) {
      prefix.push_back(policy_.alphabet().symbol(a));
      child[a] = value(prefix, weight * p[a]);
      prefix.pop_back();
      v += p[a] * child[a];
    }
    auto &g = grad_[ctx];
    if (g.empty())
      g.assign(p.size(), 0.0);
    // weight * sum_a p_a V_a (e_a - p)
    for (std::size_t a = 0; a < p.size(); ++a)
      g[a] += weight * p[a] * (child[a] - v);
    return v;
  }

  LogitGradient take() { return std::move(grad_); }

private:
  const Policy &policy_;
  const Reward &reward_;
  LogitGradient grad_;
};
}  // namespace

LogitGradient exact_policy_gradient(const Policy &policy, const Reward &reward) {
  double leaves = std::pow(static_cast<double>(policy.alphabet().size()),
                           policy.length());
  if (leaves > 4e6)
    throw std::invalid_argument("policy too large for exhaustive enumeration");
  ExactGradient ex(policy, reward);
  Sequence prefix;
  ex.value(prefix, 1.0);
  return ex.take();
}

}  // namespace chemdiv::seqgen
