//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "chemdiv/seqgen/discriminator.h"

namespace chemdiv::seqgen {

Discriminator::Discriminator(int n): n_(n) {
  if (n < 1)
    throw std::invalid_argument("n-gram size must be >= 1");
}

std::map<std::string, int> Discriminator::features(std::string_view seq) const {
  std::map<std::string, int> counts;
  std::string_view text = strip_pad(seq);
  const std::size_t n = static_cast<std::size_t>(n_);
  for (std::size_t i = 0; i + n <= text.size(); ++i)
    ++counts[std::string(text.substr(i, n))];
  return counts;
}

double Discriminator::logit(std::string_view seq) const {
  double z = bias_;
  for (const auto &[gram, count]: features(seq)) {
    auto it = weights_.find(gram);
    if (it != weights_.end())
      z += count * it->second;
  }
  return z;
}

namespace {
double sigmoid(double z) {
  if (z >= 0)
    return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(sigmoid(z)) without overflow.
double log_sigmoid(double z) {
  if (z >= 0)
    return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}
}  // namespace

double Discriminator::score(std::string_view seq) const {
  return sigmoid(logit(seq));
}

double discriminator_objective(const Discriminator &disc,
                               std::span<const Sequence> real,
                               std::span<const Sequence> generated) {
  if (real.empty() || generated.empty())
    throw std::invalid_argument("discriminator objective needs both corpora");
  double r = 0.0, g = 0.0;
  for (const Sequence &s: real)
    r += log_sigmoid(disc.logit(s));
  for (const Sequence &s: generated)
    g += log_sigmoid(-disc.logit(s));
  return r / real.size() + g / generated.size();
}

Discriminator discriminator_train(Discriminator disc,
                                  std::span<const Sequence> real,
                                  std::span<const Sequence> generated,
                                  int epochs, double step) {
  if (real.empty() || generated.empty())
    throw std::invalid_argument("discriminator training needs both corpora");

  using Features = std::map<std::string, int>;
  std::vector<Features> fr, fg;
  double max_real = 0.0, max_gen = 0.0;
  auto squared_norm = [](const Features &f) {
    double s = 1.0;  // bias input
    for (const auto &[_, c]: f)
      s += static_cast<double>(c) * c;
    return s;
  };
  for (const Sequence &s: real) {
    fr.push_back(disc.features(s));
    max_real = std::max(max_real, squared_norm(fr.back()));
  }
  for (const Sequence &s: generated) {
    fg.push_back(disc.features(s));
    max_gen = std::max(max_gen, squared_norm(fg.back()));
  }

  // The Hessian of each mean log-likelihood term is bounded by
  // 0.25 * max ||x||^2, so a step of at most 1 / L cannot decrease the
  // objective.
  const double curvature = 0.25 * (max_real + max_gen);
  const double eta = std::min(step, 1.0 / curvature);

  auto logit_of = [&](const Features &f) {
    double z = disc.bias();
    for (const auto &[gram, count]: f) {
      auto it = disc.weights().find(gram);
      if (it != disc.weights().end())
        z += count * it->second;
    }
    return z;
  };

  for (int e = 0; e < epochs; ++e) {
    std::map<std::string, double> grad;
    double grad_bias = 0.0;
    const double wr = 1.0 / fr.size(), wg = 1.0 / fg.size();
    for (const Features &f: fr) {
      double coef = wr * (1.0 - sigmoid(logit_of(f)));
      grad_bias += coef;
      for (const auto &[gram, count]: f)
        grad[gram] += coef * count;
    }
    for (const Features &f: fg) {
      double coef = -wg * sigmoid(logit_of(f));
      grad_bias += coef;
      for (const auto &[gram, count]: f)
        grad[gram] += coef * count;
    }

    disc.set_bias(disc.bias() + eta * grad_bias);
    for (const auto &[gram, g]: grad) {
      auto it = disc.weights().find(gram);
      double w = it == disc.weights().end() ? 0.0 : it->second;
      disc.set_weight(gram, w + eta * g);
    }
  }
  return disc;
}

double discriminator_accuracy(const Discriminator &disc,
                              std::span<const Sequence> real,
                              std::span<const Sequence> generated) {
  std::size_t correct = 0;
  for (const Sequence &s: real)
    correct += disc.score(s) > 0.5;
  for (const Sequence &s: generated)
    correct += disc.score(s) < 0.5;
  const std::size_t total = real.size() + generated.size();
  return total == 0 ? 0.0 : static_cast<double>(correct) / total;
}

}  // namespace chemdiv::seqgen
