//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "chemdiv/fingerprint.h"

namespace chemdiv {

void FingerprintConfig::check() const {
  if (radius < 0)
    throw std::invalid_argument("fingerprint radius must be >= 0");
  if (nbits < 64 || nbits > 65536 || !std::has_single_bit(nbits))
    throw std::invalid_argument(
        "fingerprint width must be a power of two in [64, 65536], got "
        + std::to_string(nbits));
}

namespace {
using BondSet = std::vector<std::uint64_t>;

void set_bit(BondSet &s, int bond) {
  s[bond / 64] |= std::uint64_t { 1 } << (bond % 64);
}

void merge_into(BondSet &dst, const BondSet &src) {
  for (std::size_t w = 0; w < dst.size(); ++w)
    dst[w] |= src[w];
}

std::uint64_t initial_invariant(const Molecule &mol, int atom) {
  const Atom &a = mol.atoms()[atom];
  return StableHasher()
      .u32(0)
      .u32(static_cast<std::uint32_t>(atomic_number(a.element)))
      .u32(static_cast<std::uint32_t>(mol.degree(atom)))
      .i32(a.formal_charge)
      .u32(static_cast<std::uint32_t>(a.explicit_hydrogens))
      .byte(a.aromatic ? 1 : 0)
      .byte(a.in_ring ? 1 : 0)
      .digest();
}
}  // namespace

Fingerprint morgan_fingerprint(const Molecule &mol,
                               const FingerprintConfig &cfg) {
  cfg.check();
  const int n = mol.num_atoms();
  const std::size_t words = (mol.num_bonds() + 63) / 64;

  std::vector<std::uint64_t> invariants(n);
  std::vector<std::uint64_t> features;
  for (int i = 0; i < n; ++i) {
    invariants[i] = initial_invariant(mol, i);
    features.push_back(invariants[i]);
  }

  // Environments already represented; an environment covering the same
  // bonds as an earlier one contributes no new feature.
  std::set<BondSet> seen;
  std::vector<BondSet> env(n, BondSet(words, 0));
  seen.insert(BondSet(words, 0));

  for (int r = 1; r <= cfg.radius; ++r) {
    struct Candidate {
      BondSet bonds;
      std::uint64_t hash;
    };
    std::vector<Candidate> candidates(n);
    std::vector<std::pair<int, std::uint64_t>> nbr;

    for (int i = 0; i < n; ++i) {
      BondSet bonds = env[i];
      nbr.clear();
      for (auto [w, b]: mol.neighbors(i)) {
        set_bit(bonds, b);
        merge_into(bonds, env[w]);
        nbr.emplace_back(bond_code(mol.bonds()[b].order), invariants[w]);
      }
      std::sort(nbr.begin(), nbr.end());

      StableHasher h;
      h.u32(static_cast<std::uint32_t>(r)).u64(invariants[i]);
      h.u32(static_cast<std::uint32_t>(nbr.size()));
      for (auto [code, inv]: nbr)
        h.u32(static_cast<std::uint32_t>(code)).u64(inv);
      candidates[i] = { std::move(bonds), h.digest() };
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::tie(candidates[a].bonds, candidates[a].hash)
             < std::tie(candidates[b].bonds, candidates[b].hash);
    });
    for (int i: order) {
      if (seen.insert(candidates[i].bonds).second)
        features.push_back(candidates[i].hash);
    }

    for (int i = 0; i < n; ++i) {
      invariants[i] = candidates[i].hash;
      env[i] = std::move(candidates[i].bonds);
    }
  }

  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());

  Fingerprint fp;
  fp.radius = cfg.radius;
  fp.nbits = cfg.nbits;
  if (cfg.use_folded)
    fp.folded = fold_features(features, cfg.nbits);
  fp.features = std::move(features);
  return fp;
}

std::vector<std::uint64_t> fold_features(std::span<const std::uint64_t> features,
                                         std::uint32_t nbits) {
  std::vector<std::uint64_t> bits(nbits / 64, 0);
  for (std::uint64_t h: features) {
    std::uint64_t bit = h % nbits;
    bits[bit / 64] |= std::uint64_t { 1 } << (bit % 64);
  }
  return bits;
}

std::size_t intersection_size(std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> b) {
  std::size_t i = 0, j = 0, common = 0;
  const std::size_t na = a.size(), nb = b.size();
  while (i < na && j < nb) {
    const std::uint64_t x = a[i], y = b[j];
    common += x == y;
    i += x <= y;
    j += y <= x;
  }
  return common;
}

double set_tanimoto(std::span<const std::uint64_t> a,
                    std::span<const std::uint64_t> b) {
  const std::size_t common = intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - common;
  if (uni == 0)
    return 1.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double bitset_tanimoto(std::span<const std::uint64_t> a,
                       std::span<const std::uint64_t> b) {
  std::size_t common = 0, uni = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    common += std::popcount(a[w] & b[w]);
    uni += std::popcount(a[w] | b[w]);
  }
  if (uni == 0)
    return 1.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double tanimoto_similarity(const Fingerprint &a, const Fingerprint &b) {
  if (a.config() != b.config())
    throw IncomparableFingerprints(
        "fingerprints were built with different configurations");
  if (a.folded)
    return bitset_tanimoto(*a.folded, *b.folded);
  return set_tanimoto(a.features, b.features);
}

double tanimoto_distance(const Fingerprint &a, const Fingerprint &b) {
  return 1.0 - tanimoto_similarity(a, b);
}

}  // namespace chemdiv
