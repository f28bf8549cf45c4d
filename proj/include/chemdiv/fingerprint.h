//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_FINGERPRINT_H_
#define CHEMDIV_FINGERPRINT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chemdiv/smiles.h"

namespace chemdiv {

/// 64-bit FNV-1a over little-endian encodings of the values fed to it.
class StableHasher {
public:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  StableHasher &byte(std::uint8_t b) {
    state_ ^= b;
    state_ *= kPrime;
    return *this;
  }

  StableHasher &u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
      byte(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  StableHasher &i32(std::int32_t v) { return u32(static_cast<std::uint32_t>(v)); }

  StableHasher &u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
      byte(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  StableHasher &bytes(std::string_view s) {
    for (char c: s)
      byte(static_cast<std::uint8_t>(c));
    return *this;
  }

  std::uint64_t digest() const { return state_; }

private:
  std::uint64_t state_ = kOffset;
};

struct FingerprintConfig {
  int radius = 2;
  std::uint32_t nbits = 2048;
  bool use_folded = false;

  /// Throws std::invalid_argument on a bad radius or width.
  void check() const;

  friend bool operator==(const FingerprintConfig &,
                         const FingerprintConfig &) = default;
};

struct Fingerprint {
  std::vector<std::uint64_t> features;  // sorted, unique
  int radius = 0;
  std::uint32_t nbits = 0;
  std::optional<std::vector<std::uint64_t>> folded;  // nbits / 64 words

  FingerprintConfig config() const {
    return { radius, nbits, folded.has_value() };
  }

  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

class IncomparableFingerprints: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

Fingerprint morgan_fingerprint(const Molecule &mol,
                               const FingerprintConfig &cfg = {});

/// Folds `features` into an nbits-wide bitset (bit = h mod nbits).
std::vector<std::uint64_t> fold_features(std::span<const std::uint64_t> features,
                                         std::uint32_t nbits);

double tanimoto_similarity(const Fingerprint &a, const Fingerprint &b);
double tanimoto_distance(const Fingerprint &a, const Fingerprint &b);

/// Unchecked kernels used by the pairwise loops.
std::size_t intersection_size(std::span<const std::uint64_t> a,
                              std::span<const std::uint64_t> b);
double set_tanimoto(std::span<const std::uint64_t> a,
                    std::span<const std::uint64_t> b);
double bitset_tanimoto(std::span<const std::uint64_t> a,
                       std::span<const std::uint64_t> b);

/// Binary cache: header {"CDFP", u16 version, u16 radius, u32 nbits,
/// u8 folded, u64 count}, then {u32 feature_count, u64 features[]} per record, all
/// little-endian.
void write_fingerprint_cache(std::ostream &out, const FingerprintConfig &cfg,
                             std::span<const Fingerprint> fps);
std::vector<Fingerprint> read_fingerprint_cache(std::istream &in,
                                                FingerprintConfig *cfg = nullptr);

inline constexpr std::uint16_t kFingerprintCacheVersion = 1;

}  // namespace chemdiv

#endif  // CHEMDIV_FINGERPRINT_H_
