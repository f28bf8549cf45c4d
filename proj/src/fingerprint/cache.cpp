//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "chemdiv/fingerprint.h"

namespace chemdiv {
namespace {
template <class T>
void put_le(std::ostream &out, T v) {
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<char>(static_cast<std::uint64_t>(v) >> (8 * i));
  out.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream &in) {
  std::array<unsigned char, sizeof(T)> buf;
  if (!in.read(reinterpret_cast<char *>(buf.data()), buf.size()))
    throw std::runtime_error("truncated fingerprint cache");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}
}  // namespace

void write_fingerprint_cache(std::ostream &out, const FingerprintConfig &cfg,
                             std::span<const Fingerprint> fps) {
  out.write("CDFP", 4);
  put_le<std::uint16_t>(out, kFingerprintCacheVersion);
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(cfg.radius));
  put_le<std::uint32_t>(out, cfg.nbits);
  put_le<std::uint8_t>(out, cfg.use_folded ? 1 : 0);
  put_le<std::uint64_t>(out, fps.size());
  for (const Fingerprint &fp: fps) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(fp.features.size()));
    for (std::uint64_t h: fp.features)
      put_le<std::uint64_t>(out, h);
  }
  if (!out)
    throw std::runtime_error("failed writing fingerprint cache");
}

std::vector<Fingerprint> read_fingerprint_cache(std::istream &in,
                                                FingerprintConfig *cfg_out) {
  char magic[4];
  if (!in.read(magic, 4) || std::string_view(magic, 4) != "CDFP")
    throw std::runtime_error("not a fingerprint cache (bad magic)");
  auto version = get_le<std::uint16_t>(in);
  if (version != kFingerprintCacheVersion)
    throw std::runtime_error("unsupported fingerprint cache version "
                             + std::to_string(version));

  FingerprintConfig cfg;
  cfg.radius = get_le<std::uint16_t>(in);
  cfg.nbits = get_le<std::uint32_t>(in);
  cfg.use_folded = get_le<std::uint8_t>(in) != 0;
  cfg.check();
  auto count = get_le<std::uint64_t>(in);

  std::vector<Fingerprint> fps;
  for (std::uint64_t r = 0; r < count; ++r) {
    Fingerprint fp;
    fp.radius = cfg.radius;
    fp.nbits = cfg.nbits;
    auto n = get_le<std::uint32_t>(in);
    fp.features.reserve(n);
    for (std::uint32_t k = 0; k < n; ++k)
      fp.features.push_back(get_le<std::uint64_t>(in));
    if (cfg.use_folded)
      fp.folded = fold_features(fp.features, cfg.nbits);
    fps.push_back(std::move(fp));
  }
  if (cfg_out)
    *cfg_out = cfg;
  return fps;
}

}  // namespace chemdiv
