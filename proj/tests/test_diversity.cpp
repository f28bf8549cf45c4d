//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numeric>

#include <doctest.h>

#include "chemdiv/diversity.h"
#include "chemdiv/errors.h"
#include "chemdiv/random.h"
#include "support/support.h"

using namespace chemdiv;

namespace {
std::vector<Fingerprint> fps_of(const MoleculeSet &set) {
  std::vector<Fingerprint> out;
  for (const auto &r: set.records())
    out.push_back(*r.fingerprint);
  return out;
}

Fingerprint raw(std::vector<std::uint64_t> features) {
  Fingerprint f;
  f.features = std::move(features);
  f.radius = 2;
  f.nbits = 2048;
  return f;
}

MoleculeSet scored(const std::vector<std::string> &smiles,
                   const std::vector<double> &scores, const std::string &label) {
  MoleculeSet set = MoleculeSet::from_smiles(smiles, label);
  for (std::size_t i = 0; i < set.size(); ++i)
    set[i].scores["p"] = scores[i];
  set.fingerprint_all({});
  return set;
}
}  // namespace

TEST_CASE("internal diversity small cases") {
  std::vector<Fingerprint> one = { raw({ 1, 2, 3 }) };
  CHECK(internal_diversity(FingerprintBlock(std::span<const Fingerprint>(one))).value == 0.0);
  CHECK(tanimoto_variance(FingerprintBlock(std::span<const Fingerprint>(one))).value == 0.0);

  // T_d = 0.5 between the two: I = d/2, V = d^2/2.
  std::vector<Fingerprint> two = { raw({ 1, 2, 3 }), raw({ 2, 3, 4 }) };
  FingerprintBlock b2{ std::span<const Fingerprint>(two) };
  CHECK(internal_diversity(b2).value == 0.25);
  CHECK(tanimoto_variance(b2).value == 0.125);
  CHECK(internal_diversity(b2).n_used == 2);

  // A1, A2 singletons: E = d.
  FingerprintBlock s1{ std::span<const Fingerprint>(two.data(), 1) };
  FingerprintBlock s2{ std::span<const Fingerprint>(two.data() + 1, 1) };
  CHECK(external_diversity(s1, s2).value == 0.5);
}

TEST_CASE("empty sets and incompatible configs are errors") {
  FingerprintBlock empty;
  CHECK_THROWS_AS(internal_diversity(empty), DataError);
  CHECK_THROWS_AS(tanimoto_variance(empty), DataError);
  std::vector<Fingerprint> one = { raw({ 1 }) };
  FingerprintBlock b{ std::span<const Fingerprint>(one) };
  CHECK_THROWS_AS(external_diversity(b, empty), DataError);

  Fingerprint other = raw({ 1 });
  other.radius = 3;
  std::vector<Fingerprint> mixed = { raw({ 1 }), other };
  CHECK_THROWS_AS(FingerprintBlock(std::span<const Fingerprint>(mixed)),
                  IncomparableFingerprints);
  std::vector<Fingerprint> r3 = { other };
  CHECK_THROWS_AS(external_diversity(b, FingerprintBlock(std::span<const Fingerprint>(r3))),
                  IncomparableFingerprints);
}

TEST_CASE("diversity matches the pairwise oracle") {
  MoleculeSet set = test::corpus_set(150);
  auto fps = fps_of(set);
  auto m = internal_moments(FingerprintBlock(set));
  CHECK(m.diversity.value == doctest::Approx(test::oracle_internal(fps)).epsilon(1e-13));
  CHECK(m.variance.value
        == doctest::Approx(test::oracle_internal(fps, true)).epsilon(1e-13));
  CHECK(m.variance.value <= m.diversity.value);
  const double n = static_cast<double>(set.size());
  CHECK(m.diversity.value <= (n - 1) / n);

  MoleculeSet other = test::corpus_set(0).subset(std::vector<std::size_t> { 300, 301, 302, 350, 420 });
  auto ofps = fps_of(other);
  CHECK(external_diversity(set, other).value
        == doctest::Approx(test::oracle_external(fps, ofps)).epsilon(1e-13));
  CHECK(external_diversity(set, other).value == external_diversity(other, set).value);
}

TEST_CASE("external of a set with itself equals internal") {
  MoleculeSet set = test::corpus_set(200);
  CHECK(external_diversity(set, set).value == internal_diversity(set).value);
}

TEST_CASE("duplication invariance is exact") {
  MoleculeSet all = test::corpus_set();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto idx = sample_without_replacement(all.size(), 40 + seed * 7, seed);
    MoleculeSet a = all.subset(idx);
    MoleculeSet aa = a.concat(a);
    CHECK(internal_diversity(aa).value == internal_diversity(a).value);
    CHECK(tanimoto_variance(aa).value == tanimoto_variance(a).value);
  }
}

TEST_CASE("results do not depend on the worker count") {
  MoleculeSet set = test::corpus_set();
  const double one = internal_diversity(set, 1).value;
  for (int w: { 2, 3, 8 })
    CHECK(internal_diversity(set, w).value == one);
  CHECK(external_diversity(set, set, 4).value == external_diversity(set, set, 1).value);
}

TEST_CASE("subsampled internal diversity") {
  MoleculeSet set = test::corpus_set();
  auto full = internal_diversity(set);
  auto same = subsampled_internal_diversity(set, set.size(), 9);
  CHECK(same.value == full.value);

  auto a = subsampled_internal_diversity(set, 100, 7);
  auto b = subsampled_internal_diversity(set, 100, 7);
  CHECK(a.value == b.value);
  CHECK(a.subsampled);
  CHECK(a.n_used == 100);
  REQUIRE(a.seed);
  CHECK(*a.seed == 7);
  CHECK(subsampled_internal_diversity(set, 100, 8).value != a.value);

  CHECK_THROWS_AS(subsampled_internal_diversity(set, 0, 1), DataError);
  CHECK_THROWS_AS(subsampled_internal_diversity(set, set.size() + 1, 1), DataError);
}

TEST_CASE("subsampled external diversity") {
  MoleculeSet set = test::corpus_set();
  MoleculeSet small = set.subset(std::vector<std::size_t> { 0, 1, 2, 3 });
  auto e = subsampled_external_diversity(small, set, 3000, 1);
  CHECK_FALSE(e.subsampled);
  CHECK(e.value == external_diversity(small, set).value);
  auto s = subsampled_external_diversity(small, set, 50, 1);
  CHECK(s.subsampled);
  CHECK(s.n_used == 50);
}

TEST_CASE("challenge verdict rules") {
  auto v = make_challenge_verdict(0.000775, 1000, 0.081972, 1000);
  CHECK_FALSE(v.pass);
  REQUIRE(v.ratio);
  CHECK(std::abs(*v.ratio - 0.00946) < 1e-5);

  auto eq = make_challenge_verdict(0.4, 10, 0.4, 10);
  CHECK(eq.pass);
  CHECK(*eq.ratio == 1.0);

  auto deg = make_challenge_verdict(0.9, 1, 0.3, 10);
  CHECK(deg.i_g == 0.0);
  CHECK_FALSE(deg.pass);
  CHECK(deg.n_g == 1);

  auto none = make_challenge_verdict(0.0, 0, 0.0, 0);
  CHECK_FALSE(none.pass);
  CHECK_FALSE(none.ratio);
}

TEST_CASE("challenge_compare filters, compares and checks columns") {
  std::vector<std::string> nature = { "CCO", "c1ccccc1O", "CC(=O)O", "CN1CCNCC1", "ClCCBr" };
  std::vector<double> ns = { 0.9, 0.95, 0.1, 0.85, 0.99 };
  MoleculeSet n = scored(nature, ns, "nature");
  MoleculeSet g = scored(nature, ns, "generated");
  auto same = challenge_compare(g, n, "p", 0.8);
  CHECK(same.pass);
  CHECK(same.n_g == 4);
  CHECK(*same.ratio == 1.0);

  // Near-duplicates above the threshold.
  MoleculeSet dup = scored({ "CCCCCCO", "CCCCCCCO", "CCCCCCO", "CCCCCCCCO" },
                           { 0.9, 0.9, 0.9, 0.9 }, "generated");
  auto fail = challenge_compare(dup, n, "p", 0.8);
  CHECK_FALSE(fail.pass);
  CHECK(*fail.ratio < 0.5);

  auto above_all = challenge_compare(g, n, "p", 0.999);
  CHECK(above_all.n_g == 0);
  CHECK(above_all.n_n == 0);
  CHECK_FALSE(above_all.pass);

  CHECK_THROWS_AS(challenge_compare(g, n, "missing", 0.8), DataError);
}

TEST_CASE("threshold predicate is strict") {
  CHECK(above_threshold(0.81, 0.8));
  CHECK_FALSE(above_threshold(0.8, 0.8));
  CHECK_FALSE(above_threshold(0.2, 0.8));
}

TEST_CASE("molecule sets keep duplicates and invalid records") {
  MoleculeSet s = MoleculeSet::from_smiles(std::vector<std::string> { "CCO", "CCO", "C1CC" });
  CHECK(s.size() == 3);
  CHECK(s.num_valid() == 2);
  CHECK(s.valid_indices() == std::vector<std::size_t> { 0, 1 });
  CHECK(s.valid_subset().size() == 2);
  s.fingerprint_all({});
  CHECK(s[0].fingerprint);
  CHECK_FALSE(s[2].fingerprint);
  CHECK_THROWS_AS(FingerprintBlock { s }, DataError);
}
