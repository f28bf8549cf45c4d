//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <set>
#include <sstream>
#include <string>

#include <doctest.h>

#include "chemdiv/random.h"
#include "chemdiv/smiles.h"
#include "support/support.h"

using namespace chemdiv;

namespace {
ParseErrorKind error_kind(std::string_view s) {
  ParseResult r = parse(s);
  REQUIRE_FALSE(r.ok());
  return r.error().kind;
}

std::size_t error_position(std::string_view s) {
  ParseResult r = parse(s);
  REQUIRE_FALSE(r.ok());
  return r.error().position;
}
}  // namespace

TEST_CASE("parse reads a linear chain") {
  Molecule m = parse_or_throw("CCO");
  REQUIRE(m.num_atoms() == 3);
  CHECK(m.atoms()[0].element == Element::kC);
  CHECK(m.atoms()[1].element == Element::kC);
  CHECK(m.atoms()[2].element == Element::kO);
  REQUIRE(m.num_bonds() == 2);
  for (const Bond &b: m.bonds())
    CHECK(b.order == BondOrder::kSingle);
  CHECK(m.source() == "CCO");
}

TEST_CASE("parse accepts published generator samples") {
  for (const auto &s: test::reference_samples()) {
    CAPTURE(s);
    CHECK(parse(s).ok());
  }
  CHECK(parse("CC[C@H]1CCN(Cc2ccccc2)c1").ok());
}

TEST_CASE("parse reports unmatched ring closures") {
  CHECK(error_kind("C1CC") == ParseErrorKind::kUnmatchedRingClosure);
  CHECK(error_position("C1CC") == 1);
  CHECK(error_kind("C%12CC") == ParseErrorKind::kUnmatchedRingClosure);
  CHECK(error_kind("C=1CC-1") == ParseErrorKind::kUnmatchedRingClosure);
  CHECK(validate("C1CC=1"));
  CHECK(error_kind("C12CC12") == ParseErrorKind::kUnmatchedRingClosure);
}

TEST_CASE("parse reports parenthesis errors") {
  CHECK(error_kind("CC(C") == ParseErrorKind::kUnmatchedParenthesis);
  CHECK(error_kind("CC)C") == ParseErrorKind::kUnmatchedParenthesis);
  CHECK(error_kind("C()C") == ParseErrorKind::kUnmatchedParenthesis);
  CHECK(error_kind("(C)C") == ParseErrorKind::kUnmatchedParenthesis);
}

TEST_CASE("parse reports bracket atom errors") {
  CHECK(error_kind("[Xx]") == ParseErrorKind::kBadBracketAtom);
  CHECK(error_kind("C[C") == ParseErrorKind::kBadBracketAtom);
  CHECK(error_kind("[]") == ParseErrorKind::kBadBracketAtom);
  CHECK(error_kind("[CH10]") == ParseErrorKind::kBadBracketAtom);
}

TEST_CASE("parse reports unknown symbols and empty input") {
  CHECK(error_kind("") == ParseErrorKind::kEmptyInput);
  CHECK(error_kind("X#Q") == ParseErrorKind::kUnknownSymbol);
  CHECK(error_position("CCX") == 2);
  CHECK(error_kind("CC=") == ParseErrorKind::kUnknownSymbol);
  CHECK(error_kind(".C") == ParseErrorKind::kUnknownSymbol);
  CHECK(error_kind("C..C") == ParseErrorKind::kUnknownSymbol);
  CHECK(error_kind("a") == ParseErrorKind::kUnknownSymbol);
}

TEST_CASE("bracket atoms carry charge and hydrogens, drop isotope and chirality") {
  Molecule m = parse_or_throw("[13CH3+]");
  REQUIRE(m.num_atoms() == 1);
  CHECK(m.atoms()[0].formal_charge == 1);
  CHECK(m.atoms()[0].explicit_hydrogens == 3);

  Molecule n = parse_or_throw("C[N+](C)(C)C");
  CHECK(n.atoms()[1].formal_charge == 1);
  Molecule o = parse_or_throw("[O-]C");
  CHECK(o.atoms()[0].formal_charge == -1);
  Molecule q = parse_or_throw("[O--]");
  CHECK(q.atoms()[0].formal_charge == -2);
  Molecule c = parse_or_throw("C[C@@H](N)O");
  CHECK(c.atoms()[1].explicit_hydrogens == 1);
  CHECK(canonicalize(c) == canonicalize(parse_or_throw("C[C@H](N)O")));
}

TEST_CASE("ring closures, two-digit rings and dot disconnect") {
  Molecule benz = parse_or_throw("c1ccccc1");
  CHECK(benz.num_atoms() == 6);
  CHECK(benz.num_bonds() == 6);
  for (const Atom &a: benz.atoms()) {
    CHECK(a.aromatic);
    CHECK(a.in_ring);
  }
  for (const Bond &b: benz.bonds())
    CHECK(b.order == BondOrder::kAromatic);

  Molecule big = parse_or_throw("C%10CCCCC%10");
  CHECK(big.num_bonds() == 6);

  Molecule salt = parse_or_throw("C[NH3+].[O-]C");
  CHECK(salt.num_components() == 2);

  Molecule chain = parse_or_throw("CC(C)CO");
  CHECK(chain.num_components() == 1);
  for (const Atom &a: chain.atoms())
    CHECK_FALSE(a.in_ring);

  Molecule side = parse_or_throw("C1CC1CC");
  CHECK(side.atoms()[0].in_ring);
  CHECK_FALSE(side.atoms()[4].in_ring);
}

TEST_CASE("explicit bond symbols") {
  Molecule m = parse_or_throw("C=CC#N");
  CHECK(m.bonds()[0].order == BondOrder::kDouble);
  CHECK(m.bonds()[1].order == BondOrder::kSingle);
  CHECK(m.bonds()[2].order == BondOrder::kTriple);
  Molecule a = parse_or_throw("c1ccccc1-c1ccccc1");
  CHECK(a.bonds()[6].order == BondOrder::kSingle);
  Molecule s = parse_or_throw("F/C=C/F");
  CHECK(s.num_bonds() == 3);
}

TEST_CASE("validate examples") {
  CHECK(validate("c1ccccc1"));
  CHECK_FALSE(validate("C(C)(C)(C)(C)C"));
  CHECK_FALSE(validate(""));
  CHECK(validate("C(C)(C)(C)C"));
  CHECK_FALSE(validate("O(C)(C)C"));
  CHECK(validate("C[O+](C)C"));
  CHECK(validate("C[N+](C)(C)C"));
  CHECK_FALSE(validate("CN(C)(C)C"));
  CHECK(validate("CP(C)(C)(C)C"));
  CHECK(validate("CS(=O)(=O)C"));
  CHECK_FALSE(validate("FCl(C)"));
  CHECK_FALSE(validate("C=C=C=C(=C)=C"));
  CHECK(validate("c1ccoc1"));
  CHECK(validate("c1cc[nH]c1"));
  CHECK_FALSE(validate("[CH5]"));
  CHECK(validate("[CH4]"));
  CHECK(validate("[H][H]"));
  CHECK_FALSE(validate("[H]([H])[H]"));
}

TEST_CASE("valence violations carry the offending atom position") {
  ParseResult r = parse("CCC(C)(C)(C)C");
  REQUIRE_FALSE(r.ok());
  CHECK(r.error().kind == ParseErrorKind::kValenceViolation);
  CHECK(r.error().position == 2);
}

TEST_CASE("validate never crashes on random bytes") {
  const std::string pool = "CNOSPFIBrclnosbp()[]=#:-+@%0123456789.H/\\ x\t\xff";
  SeedStream rng(42);
  std::size_t accepted = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng.below(24));
    for (int k = 0; k < len; ++k) {
      if (rng.below(10) == 0)
        s += static_cast<char>(rng.below(256));
      else
        s += pool[rng.below(pool.size())];
    }
    ParseResult r = parse(s);
    if (r.ok()) {
      ++accepted;
      CHECK(r.value().num_atoms() > 0);
    } else {
      CHECK(r.error().position <= s.size());
    }
  }
  CHECK(accepted > 0);
}

TEST_CASE("canonicalize is spelling independent") {
  CHECK(canonicalize(parse_or_throw("OCC")) == canonicalize(parse_or_throw("CCO")));
  CHECK(canonicalize(parse_or_throw("c1ccccc1"))
        == canonicalize(parse_or_throw("c1ccc(cc1)")));
  CHECK(canonicalize(parse_or_throw("C1CCCCC1N"))
        == canonicalize(parse_or_throw("NC1CCCCC1")));
  CHECK(canonicalize(parse_or_throw("OC(=O)c1ccccc1"))
        == canonicalize(parse_or_throw("c1ccc(cc1)C(O)=O")));
  CHECK(canonicalize(parse_or_throw("CCO")) != canonicalize(parse_or_throw("COC")));
}

TEST_CASE("corpus round trip, idempotence and rewrite invariance") {
  const auto &corpus = test::corpus_smiles();
  REQUIRE(corpus.size() >= 200);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(corpus[i]);
    Molecule m = parse_or_throw(corpus[i]);
    std::string c = canonicalize(m);
    ParseResult back = parse(c);
    REQUIRE(back.ok());
    CHECK(test::graph_signature(back.value()) == test::graph_signature(m));
    CHECK(canonicalize(back.value()) == c);
    if (i < 200) {
      std::string rw = random_rewrite(m, 1000 + i);
      ParseResult rp = parse(rw);
      REQUIRE(rp.ok());
      CHECK(test::graph_signature(rp.value()) == test::graph_signature(m));
      CHECK(canonicalize(rp.value()) == c);
    }
  }
}

TEST_CASE("canonicalize on synthetic molecules") {
  for (const auto &s: test::synthetic_smiles(300, 5)) {
    ParseResult r = parse(s);
    CAPTURE(s);
    REQUIRE(r.ok());
    const Molecule &m = r.value();
    const std::string c = canonicalize(m);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(s);
      CHECK(canonicalize(parse_or_throw(random_rewrite(m, seed))) == c);
    }
  }
}

TEST_CASE("random_rewrite is deterministic and varies with the seed") {
  Molecule m = parse_or_throw("CCO");
  CHECK(random_rewrite(m, 1) == random_rewrite(m, 1));
  CHECK(test::graph_signature(parse_or_throw(random_rewrite(m, 1)))
        == test::graph_signature(m));

  Molecule b = parse_or_throw("CC(C)CO");
  std::set<std::string> spellings;
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
    spellings.insert(random_rewrite(b, seed));
  CHECK(spellings.size() >= 2);
}

TEST_CASE("conciseness") {
  const std::string canon = canonicalize(parse_or_throw("CC(=O)Oc1ccccc1C(=O)O"));
  CHECK(conciseness(canon) == 1.0);
  CHECK(conciseness("X#Q") == 0.0);
  CHECK(conciseness("") == 0.0);
  // 20 characters whose canonical form has 15.
  const std::string padded = "C-C-C-C-C-CCCCCCCCCC";
  REQUIRE(padded.size() == 20);
  REQUIRE(canonicalize(parse_or_throw(padded)).size() == 15);
  CHECK(conciseness(padded) == doctest::Approx(0.75));

  SeedStream rng(3);
  const std::string pool = "CNO()=c1";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    for (int k = 0, n = static_cast<int>(rng.below(16)); k < n; ++k)
      s += pool[rng.below(pool.size())];
    double c = conciseness(s);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("SMILES file reader") {
  std::istringstream in("# comment\n\nCCO\tethanol\n  c1ccccc1  \nCC(\tbroken\r\n");
  auto recs = read_smiles_records(in);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].smiles == "CCO");
  CHECK(recs[0].id == "ethanol");
  CHECK(recs[0].line == 3);
  CHECK(recs[1].smiles == "c1ccccc1");
  CHECK(recs[2].smiles == "CC(");
  CHECK(recs[2].id == "broken");
}
