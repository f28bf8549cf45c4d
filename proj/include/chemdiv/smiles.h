//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_SMILES_H_
#define CHEMDIV_SMILES_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace chemdiv {

enum class Element : std::uint8_t {
  kH = 1,
  kB = 5,
  kC = 6,
  kN = 7,
  kO = 8,
  kF = 9,
  kP = 15,
  kS = 16,
  kCl = 17,
  kBr = 35,
  kI = 53,
};

std::string_view element_symbol(Element e);
int atomic_number(Element e);

/// Maximum standard valence before charge adjustment.
int max_valence(Element e);

struct Atom {
  Element element = Element::kC;
  bool aromatic = false;
  int formal_charge = 0;
  int explicit_hydrogens = 0;
  bool in_ring = false;

  friend bool operator==(const Atom &, const Atom &) = default;
};

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

/// Stable numeric code used in hashing and ranking.
constexpr int bond_code(BondOrder o) { return static_cast<int>(o); }

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const { return atom == begin ? end : begin; }
};

class Molecule {
public:
  struct Neighbor {
    int atom;
    int bond;
  };

  Molecule() = default;

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const std::vector<Neighbor> &neighbors(int atom) const {
    return adjacency_[atom];
  }
  const std::string &source() const { return source_; }

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  int degree(int atom) const {
    return static_cast<int>(adjacency_[atom].size());
  }

  /// Bond index joining a and b, or -1.
  int find_bond(int a, int b) const;

  /// Number of connected components.
  int num_components() const;

private:
  friend class MoleculeBuilder;

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::string source_;
};

/// Incremental graph construction. `finish` perceives ring membership.
class MoleculeBuilder {
public:
  int add_atom(const Atom &atom);
  /// Returns false when the pair is already bonded or a == b.
  bool add_bond(int a, int b, BondOrder order);
  Molecule finish(std::string source) &&;

  int num_atoms() const { return static_cast<int>(mol_.atoms_.size()); }

private:
  Molecule mol_;
};

enum class ParseErrorKind {
  kUnknownSymbol,
  kUnmatchedRingClosure,
  kUnmatchedParenthesis,
  kBadBracketAtom,
  kValenceViolation,
  kEmptyInput,
};

std::string_view to_string(ParseErrorKind kind);

struct ParseError {
  std::size_t position = 0;
  ParseErrorKind kind = ParseErrorKind::kUnknownSymbol;

  std::string message() const;
};

/// Result of `parse`: exactly one of a molecule or an error.
class ParseResult {
public:
  ParseResult(Molecule mol): value_(std::move(mol)) { }
  ParseResult(ParseError err): value_(err) { }

  bool ok() const { return std::holds_alternative<Molecule>(value_); }
  explicit operator bool() const { return ok(); }

  const Molecule &value() const &;
  Molecule &&value() &&;
  const ParseError &error() const;

private:
  std::variant<Molecule, ParseError> value_;
};

class SmilesError: public std::runtime_error {
public:
  explicit SmilesError(const ParseError &err)
      : std::runtime_error(err.message()), error_(err) { }

  const ParseError &error() const { return error_; }

private:
  ParseError error_;
};

/// Parses a SMILES string. Isotopes and @/@@ chirality in bracket atoms are
/// accepted and discarded; '/' and '\' are read as plain single bonds.
ParseResult parse(std::string_view smiles);

/// Like parse(), but throws SmilesError.
Molecule parse_or_throw(std::string_view smiles);

/// True iff `smiles` parses and passes the valence screen.
bool validate(std::string_view smiles);

/// Checks the valence screen; returns the first offending atom.
std::optional<int> find_valence_violation(const Molecule &mol);

/// Canonical atom ranks, 0..n-1, a function of the graph only.
std::vector<int> canonical_ranks(const Molecule &mol);

/// Emits SMILES by DFS. Each component starts at its lowest-priority atom and
/// neighbors are visited in increasing priority.
std::string write_smiles(const Molecule &mol,
                         const std::vector<std::uint64_t> &priority);

std::string canonicalize(const Molecule &mol);

/// Same graph, different spelling: seeded random start atom and neighbor
/// order.
std::string random_rewrite(const Molecule &mol, std::uint64_t seed);

/// 0 for invalid input, otherwise
/// max(0, 1 - (len(s) - len(canonical)) / len(s)).
double conciseness(std::string_view smiles);

/// One SMILES file record.
struct SmilesRecord {
  std::string smiles;
  std::string id;
  std::size_t line = 0;
};

/// One record per line with an optional tab-separated id. Blank lines and
/// '#' comments are skipped.
std::vector<SmilesRecord> read_smiles_records(std::istream &in);
std::vector<SmilesRecord> read_smiles_file(const std::string &path);

}  // namespace chemdiv

#endif  // CHEMDIV_SMILES_H_
