//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemdiv/smiles.h"

namespace chemdiv {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
  case ParseErrorKind::kUnknownSymbol:
    return "unknown_symbol";
  case ParseErrorKind::kUnmatchedRingClosure:
    return "unmatched_ring_closure";
  case ParseErrorKind::kUnmatchedParenthesis:
    return "unmatched_parenthesis";
  case ParseErrorKind::kBadBracketAtom:
    return "bad_bracket_atom";
  case ParseErrorKind::kValenceViolation:
    return "valence_violation";
  case ParseErrorKind::kEmptyInput:
    return "empty_input";
  }
  return "unknown";
}

std::string ParseError::message() const {
  return std::string(to_string(kind)) + " at position "
         + std::to_string(position);
}

const Molecule &ParseResult::value() const & {
  if (!ok())
    throw SmilesError(std::get<ParseError>(value_));
  return std::get<Molecule>(value_);
}

Molecule &&ParseResult::value() && {
  if (!ok())
    throw SmilesError(std::get<ParseError>(value_));
  return std::get<Molecule>(std::move(value_));
}

const ParseError &ParseResult::error() const {
  return std::get<ParseError>(value_);
}

namespace {
std::optional<Element> aromatic_element(char c) {
  switch (c) {
  case 'b':
    return Element::kB;
  case 'c':
    return Element::kC;
  case 'n':
    return Element::kN;
  case 'o':
    return Element::kO;
  case 'p':
    return Element::kP;
  case 's':
    return Element::kS;
  default:
    return std::nullopt;
  }
}

struct ElementMatch {
  Element element;
  std::size_t length;
};

// Longest match among supported uppercase symbols; `allow_h` for brackets.
std::optional<ElementMatch> match_element(std::string_view s, std::size_t i,
                                          bool allow_h) {
  if (i >= s.size())
    return std::nullopt;
  char c = s[i];
  char next = i + 1 < s.size() ? s[i + 1] : '\0';
  switch (c) {
  case 'C':
    if (next == 'l')
      return ElementMatch { Element::kCl, 2 };
    return ElementMatch { Element::kC, 1 };
  case 'B':
    if (next == 'r')
      return ElementMatch { Element::kBr, 2 };
    return ElementMatch { Element::kB, 1 };
  case 'N':
    return ElementMatch { Element::kN, 1 };
  case 'O':
    return ElementMatch { Element::kO, 1 };
  case 'P':
    return ElementMatch { Element::kP, 1 };
  case 'S':
    return ElementMatch { Element::kS, 1 };
  case 'F':
    return ElementMatch { Element::kF, 1 };
  case 'I':
    return ElementMatch { Element::kI, 1 };
  case 'H':
    if (allow_h)
      return ElementMatch { Element::kH, 1 };
    return std::nullopt;
  default:
    return std::nullopt;
  }
}

std::optional<BondOrder> bond_symbol(char c) {
  switch (c) {
  case '-':
  case '/':
  case '\\':
    return BondOrder::kSingle;
  case '=':
    return BondOrder::kDouble;
  case '#':
    return BondOrder::kTriple;
  case ':':
    return BondOrder::kAromatic;
  default:
    return std::nullopt;
  }
}

class Parser {
public:
  explicit Parser(std::string_view s): s_(s) { }

  ParseResult run() {
    if (s_.empty())
      return ParseError { 0, ParseErrorKind::kEmptyInput };

    while (pos_ < s_.size()) {
      if (auto err = step())
        return *err;
    }

    if (pending_)
      return ParseError { pending_pos_, ParseErrorKind::kUnknownSymbol };
    if (!branches_.empty())
      return ParseError { branches_.back().open_pos,
                          ParseErrorKind::kUnmatchedParenthesis };
    for (const RingSlot &slot: rings_)
      if (slot.atom >= 0)
        return ParseError { slot.pos, ParseErrorKind::kUnmatchedRingClosure };
    if (prev_ < 0)
      return ParseError { dot_pos_, ParseErrorKind::kUnknownSymbol };

    Molecule mol = std::move(builder_).finish(std::string(s_));
    if (auto bad = find_valence_violation(mol))
      return ParseError { atom_pos_[*bad], ParseErrorKind::kValenceViolation };
    return mol;
  }

private:
  struct Branch {
    int atom;
    std::size_t open_pos;
  };

  struct RingSlot {
    int atom = -1;
    std::optional<BondOrder> order;
    std::size_t pos = 0;
  };

  std::optional<ParseError> fail(ParseErrorKind kind) const {
    return ParseError { pos_, kind };
  }

  std::optional<ParseError> step() {
    const char c = s_[pos_];

    if (c == '[')
      return bracket_atom();

    if (auto elem = match_element(s_, pos_, false)) {
      Atom atom;
      atom.element = elem->element;
      add_atom(atom, pos_);
      pos_ += elem->length;
      return std::nullopt;
    }

    if (auto elem = aromatic_element(c)) {
      Atom atom;
      atom.element = *elem;
      atom.aromatic = true;
      add_atom(atom, pos_);
      ++pos_;
      return std::nullopt;
    }

    if (auto order = bond_symbol(c)) {
      if (prev_ < 0 || pending_)
        return fail(ParseErrorKind::kUnknownSymbol);
      pending_ = order;
      pending_pos_ = pos_++;
      return std::nullopt;
    }

    if (c == '(') {
      if (prev_ < 0 || pending_)
        return fail(ParseErrorKind::kUnmatchedParenthesis);
      branches_.push_back({ prev_, pos_ });
      last_open_ = true;
      ++pos_;
      return std::nullopt;
    }

    if (c == ')') {
      if (branches_.empty() || last_open_)
        return fail(ParseErrorKind::kUnmatchedParenthesis);
      if (pending_)
        return ParseError { pending_pos_, ParseErrorKind::kUnknownSymbol };
      prev_ = branches_.back().atom;
      branches_.pop_back();
      ++pos_;
      return std::nullopt;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '%')
      return ring_closure();

    if (c == '.') {
      if (prev_ < 0 || pending_ || !branches_.empty())
        return fail(ParseErrorKind::kUnknownSymbol);
      prev_ = -1;
      dot_pos_ = pos_++;
      return std::nullopt;
    }

    return fail(ParseErrorKind::kUnknownSymbol);
  }

  void add_atom(const Atom &atom, std::size_t pos) {
    int idx = builder_.add_atom(atom);
    atom_pos_.push_back(pos);
    aromatic_.push_back(atom.aromatic);
    if (prev_ >= 0) {
      BondOrder order = pending_.value_or(default_order(prev_, idx));
      builder_.add_bond(prev_, idx, order);
    }
    pending_.reset();
    prev_ = idx;
    last_open_ = false;
  }

  BondOrder default_order(int a, int b) const {
    return aromatic_[a] && aromatic_[b] ? BondOrder::kAromatic
                                        : BondOrder::kSingle;
  }

  std::optional<ParseError> ring_closure() {
    if (prev_ < 0)
      return fail(ParseErrorKind::kUnmatchedRingClosure);

    const std::size_t start = pos_;
    int number;
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size()
          || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))
          || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
        return fail(ParseErrorKind::kUnknownSymbol);
      number = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = s_[pos_] - '0';
      ++pos_;
    }

    RingSlot &slot = rings_[number];
    if (slot.atom < 0) {
      slot.atom = prev_;
      slot.order = pending_;
      slot.pos = start;
      pending_.reset();
      return std::nullopt;
    }

    if (slot.order && pending_ && *slot.order != *pending_)
      return ParseError { start, ParseErrorKind::kUnmatchedRingClosure };
    std::optional<BondOrder> order = slot.order ? slot.order : pending_;
    BondOrder resolved = order.value_or(default_order(slot.atom, prev_));
    if (!builder_.add_bond(slot.atom, prev_, resolved))
      return ParseError { start, ParseErrorKind::kUnmatchedRingClosure };

    slot = RingSlot {};
    pending_.reset();
    return std::nullopt;
  }

  std::optional<ParseError> bracket_atom() {
    const std::size_t open = pos_;
    std::size_t i = pos_ + 1;
    auto bad = [&]() {
      return ParseError { std::min(i, s_.size()),
                          ParseErrorKind::kBadBracketAtom };
    };

    while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])))
      ++i;

    Atom atom;
    if (i >= s_.size())
      return bad();
    if (auto elem = aromatic_element(s_[i])) {
      atom.element = *elem;
      atom.aromatic = true;
      ++i;
    } else if (auto m = match_element(s_, i, true)) {
      atom.element = m->element;
      i += m->length;
    } else {
      return bad();
    }

    if (i < s_.size() && s_[i] == '@') {
      ++i;
      if (i < s_.size() && s_[i] == '@')
        ++i;
    }

    if (i < s_.size() && s_[i] == 'H') {
      ++i;
      atom.explicit_hydrogens = 1;
      if (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])))
        atom.explicit_hydrogens = s_[i++] - '0';
    }

    if (i < s_.size() && (s_[i] == '+' || s_[i] == '-')) {
      const char sign = s_[i++];
      int magnitude = 1;
      if (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) {
        magnitude = s_[i++] - '0';
        if (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])))
          magnitude = magnitude * 10 + (s_[i++] - '0');
      } else {
        while (i < s_.size() && s_[i] == sign) {
          ++magnitude;
          ++i;
        }
      }
      if (magnitude > 15)
        return bad();
      atom.formal_charge = sign == '+' ? magnitude : -magnitude;
    }

    if (i >= s_.size() || s_[i] != ']')
      return bad();

    add_atom(atom, open);
    pos_ = i + 1;
    return std::nullopt;
  }

  std::string_view s_;
  std::size_t pos_ = 0;

  MoleculeBuilder builder_;
  std::vector<std::size_t> atom_pos_;
  std::vector<bool> aromatic_;

  int prev_ = -1;
  std::optional<BondOrder> pending_;
  std::size_t pending_pos_ = 0;
  std::size_t dot_pos_ = 0;
  bool last_open_ = false;
  std::vector<Branch> branches_;
  std::array<RingSlot, 100> rings_ {};

};
}  // namespace

ParseResult parse(std::string_view smiles) {
  return Parser(smiles).run();
}

Molecule parse_or_throw(std::string_view smiles) {
  return std::move(parse(smiles)).value();
}

bool validate(std::string_view smiles) { return parse(smiles).ok(); }

}  // namespace chemdiv
