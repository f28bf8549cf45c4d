//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chemdiv/smiles.h"

namespace chemdiv {
namespace {
bool is_organic_subset(Element e) { return e != Element::kH; }

void append_atom(std::string &out, const Atom &atom) {
  std::string_view symbol = element_symbol(atom.element);
  if (atom.formal_charge == 0 && atom.explicit_hydrogens == 0
      && is_organic_subset(atom.element)) {
    if (atom.aromatic)
      out += static_cast<char>(symbol[0] - 'A' + 'a');
    else
      out += symbol;
    return;
  }

  out += '[';
  if (atom.aromatic)
    out += static_cast<char>(symbol[0] - 'A' + 'a');
  else
    out += symbol;
  if (atom.explicit_hydrogens > 0) {
    out += 'H';
    if (atom.explicit_hydrogens > 1)
      out += std::to_string(atom.explicit_hydrogens);
  }
  if (atom.formal_charge != 0) {
    out += atom.formal_charge > 0 ? '+' : '-';
    int magnitude = std::abs(atom.formal_charge);
    if (magnitude > 1)
      out += std::to_string(magnitude);
  }
  out += ']';
}

void append_bond(std::string &out, const Molecule &mol, const Bond &bond) {
  const bool both_aromatic =
      mol.atoms()[bond.begin].aromatic && mol.atoms()[bond.end].aromatic;
  switch (bond.order) {
  case BondOrder::kSingle:
    if (both_aromatic)
      out += '-';
    break;
  case BondOrder::kDouble:
    out += '=';
    break;
  case BondOrder::kTriple:
    out += '#';
    break;
  case BondOrder::kAromatic:
    if (!both_aromatic)
      out += ':';
    break;
  }
}

void append_ring_number(std::string &out, int number) {
  if (number < 10) {
    out += static_cast<char>('0' + number);
  } else {
    out += '%';
    out += std::to_string(number);
  }
}

class Writer {
public:
  Writer(const Molecule &mol, const std::vector<std::uint64_t> &priority)
      : mol_(mol), priority_(priority), visited_(mol.num_atoms(), 0),
        bond_seen_(mol.num_bonds(), 0), children_(mol.num_atoms()),
        openings_(mol.num_atoms()), closings_(mol.num_atoms()),
        ring_digit_(mol.num_bonds(), -1) { }

  std::string run() {
    std::vector<int> order(mol_.num_atoms());
    for (int i = 0; i < mol_.num_atoms(); ++i)
      order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return priority_[a] < priority_[b]; });

    std::string out;
    for (int root: order) {
      if (visited_[root])
        continue;
      build_tree(root);
      if (!out.empty())
        out += '.';
      emit(root, out);
    }
    return out;
  }

private:
  std::vector<Molecule::Neighbor> sorted_neighbors(int atom) const {
    auto nbs = mol_.neighbors(atom);
    std::stable_sort(nbs.begin(), nbs.end(), [&](const auto &a, const auto &b) {
      return priority_[a.atom] < priority_[b.atom];
    });
    return nbs;
  }

  // DFS classifying tree edges and ring-closure (back) edges.
  void build_tree(int root) {
    struct Frame {
      int atom;
      std::vector<Molecule::Neighbor> nbs;
      std::size_t next = 0;
    };
    std::vector<Frame> stack;
    visited_[root] = 1;
    stack.push_back({ root, sorted_neighbors(root) });

    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next == f.nbs.size()) {
        stack.pop_back();
        continue;
      }
      auto [w, bond] = f.nbs[f.next++];
      if (bond_seen_[bond])
        continue;
      bond_seen_[bond] = 1;
      if (visited_[w]) {
        // w is an ancestor of f.atom: w opens, f.atom closes.
        openings_[w].push_back({ f.atom, bond });
        closings_[f.atom].push_back({ w, bond });
        continue;
      }
      visited_[w] = 1;
      children_[f.atom].push_back({ w, bond });
      stack.push_back({ w, sorted_neighbors(w) });
    }
  }

  int allocate_digit() {
    for (int d = 1; d < 100; ++d) {
      if (std::find(used_.begin(), used_.end(), d) == used_.end()) {
        used_.push_back(d);
        return d;
      }
    }
    return -1;
  }

  void release_digit(int d) {
    used_.erase(std::find(used_.begin(), used_.end(), d));
  }

  void emit(int root, std::string &out) {
    // Work list of (atom, incoming bond, open-paren flag) plus close markers.
    struct Item {
      int atom;
      int bond;
      bool paren;
      bool close;
    };
    std::vector<Item> work;
    work.push_back({ root, -1, false, false });

    while (!work.empty()) {
      Item it = work.back();
      work.pop_back();
      if (it.close) {
        out += ')';
        continue;
      }
      if (it.paren)
        out += '(';
      if (it.bond >= 0)
        append_bond(out, mol_, mol_.bonds()[it.bond]);
      append_atom(out, mol_.atoms()[it.atom]);

      auto by_partner = [&](const auto &a, const auto &b) {
        return priority_[a.atom] < priority_[b.atom];
      };
      auto closings = closings_[it.atom];
      std::stable_sort(closings.begin(), closings.end(), by_partner);
      for (auto [_, bond]: closings) {
        append_ring_number(out, ring_digit_[bond]);
        release_digit(ring_digit_[bond]);
      }
      auto openings = openings_[it.atom];
      std::stable_sort(openings.begin(), openings.end(), by_partner);
      for (auto [_, bond]: openings) {
        int digit = allocate_digit();
        ring_digit_[bond] = digit;
        append_bond(out, mol_, mol_.bonds()[bond]);
        append_ring_number(out, digit);
      }

      const auto &kids = children_[it.atom];
      // Push in reverse so the first child is emitted first; all but the
      // last child are parenthesized branches.
      for (std::size_t k = kids.size(); k-- > 0;) {
        bool branch = k + 1 < kids.size();
        if (branch)
          work.push_back({ -1, -1, false, true });
        work.push_back({ kids[k].atom, kids[k].bond, branch, false });
      }
    }
  }

  const Molecule &mol_;
  const std::vector<std::uint64_t> &priority_;
  std::vector<char> visited_;
  std::vector<char> bond_seen_;
  std::vector<std::vector<Molecule::Neighbor>> children_;
  std::vector<std::vector<Molecule::Neighbor>> openings_;
  std::vector<std::vector<Molecule::Neighbor>> closings_;
  std::vector<int> ring_digit_;
  std::vector<int> used_;
};

// Dense ranks of `keys`, preserving their sort order.
template <class Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys, int &classes) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i)
    idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });

  std::vector<int> ranks(n);
  classes = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keys[idx[i - 1]] < keys[idx[i]])
      ++classes;
    ranks[idx[i]] = classes;
  }
  classes = n > 0 ? classes + 1 : 0;
  return ranks;
}

int refine(const Molecule &mol, std::vector<int> &ranks, int classes) {
  const int n = mol.num_atoms();
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  while (true) {
    std::vector<Key> keys(n);
    for (int i = 0; i < n; ++i) {
      keys[i].first = ranks[i];
      for (auto [w, b]: mol.neighbors(i))
        keys[i].second.emplace_back(ranks[w], bond_code(mol.bonds()[b].order));
      std::sort(keys[i].second.begin(), keys[i].second.end());
    }
    int next_classes;
    std::vector<int> next = dense_ranks(keys, next_classes);
    ranks = std::move(next);
    if (next_classes == classes)
      return classes;
    classes = next_classes;
  }
}
}  // namespace

std::vector<int> canonical_ranks(const Molecule &mol) {
  const int n = mol.num_atoms();
  using Invariant = std::tuple<int, int, int, int, int, int>;
  std::vector<Invariant> initial(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atoms()[i];
    initial[i] = { atomic_number(a.element), a.formal_charge, mol.degree(i),
                   a.aromatic ? 1 : 0, a.explicit_hydrogens, a.in_ring ? 1 : 0 };
  }

  int classes;
  std::vector<int> ranks = dense_ranks(initial, classes);
  classes = refine(mol, ranks, classes);

  while (classes < n) {
    // Lowest tied rank; promote its lowest-index member ahead of the rest.
    std::vector<int> count(classes, 0);
    for (int r: ranks)
      ++count[r];
    int tied = 0;
    while (count[tied] < 2)
      ++tied;
    int chosen = -1;
    for (int i = 0; i < n && chosen < 0; ++i)
      if (ranks[i] == tied)
        chosen = i;

    std::vector<std::pair<int, int>> keys(n);
    for (int i = 0; i < n; ++i)
      keys[i] = { ranks[i], ranks[i] == tied && i != chosen ? 1 : 0 };
    ranks = dense_ranks(keys, classes);
    classes = refine(mol, ranks, classes);
  }
  return ranks;
}

std::string write_smiles(const Molecule &mol,
                         const std::vector<std::uint64_t> &priority) {
  return Writer(mol, priority).run();
}

std::string canonicalize(const Molecule &mol) {
  std::vector<int> ranks = canonical_ranks(mol);
  return write_smiles(mol,
                      std::vector<std::uint64_t>(ranks.begin(), ranks.end()));
}

std::string random_rewrite(const Molecule &mol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> priority(mol.num_atoms());
  for (auto &p: priority)
    p = rng();
  return write_smiles(mol, priority);
}

double conciseness(std::string_view smiles) {
  ParseResult parsed = parse(smiles);
  if (!parsed)
    return 0.0;
  const double len = static_cast<double>(smiles.size());
  const double canonical_len =
      static_cast<double>(canonicalize(parsed.value()).size());
  return std::clamp(1.0 - (len - canonical_len) / len, 0.0, 1.0);
}

}  // namespace chemdiv
