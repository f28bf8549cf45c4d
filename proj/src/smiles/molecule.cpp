//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "chemdiv/smiles.h"

namespace chemdiv {

std::string_view element_symbol(Element e) {
  switch (e) {
  case Element::kH:
    return "H";
  case Element::kB:
    return "B";
  case Element::kC:
    return "C";
  case Element::kN:
    return "N";
  case Element::kO:
    return "O";
  case Element::kF:
    return "F";
  case Element::kP:
    return "P";
  case Element::kS:
    return "S";
  case Element::kCl:
    return "Cl";
  case Element::kBr:
    return "Br";
  case Element::kI:
    return "I";
  }
  return "?";
}

int atomic_number(Element e) { return static_cast<int>(e); }

int max_valence(Element e) {
  switch (e) {
  case Element::kB:
    return 3;
  case Element::kC:
    return 4;
  case Element::kN:
    return 3;
  case Element::kO:
    return 2;
  case Element::kP:
    return 5;
  case Element::kS:
    return 6;
  case Element::kF:
  case Element::kCl:
  case Element::kBr:
  case Element::kI:
  case Element::kH:
    return 1;
  }
  return 0;
}

int Molecule::find_bond(int a, int b) const {
  for (const Neighbor &nb: adjacency_[a])
    if (nb.atom == b)
      return nb.bond;
  return -1;
}

int Molecule::num_components() const {
  std::vector<int> parent(atoms_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };

  int components = num_atoms();
  for (const Bond &b: bonds_) {
    int ra = find(b.begin), rb = find(b.end);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components;
}

int MoleculeBuilder::add_atom(const Atom &atom) {
  mol_.atoms_.push_back(atom);
  mol_.adjacency_.emplace_back();
  return num_atoms() - 1;
}

bool MoleculeBuilder::add_bond(int a, int b, BondOrder order) {
  assert(a >= 0 && a < num_atoms() && b >= 0 && b < num_atoms());
  if (a == b || mol_.find_bond(a, b) >= 0)
    return false;

  int idx = static_cast<int>(mol_.bonds_.size());
  mol_.bonds_.push_back({ a, b, order });
  mol_.adjacency_[a].push_back({ b, idx });
  mol_.adjacency_[b].push_back({ a, idx });
  return true;
}

namespace {
// Marks atoms incident to at least one non-bridge bond. Iterative
// Tarjan lowlink so long chains do not exhaust the stack.
void perceive_rings(const Molecule &mol, std::vector<Atom> &atoms) {
  const int n = mol.num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> bridge(mol.num_bonds(), 0);

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int timer = 0;

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0)
      continue;
    disc[root] = low[root] = timer++;
    stack.push_back({ root, -1, 0 });

    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &nbs = mol.neighbors(f.atom);
      if (f.next < nbs.size()) {
        auto [w, bond] = nbs[f.next++];
        if (bond == f.parent_bond)
          continue;
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({ w, bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[w]);
        }
        continue;
      }

      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        int parent = stack.back().atom;
        low[parent] = std::min(low[parent], low[done.atom]);
        if (low[done.atom] > disc[parent])
          bridge[done.parent_bond] = 1;
      }
    }
  }

  for (Atom &a: atoms)
    a.in_ring = false;
  for (int i = 0; i < mol.num_bonds(); ++i) {
    if (bridge[i])
      continue;
    atoms[mol.bonds()[i].begin].in_ring = true;
    atoms[mol.bonds()[i].end].in_ring = true;
  }
}
}  // namespace

Molecule MoleculeBuilder::finish(std::string source) && {
  mol_.source_ = std::move(source);
  perceive_rings(mol_, mol_.atoms_);
  return std::move(mol_);
}

std::optional<int> find_valence_violation(const Molecule &mol) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &atom = mol.atoms()[i];

    // Bond orders in half units so aromatic bonds count 1.5.
    int halves = 0, aromatic_bonds = 0;
    for (auto [_, b]: mol.neighbors(i)) {
      switch (mol.bonds()[b].order) {
      case BondOrder::kSingle:
        halves += 2;
        break;
      case BondOrder::kDouble:
        halves += 4;
        break;
      case BondOrder::kTriple:
        halves += 6;
        break;
      case BondOrder::kAromatic:
        halves += 3;
        ++aromatic_bonds;
        break;
      }
    }

    int allowed = max_valence(atom.element);
    if (atom.element == Element::kN || atom.element == Element::kO)
      allowed += atom.formal_charge;
    // Lone-pair donors in five-membered aromatic rings (furan o, pyrrole
    // [nH]) exceed the 1.5-per-bond count by one.
    if (atom.aromatic && aromatic_bonds >= 2)
      allowed += 1;

    if (halves / 2 + atom.explicit_hydrogens > allowed)
      return i;
  }
  return std::nullopt;
}

}  // namespace chemdiv
