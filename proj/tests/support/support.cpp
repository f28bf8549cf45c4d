//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "support.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <functional>

#include "chemdiv/random.h"

#ifndef CHEMDIV_DATA_DIR
#error "CHEMDIV_DATA_DIR must be defined"
#endif

namespace chemdiv::test {

std::string data_path(const std::string &name) {
  return std::string(CHEMDIV_DATA_DIR) + "/" + name;
}

const std::vector<std::string> &corpus_smiles() {
  static const std::vector<std::string> smiles = [] {
    std::vector<std::string> out;
    for (const auto &r: read_smiles_file(data_path("corpus.smi")))
      out.push_back(r.smiles);
    return out;
  }();
  return smiles;
}

const std::vector<std::string> &reference_samples() {
  static const std::vector<std::string> samples = {
    "CCOCCNC[C@H]1CCCN1CCc1ccsc1",
    "CCCOC[C@H]1Cc2ccccc21",
    "CC[C@H]1CCNCOc2ccccc21",
    "CC[C@H]1CCN(CCc2ccccc2)c1",
    "CCCO[C@@H]1CCN(C)Cc2ccccc21",
    "CCC[C@@H]1CCC[NH+]1CC[C@H]1CCCn1",
    "CC[C@@H]1CCN(CCc2ccccc2)c1",
    "CC[C@H]1CCN(Cc2ccccc2)c1",
    "CCOC1CCN(CCCNCCCc2ccccc2)c1",
    "CCCN1CCO[C@H]1C[C@@H]1CCOc2ccccc21",
  };
  return samples;
}

MoleculeSet corpus_set(std::size_t n, const FingerprintConfig &cfg) {
  const auto &all = corpus_smiles();
  std::vector<std::string> picked(all.begin(),
                                  all.begin() + (n == 0 ? all.size() : std::min(n, all.size())));
  MoleculeSet set = MoleculeSet::from_smiles(picked, "corpus");
  set.fingerprint_all(cfg);
  return set;
}

std::vector<std::string> synthetic_smiles(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> linkers = {
    "C", "CC", "N", "O", "C(=O)", "C(C)", "C(=O)N", "S", "c1ccc(cc1)",
    "C1CCN(CC1)", "c1ccc(o1)", "c1cc(ncc1)", "C(O)", "N(C)", "CC(F)",
    "C1CC(C1)", "c1ccc(s1)", "C(=O)O", "C#C", "C=C",
  };
  // Heads bond to the next fragment through their last atom, tails
  // through their first.
  static const std::vector<std::string> heads = {
    "C", "F", "Cl", "Br", "O", "N", "N#C", "FC(F)(F)", "c1ccccc1", "CO",
    "OC(=O)", "C1COCCN1", "NS(=O)(=O)", "c1ccncc1",
  };
  static const std::vector<std::string> caps = {
    "C", "F", "Cl", "Br", "O", "N", "C#N", "C(F)(F)F", "c1ccccc1", "OC",
    "C(=O)O", "N1CCOCC1", "S(=O)(=O)N", "c1ccncc1",
  };
  SeedStream rng(seed);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = heads[rng.below(heads.size())];
    const int len = 2 + static_cast<int>(rng.below(7));
    for (int k = 0; k < len; ++k)
      s += linkers[rng.below(linkers.size())];
    s += caps[rng.below(caps.size())];
    out.push_back(std::move(s));
  }
  return out;
}

std::string graph_signature(const Molecule &mol) {
  const int n = mol.num_atoms();
  std::vector<std::string> label(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atoms()[i];
    std::ostringstream os;
    os << static_cast<int>(a.element) << ',' << a.aromatic << ','
       << a.formal_charge << ',' << a.explicit_hydrogens;
    label[i] = os.str();
  }
  auto classes = [](const std::vector<std::string> &l) {
    return std::set<std::string>(l.begin(), l.end()).size();
  };

  std::size_t count = classes(label);
  for (int round = 0; round <= n; ++round) {
    std::vector<std::string> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> nb;
      for (const auto &e: mol.neighbors(i))
        nb.push_back(std::to_string(static_cast<int>(mol.bonds()[e.bond].order))
                     + ":" + label[e.atom]);
      std::sort(nb.begin(), nb.end());
      std::string key = label[i] + "|";
      for (const auto &x: nb)
        key += x + ";";
      next[i] = std::to_string(std::hash<std::string> {}(key));
    }
    label = std::move(next);
    const std::size_t c = classes(label);
    if (c == count && round > 0)
      break;
    count = c;
  }

  std::multiset<std::string> atoms(label.begin(), label.end());
  std::multiset<std::string> edges;
  for (const Bond &b: mol.bonds()) {
    std::string x = label[b.begin], y = label[b.end];
    if (y < x)
      std::swap(x, y);
    edges.insert(x + "~" + std::to_string(static_cast<int>(b.order)) + "~" + y);
  }
  std::ostringstream os;
  os << n << '/' << mol.num_bonds() << '#';
  for (const auto &a: atoms)
    os << a << ' ';
  os << '#';
  for (const auto &e: edges)
    os << e << ' ';
  return os.str();
}

double oracle_tanimoto(const std::vector<std::uint64_t> &a,
                       const std::vector<std::uint64_t> &b) {
  std::set<std::uint64_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::vector<std::uint64_t> inter, uni;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(inter));
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                 std::back_inserter(uni));
  if (uni.empty())
    return 1.0;
  return static_cast<double>(inter.size()) / static_cast<double>(uni.size());
}

double oracle_internal(const std::vector<Fingerprint> &fps, bool squared) {
  long double sum = 0.0L;
  for (const auto &x: fps)
    for (const auto &y: fps) {
      long double d = 1.0L - oracle_tanimoto(x.features, y.features);
      sum += squared ? d * d : d;
    }
  return static_cast<double>(sum / (static_cast<long double>(fps.size()) * fps.size()));
}

double oracle_external(const std::vector<Fingerprint> &a,
                       const std::vector<Fingerprint> &b) {
  long double sum = 0.0L;
  for (const auto &x: a)
    for (const auto &y: b)
      sum += 1.0L - oracle_tanimoto(x.features, y.features);
  return static_cast<double>(sum / (static_cast<long double>(a.size()) * b.size()));
}

namespace {
void enumerate(const seqgen::Policy &policy, std::string &prefix, double p,
               std::vector<std::pair<seqgen::Sequence, double>> &out) {
  const std::size_t length = static_cast<std::size_t>(policy.length());
  if (prefix.size() == length) {
    out.emplace_back(prefix, p);
    return;
  }
  if (!prefix.empty() && prefix.back() == seqgen::kPad) {
    prefix.push_back(seqgen::kPad);
    enumerate(policy, prefix, p, out);
    prefix.pop_back();
    return;
  }
  auto probs = policy.probabilities(prefix);
  for (std::size_t a = 0; a < probs.size(); ++a) {
    prefix.push_back(policy.alphabet().symbol(a));
    enumerate(policy, prefix, p * probs[a], out);
    prefix.pop_back();
  }
}
}  // namespace

std::vector<std::pair<seqgen::Sequence, double>>
enumerate_sequences(const seqgen::Policy &policy, const std::string &prefix) {
  std::vector<std::pair<seqgen::Sequence, double>> out;
  std::string p = prefix;
  enumerate(policy, p, 1.0, out);
  return out;
}

double enumerated_value(const seqgen::Policy &policy, const seqgen::Reward &reward,
                        const std::string &prefix) {
  double v = 0.0;
  for (const auto &[seq, p]: enumerate_sequences(policy, prefix))
    v += p * reward(seq);
  return v;
}

}  // namespace chemdiv::test
