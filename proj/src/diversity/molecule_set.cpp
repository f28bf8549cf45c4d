//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <string>
#include <utility>
#include <vector>

#include "chemdiv/molecule_set.h"
#include "chemdiv/parallel.h"

namespace chemdiv {

MoleculeSet MoleculeSet::from_smiles(std::span<const std::string> smiles,
                                     std::string label) {
  MoleculeSet set(std::move(label));
  set.records_.reserve(smiles.size());
  for (const std::string &s: smiles)
    set.add(s);
  return set;
}

MoleculeSet MoleculeSet::from_records(std::span<const SmilesRecord> records,
                                      std::string label) {
  MoleculeSet set(std::move(label));
  set.records_.reserve(records.size());
  for (const SmilesRecord &r: records)
    set.add(r.smiles, r.id);
  return set;
}

MoleculeSet MoleculeSet::from_file(const std::string &path, std::string label) {
  auto records = read_smiles_file(path);
  return from_records(records, std::move(label));
}

void MoleculeSet::add(std::string smiles, std::string id) {
  MoleculeRecord rec;
  ParseResult parsed = parse(smiles);
  if (parsed)
    rec.molecule = std::move(parsed).value();
  rec.smiles = std::move(smiles);
  rec.id = std::move(id);
  records_.push_back(std::move(rec));
}

std::size_t MoleculeSet::num_valid() const {
  std::size_t n = 0;
  for (const auto &r: records_)
    n += r.valid();
  return n;
}

void MoleculeSet::fingerprint_all(const FingerprintConfig &cfg, int workers) {
  cfg.check();
  parallel_for(
      records_.size(), workers,
      [&](std::size_t i) {
        MoleculeRecord &rec = records_[i];
        if (rec.molecule)
          rec.fingerprint = morgan_fingerprint(*rec.molecule, cfg);
      },
      64);
}

std::vector<std::size_t> MoleculeSet::valid_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i)
    if (records_[i].valid())
      out.push_back(i);
  return out;
}

MoleculeSet MoleculeSet::valid_subset() const {
  auto idx = valid_indices();
  return subset(idx);
}

MoleculeSet MoleculeSet::subset(std::span<const std::size_t> indices) const {
  MoleculeSet out(label_);
  out.records_.reserve(indices.size());
  for (std::size_t i: indices)
    out.records_.push_back(records_.at(i));
  return out;
}

MoleculeSet MoleculeSet::concat(const MoleculeSet &other) const {
  MoleculeSet out = *this;
  out.records_.insert(out.records_.end(), other.records_.begin(),
                      other.records_.end());
  return out;
}

}  // namespace chemdiv
