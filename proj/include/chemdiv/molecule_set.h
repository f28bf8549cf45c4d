//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_MOLECULE_SET_H_
#define CHEMDIV_MOLECULE_SET_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chemdiv/fingerprint.h"
#include "chemdiv/smiles.h"

namespace chemdiv {

struct MoleculeRecord {
  std::string smiles;
  std::string id;
  std::optional<Molecule> molecule;
  std::optional<Fingerprint> fingerprint;
  std::map<std::string, double> scores;

  bool valid() const { return molecule.has_value(); }
};

/// Ordered multiset of molecules; duplicates are kept.
class MoleculeSet {
public:
  MoleculeSet() = default;
  explicit MoleculeSet(std::string label): label_(std::move(label)) { }

  /// Parses every string; invalid ones are kept as records without a
  /// molecule.
  static MoleculeSet from_smiles(std::span<const std::string> smiles,
                                 std::string label = {});
  static MoleculeSet from_records(std::span<const SmilesRecord> records,
                                  std::string label = {});
  static MoleculeSet from_file(const std::string &path, std::string label = {});

  const std::string &label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t num_valid() const;

  const std::vector<MoleculeRecord> &records() const { return records_; }
  std::vector<MoleculeRecord> &records() { return records_; }
  const MoleculeRecord &operator[](std::size_t i) const { return records_[i]; }
  MoleculeRecord &operator[](std::size_t i) { return records_[i]; }

  void add(std::string smiles, std::string id = {});

  /// Fingerprints every valid record in parallel.
  void fingerprint_all(const FingerprintConfig &cfg, int workers = 1);

  /// Indices of records with a molecule.
  std::vector<std::size_t> valid_indices() const;

  /// Copy holding only the valid records, in order.
  MoleculeSet valid_subset() const;

  /// Copy holding `indices`, in the given order.
  MoleculeSet subset(std::span<const std::size_t> indices) const;

  /// A ⊎ B, keeping this set's label.
  MoleculeSet concat(const MoleculeSet &other) const;

private:
  std::string label_;
  std::vector<MoleculeRecord> records_;
};

}  // namespace chemdiv

#endif  // CHEMDIV_MOLECULE_SET_H_
