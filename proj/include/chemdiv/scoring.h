//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_SCORING_H_
#define CHEMDIV_SCORING_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chemdiv/molecule_set.h"

namespace chemdiv {

inline constexpr double kDefaultThreshold = 0.8;

/// Canonical forms of a reference (training) corpus.
class TrainingSetIndex {
public:
  TrainingSetIndex() = default;

  /// Invalid entries are skipped.
  static TrainingSetIndex build(std::span<const std::string> smiles);
  static TrainingSetIndex build(const MoleculeSet &set);

  void insert_canonical(std::string canonical);
  bool contains_canonical(const std::string &canonical) const {
    return canonical_.count(canonical) > 0;
  }
  std::size_t size() const { return canonical_.size(); }

private:
  std::unordered_set<std::string> canonical_;
};

inline constexpr double kNoveltyInvalid = 0.0;
inline constexpr double kNoveltyKnown = 0.3;
inline constexpr double kNoveltyNew = 1.0;

/// 1 for a valid molecule outside the index, 0.3 for one inside, 0 if
/// invalid.
double novelty(std::string_view smiles, const TrainingSetIndex &index);

struct Druglikeness {
  double value = 0.0;
  /// Number of components averaged (2..4).
  int components = 0;
  bool partial() const { return components < 4; }
};

/// Arithmetic mean of solubility, novelty, synthesizability and
/// conciseness. Missing ingested components drop out of the mean. Throws
/// DataError when an ingested value lies outside [0, 1].
Druglikeness druglikeness(std::string_view smiles, const TrainingSetIndex &index,
                          std::optional<double> solubility = std::nullopt,
                          std::optional<double> synthesizability = std::nullopt);

enum class ScoreProvenance { kComputed, kIngested };

/// Score columns aligned with a MoleculeSet's records. Records without a
/// value (unmatched invalid SMILES) hold nullopt.
struct ScoreTable {
  std::map<std::string, std::vector<std::optional<double>>> columns;
  std::map<std::string, ScoreProvenance> provenance;

  /// Copies every column into the records' score maps.
  void attach(MoleculeSet &set) const;
};

struct ScoreLoadOptions {
  /// Columns allowed outside [0, 1]; all others are probability-like.
  std::set<std::string> unbounded_columns;
};

/// Reads a TSV whose first column is "smiles" and joins it to the records:
/// exact text first, then canonical form. Throws DataError on malformed
/// rows, non-numeric or out-of-range cells, and unmatched valid records.
ScoreTable load_scores(std::istream &in, const MoleculeSet &set,
                       const ScoreLoadOptions &opts = {});
ScoreTable load_scores(const std::string &path, const MoleculeSet &set,
                       const ScoreLoadOptions &opts = {});

struct TableReport {
  std::string label;
  double prop_valid = 0.0;
  double avg_score = 0.0;
  double avg_internal_diversity = 0.0;
  double prop_above_threshold = 0.0;
  double internal_diversity_above_threshold = 0.0;
  double threshold = kDefaultThreshold;
  std::size_t n_total = 0;
  std::size_t n_valid = 0;
  std::size_t n_above = 0;
};

struct RecordSummary {
  bool valid = false;
  std::optional<double> score;
};

/// Internal diversity of the records at `indices`.
using SubsetDiversity =
    std::function<double(std::span<const std::size_t> indices)>;

/// Averages run over valid records; proportions over all records.
/// Subsets with fewer than two records report diversity 0 without calling
/// `diversity`. Throws DataError if a valid record has no score.
TableReport aggregate_table_report(std::string label,
                                   std::span<const RecordSummary> records,
                                   double threshold,
                                   const SubsetDiversity &diversity);

/// Table row for a fingerprinted set carrying `score_name`.
TableReport table_report(const MoleculeSet &set, const std::string &score_name,
                         double threshold = kDefaultThreshold, int workers = 1);

/// Aligned text table in the column order: Prop. valid, Avg. score,
/// Avg. int. div., Prop. above threshold, Int. div. above threshold.
std::string format_table(std::span<const TableReport> rows,
                         const std::string &score_label = "score");

}  // namespace chemdiv

#endif  // CHEMDIV_SCORING_H_
