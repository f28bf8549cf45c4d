//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "chemdiv/diversity.h"
#include "chemdiv/errors.h"
#include "chemdiv/scoring.h"

namespace chemdiv {

TrainingSetIndex TrainingSetIndex::build(std::span<const std::string> smiles) {
  TrainingSetIndex index;
  for (const std::string &s: smiles) {
    ParseResult parsed = parse(s);
    if (parsed)
      index.insert_canonical(canonicalize(parsed.value()));
  }
  return index;
}

TrainingSetIndex TrainingSetIndex::build(const MoleculeSet &set) {
  TrainingSetIndex index;
  for (const MoleculeRecord &rec: set.records())
    if (rec.molecule)
      index.insert_canonical(canonicalize(*rec.molecule));
  return index;
}

void TrainingSetIndex::insert_canonical(std::string canonical) {
  canonical_.insert(std::move(canonical));
}

double novelty(std::string_view smiles, const TrainingSetIndex &index) {
  ParseResult parsed = parse(smiles);
  if (!parsed)
    return kNoveltyInvalid;
  return index.contains_canonical(canonicalize(parsed.value())) ? kNoveltyKnown
                                                                : kNoveltyNew;
}

Druglikeness druglikeness(std::string_view smiles, const TrainingSetIndex &index,
                          std::optional<double> solubility,
                          std::optional<double> synthesizability) {
  auto check = [](std::optional<double> v, const char *name) {
    if (v && !(*v >= 0.0 && *v <= 1.0))
      throw DataError(std::string(name) + " must be normalized to [0, 1], got "
                      + std::to_string(*v));
  };
  check(solubility, "solubility");
  check(synthesizability, "synthesizability");

  double sum = novelty(smiles, index) + conciseness(smiles);
  int n = 2;
  if (solubility) {
    sum += *solubility;
    ++n;
  }
  if (synthesizability) {
    sum += *synthesizability;
    ++n;
  }
  return { sum / n, n };
}

void ScoreTable::attach(MoleculeSet &set) const {
  for (const auto &[name, column]: columns)
    for (std::size_t i = 0; i < set.size() && i < column.size(); ++i)
      if (column[i])
        set[i].scores[name] = *column[i];
}

namespace {
std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos)
      break;
    start = tab + 1;
  }
  return out;
}

double parse_number(std::string_view cell, std::size_t lineno,
                    const std::string &column) {
  while (!cell.empty() && cell.front() == ' ')
    cell.remove_prefix(1);
  while (!cell.empty() && cell.back() == ' ')
    cell.remove_suffix(1);

  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw DataError("line " + std::to_string(lineno) + ": non-numeric value '"
                    + std::string(cell) + "' in column '" + column + "'");
  return v;
}
}  // namespace

ScoreTable load_scores(std::istream &in, const MoleculeSet &set,
                       const ScoreLoadOptions &opts) {
  std::string line;
  std::size_t lineno = 0;

  std::vector<std::string> names;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    for (auto f: split_tabs(line))
      names.emplace_back(f);
    break;
  }
  if (names.empty())
    throw DataError("score file is empty");
  if (names.front() != "smiles")
    throw DataError("score file header must start with 'smiles', got '"
                    + names.front() + "'");
  if (names.size() < 2)
    throw DataError("score file has no score columns");

  std::vector<std::string> row_smiles;
  std::vector<std::vector<double>> row_values;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    auto fields = split_tabs(line);
    if (fields.size() != names.size())
      throw DataError("line " + std::to_string(lineno) + ": expected "
                      + std::to_string(names.size()) + " fields, got "
                      + std::to_string(fields.size()));

    std::vector<double> values;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      double v = parse_number(fields[c], lineno, names[c]);
      if (!opts.unbounded_columns.count(names[c]) && (v < 0.0 || v > 1.0))
        throw DataError("line " + std::to_string(lineno) + ": value "
                        + std::string(fields[c]) + " in column '" + names[c]
                        + "' is outside [0, 1]");
      values.push_back(v);
    }
    row_smiles.emplace_back(fields[0]);
    row_values.push_back(std::move(values));
  }

  std::unordered_map<std::string, std::size_t> exact;
  for (std::size_t r = 0; r < row_smiles.size(); ++r)
    exact.emplace(row_smiles[r], r);

  std::unordered_map<std::string, std::size_t> canonical;
  bool canonical_built = false;
  auto canonical_lookup = [&](const Molecule &mol) -> std::optional<std::size_t> {
    if (!canonical_built) {
      for (std::size_t r = 0; r < row_smiles.size(); ++r) {
        ParseResult parsed = parse(row_smiles[r]);
        if (parsed)
          canonical.emplace(canonicalize(parsed.value()), r);
      }
      canonical_built = true;
    }
    auto it = canonical.find(canonicalize(mol));
    if (it == canonical.end())
      return std::nullopt;
    return it->second;
  };

  ScoreTable table;
  for (std::size_t c = 1; c < names.size(); ++c) {
    table.columns[names[c]].assign(set.size(), std::nullopt);
    table.provenance[names[c]] = ScoreProvenance::kIngested;
  }

  std::size_t unmatched = 0;
  std::string first_unmatched;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const MoleculeRecord &rec = set[i];
    std::optional<std::size_t> row;
    if (auto it = exact.find(rec.smiles); it != exact.end())
      row = it->second;
    else if (rec.molecule)
      row = canonical_lookup(*rec.molecule);

    if (!row) {
      if (rec.valid() && unmatched++ == 0)
        first_unmatched = rec.smiles;
      continue;
    }
    for (std::size_t c = 1; c < names.size(); ++c)
      table.columns[names[c]][i] = row_values[*row][c - 1];
  }

  if (unmatched > 0)
    throw DataError(std::to_string(unmatched)
                    + " valid record(s) have no scores; first unmatched: "
                    + first_unmatched);
  return table;
}

ScoreTable load_scores(const std::string &path, const MoleculeSet &set,
                       const ScoreLoadOptions &opts) {
  std::ifstream in(path);
  if (!in)
    throw DataError("cannot open score file " + path);
  return load_scores(in, set, opts);
}

TableReport aggregate_table_report(std::string label,
                                   std::span<const RecordSummary> records,
                                   double threshold,
                                   const SubsetDiversity &diversity) {
  TableReport rep;
  rep.label = std::move(label);
  rep.threshold = threshold;
  rep.n_total = records.size();

  std::vector<std::size_t> valid, above;
  long double score_sum = 0.0L;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RecordSummary &r = records[i];
    if (!r.valid)
      continue;
    if (!r.score)
      throw DataError("valid record " + std::to_string(i) + " has no score");
    valid.push_back(i);
    score_sum += *r.score;
    if (above_threshold(*r.score, threshold))
      above.push_back(i);
  }

  rep.n_valid = valid.size();
  rep.n_above = above.size();
  if (rep.n_total > 0) {
    rep.prop_valid = static_cast<double>(rep.n_valid) / rep.n_total;
    rep.prop_above_threshold = static_cast<double>(rep.n_above) / rep.n_total;
  }
  if (rep.n_valid > 0)
    rep.avg_score = static_cast<double>(score_sum / rep.n_valid);
  if (valid.size() >= 2)
    rep.avg_internal_diversity = diversity(valid);
  if (above.size() >= 2)
    rep.internal_diversity_above_threshold = diversity(above);
  return rep;
}

TableReport table_report(const MoleculeSet &set, const std::string &score_name,
                         double threshold, int workers) {
  std::vector<RecordSummary> summaries(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const MoleculeRecord &rec = set[i];
    summaries[i].valid = rec.valid();
    if (auto it = rec.scores.find(score_name); it != rec.scores.end())
      summaries[i].score = it->second;
    else if (rec.valid())
      throw DataError("record '" + rec.smiles + "' has no score '" + score_name
                      + "'");
  }

  auto diversity = [&](std::span<const std::size_t> indices) {
    return internal_diversity(FingerprintBlock(set, indices), workers).value;
  };
  return aggregate_table_report(set.label(), summaries, threshold, diversity);
}

std::string format_table(std::span<const TableReport> rows,
                         const std::string &score_label) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  std::string thr = rows.empty() ? fmt(kDefaultThreshold) : fmt(rows[0].threshold);
  std::vector<std::vector<std::string>> cells;
  cells.push_back({ "", "Prop. valid", "Avg. " + score_label, "Avg. int. div.",
                    "Prop. " + score_label + " > " + thr,
                    "Int. div. " + score_label + " > " + thr });
  for (const TableReport &r: rows)
    cells.push_back({ r.label, fmt(r.prop_valid), fmt(r.avg_score),
                      fmt(r.avg_internal_diversity), fmt(r.prop_above_threshold),
                      fmt(r.internal_diversity_above_threshold) });

  std::vector<std::size_t> width(cells[0].size(), 0);
  for (const auto &row: cells)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());

  std::ostringstream out;
  for (const auto &row: cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0)
        out << "  ";
      if (c == 0)
        out << row[c] << std::string(width[c] - row[c].size(), ' ');
      else
        out << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace chemdiv
