//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chemdiv/diversity.h"
#include "chemdiv/errors.h"
#include "chemdiv/fingerprint.h"
#include "chemdiv/molecule_set.h"
#include "chemdiv/scoring.h"
#include "chemdiv/smiles.h"

namespace py = pybind11;
using namespace chemdiv;

namespace {
FingerprintConfig config(int radius, std::uint32_t nbits, bool folded) {
  FingerprintConfig cfg;
  cfg.radius = radius;
  cfg.nbits = nbits;
  cfg.use_folded = folded;
  return cfg;
}

/// Valid records only, fingerprinted.
MoleculeSet valid_set(const std::vector<std::string> &smiles,
                      const FingerprintConfig &cfg, int workers) {
  MoleculeSet set = MoleculeSet::from_smiles(smiles).valid_subset();
  set.fingerprint_all(cfg, workers);
  return set;
}

MoleculeSet scored_set(const std::vector<std::string> &smiles,
                       const std::vector<double> &scores, const std::string &label,
                       int radius, int workers) {
  if (scores.size() != smiles.size())
    throw DataError(label + ": " + std::to_string(smiles.size()) + " SMILES but "
                    + std::to_string(scores.size()) + " scores");
  MoleculeSet set = MoleculeSet::from_smiles(smiles, label);
  for (std::size_t i = 0; i < set.size(); ++i)
    set[i].scores["score"] = scores[i];
  set.fingerprint_all(config(radius, 2048, false), workers);
  return set;
}

py::dict estimate_dict(const DiversityEstimate &e) {
  py::dict d;
  d["value"] = e.value;
  d["n_used"] = e.n_used;
  d["subsampled"] = e.subsampled;
  d["seed"] = e.seed ? py::cast(*e.seed) : py::none();
  return d;
}
}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "chemdiv core bindings";
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<SmilesError>(m, "SmilesError", PyExc_ValueError);

  m.def("validate", [](const std::string &s) { return validate(s); }, py::arg("smiles"));

  m.def(
      "parse_error",
      [](const std::string &s) -> py::object {
        ParseResult r = parse(s);
        if (r.ok())
          return py::none();
        return py::make_tuple(std::string(to_string(r.error().kind)), r.error().position);
      },
      py::arg("smiles"), "None for valid SMILES, else (kind, position).");

  m.def(
      "canonicalize",
      [](const std::string &s) { return canonicalize(parse_or_throw(s)); },
      py::arg("smiles"));

  m.def(
      "random_rewrite",
      [](const std::string &s, std::uint64_t seed) {
        return random_rewrite(parse_or_throw(s), seed);
      },
      py::arg("smiles"), py::arg("seed"));

  m.def("conciseness", [](const std::string &s) { return conciseness(s); },
        py::arg("smiles"));

  m.def(
      "novelty",
      [](const std::string &s, const std::vector<std::string> &training) {
        return novelty(s, TrainingSetIndex::build(training));
      },
      py::arg("smiles"), py::arg("training"));

  m.def(
      "fingerprint",
      [](const std::string &s, int radius) {
        return morgan_fingerprint(parse_or_throw(s), config(radius, 2048, false)).features;
      },
      py::arg("smiles"), py::arg("radius") = 2, "Sorted Morgan feature hashes.");

  m.def(
      "tanimoto",
      [](const std::string &a, const std::string &b, int radius) {
        FingerprintConfig cfg = config(radius, 2048, false);
        return tanimoto_similarity(morgan_fingerprint(parse_or_throw(a), cfg),
                                   morgan_fingerprint(parse_or_throw(b), cfg));
      },
      py::arg("a"), py::arg("b"), py::arg("radius") = 2);

  m.def(
      "internal_diversity",
      [](const std::vector<std::string> &smiles, int radius, std::size_t subsample,
         std::uint64_t seed, int workers) {
        MoleculeSet set = valid_set(smiles, config(radius, 2048, false), workers);
        if (subsample > 0 && subsample < set.size())
          return estimate_dict(subsampled_internal_diversity(set, subsample, seed, workers));
        return estimate_dict(internal_diversity(set, workers));
      },
      py::arg("smiles"), py::arg("radius") = 2, py::arg("subsample") = 0,
      py::arg("seed") = 1, py::arg("workers") = 1,
      "Mean Tanimoto distance over all ordered pairs of the valid records.");

  m.def(
      "tanimoto_variance",
      [](const std::vector<std::string> &smiles, int radius, int workers) {
        return estimate_dict(
            tanimoto_variance(valid_set(smiles, config(radius, 2048, false), workers), workers));
      },
      py::arg("smiles"), py::arg("radius") = 2, py::arg("workers") = 1);

  m.def(
      "external_diversity",
      [](const std::vector<std::string> &a, const std::vector<std::string> &b, int radius,
         int workers) {
        FingerprintConfig cfg = config(radius, 2048, false);
        return estimate_dict(
            external_diversity(valid_set(a, cfg, workers), valid_set(b, cfg, workers), workers));
      },
      py::arg("a"), py::arg("b"), py::arg("radius") = 2, py::arg("workers") = 1);

  m.def(
      "challenge",
      [](const std::vector<std::string> &generated, const std::vector<double> &generated_scores,
         const std::vector<std::string> &nature, const std::vector<double> &nature_scores,
         double threshold, int radius, int workers) {
        MoleculeSet g = scored_set(generated, generated_scores, "generated", radius, workers);
        MoleculeSet n = scored_set(nature, nature_scores, "nature", radius, workers);
        ChallengeVerdict v = challenge_compare(g, n, "score", threshold, workers);
        py::dict d;
        d["i_g"] = v.i_g;
        d["i_n"] = v.i_n;
        d["ratio"] = v.ratio ? py::cast(*v.ratio) : py::none();
        d["pass"] = v.pass;
        d["n_g"] = v.n_g;
        d["n_n"] = v.n_n;
        return d;
      },
      py::arg("generated"), py::arg("generated_scores"), py::arg("nature"),
      py::arg("nature_scores"), py::arg("threshold") = kDefaultThreshold,
      py::arg("radius") = 2, py::arg("workers") = 1);
}
