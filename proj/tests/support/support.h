//
// chemdiv - Copyright 2026 The chemdiv Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMDIV_TESTS_SUPPORT_H_
#define CHEMDIV_TESTS_SUPPORT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chemdiv/fingerprint.h"
#include "chemdiv/molecule_set.h"
#include "chemdiv/seqgen/policy.h"
#include "chemdiv/smiles.h"

namespace chemdiv::test {

std::string data_path(const std::string &name);

/// SMILES strings of the bundled corpus, in file order.
const std::vector<std::string> &corpus_smiles();

/// Ten published generator outputs, including bracketed stereo atoms.
const std::vector<std::string> &reference_samples();

/// Fingerprinted MoleculeSet of the first `n` corpus molecules (all if 0).
MoleculeSet corpus_set(std::size_t n = 0, const FingerprintConfig &cfg = {});

/// Random drug-like SMILES assembled from linker and cap fragments.
std::vector<std::string> synthetic_smiles(std::size_t n, std::uint64_t seed);

/// Isomorphism signature from colour refinement with labelled edges. Equal
/// for isomorphic graphs; distinct graphs in practice give distinct
/// signatures.
std::string graph_signature(const Molecule &mol);

/// Tanimoto similarity through std::set operations.
double oracle_tanimoto(const std::vector<std::uint64_t> &a,
                       const std::vector<std::uint64_t> &b);

/// Direct double loop over all ordered pairs in long double.
double oracle_internal(const std::vector<Fingerprint> &fps, bool squared = false);
double oracle_external(const std::vector<Fingerprint> &a,
                       const std::vector<Fingerprint> &b);

/// Every length-T sequence reachable under the absorbing-pad rule, with
/// its probability computed from the policy's per-step distributions.
std::vector<std::pair<seqgen::Sequence, double>>
enumerate_sequences(const seqgen::Policy &policy, const std::string &prefix = {});

/// E[reward] over all completions of `prefix`, by enumeration.
double enumerated_value(const seqgen::Policy &policy, const seqgen::Reward &reward,
                        const std::string &prefix = {});

}  // namespace chemdiv::test

#endif  // CHEMDIV_TESTS_SUPPORT_H_
