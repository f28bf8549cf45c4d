#
# chemdiv - Copyright 2026 The chemdiv Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Tanimoto-based diversity metrics for molecule sets."""

from chemdiv._core import (
    DataError,
    SmilesError,
    canonicalize,
    challenge,
    conciseness,
    external_diversity,
    fingerprint,
    internal_diversity,
    novelty,
    parse_error,
    random_rewrite,
    tanimoto,
    tanimoto_variance,
    validate,
)

__all__ = [
    "DataError",
    "SmilesError",
    "canonicalize",
    "challenge",
    "conciseness",
    "external_diversity",
    "fingerprint",
    "internal_diversity",
    "novelty",
    "parse_error",
    "random_rewrite",
    "tanimoto",
    "tanimoto_variance",
    "validate",
]
