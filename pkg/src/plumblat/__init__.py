"""Exact-arithmetic lattice embedding obstructions for plumbed 3-manifolds.

The library decides, for a weighted star-shaped (or linear) plumbing tree,
whether its negative definite intersection lattice embeds into the standard
diagonal lattice of equal rank, and verifies the combinatorial
classification of the embeddable three-legged trees at desk scale.
All arithmetic is exact; there is no floating point anywhere in the
mathematical core.
"""

from plumblat.contfrac import (
    cf_eval,
    cf_expand,
    grow_complementary_pair,
    is_complementary,
    point_rule_complement,
)
from plumblat.plumbing import PlumbingGraph, SeifertInvariants
from plumblat.embed import EmbeddingCertificate, SearchLimits, find_embedding, verify_certificate
from plumblat.lattice import ConfiguredSet, pairing

__all__ = [
    "cf_expand",
    "cf_eval",
    "point_rule_complement",
    "is_complementary",
    "grow_complementary_pair",
    "PlumbingGraph",
    "SeifertInvariants",
    "ConfiguredSet",
    "pairing",
    "SearchLimits",
    "EmbeddingCertificate",
    "find_embedding",
    "verify_certificate",
]
