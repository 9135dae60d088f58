"""Erdős–Szekeres theory for ordered r-uniform matchings."""

from .core import (
    CliqueCertificate,
    Matching,
    MatchingError,
    Pattern,
    check_certificate,
    load_matching,
    parse_word,
    pattern_of_pair,
    to_word,
)
from .extract import ExtractionResult, ParamVector, extract_clean, extract_clique, extract3_improved, es_base2
from .exact import all_matchings, census, is_clean, max_clique
from .patterns import canonical_clique, collectable_index, decompose, enumerate_patterns, maturity, split

__all__ = [
    "CliqueCertificate",
    "ExtractionResult",
    "Matching",
    "MatchingError",
    "ParamVector",
    "Pattern",
    "all_matchings",
    "canonical_clique",
    "census",
    "check_certificate",
    "collectable_index",
    "decompose",
    "enumerate_patterns",
    "es_base2",
    "extract3_improved",
    "extract_clean",
    "extract_clique",
    "is_clean",
    "load_matching",
    "max_clique",
    "maturity",
    "parse_word",
    "pattern_of_pair",
    "split",
    "to_word",
]

__version__ = "0.1.0"
