"""Complementary sets of polyphase sequences from generalized Boolean functions."""

from ._core import (
    Error,
    Gbf,
    HypothesisError,
    InvalidArgument,
    ParseError,
    TooLarge,
    aacf,
    analyze,
    codebook_size,
    construct,
    enumerate_codebook,
    erm_min_distance,
    gdj_pair,
    is_cs,
    parse_gbf,
    pmepr,
    random_qualifying_gbf,
    rate,
    reproduce_tables,
    set_aacf,
)

__all__ = [
    "Error",
    "Gbf",
    "HypothesisError",
    "InvalidArgument",
    "ParseError",
    "TooLarge",
    "aacf",
    "analyze",
    "codebook_size",
    "construct",
    "enumerate_codebook",
    "erm_min_distance",
    "gdj_pair",
    "is_cs",
    "parse_gbf",
    "pmepr",
    "random_qualifying_gbf",
    "rate",
    "reproduce_tables",
    "set_aacf",
]
