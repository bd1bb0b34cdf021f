"""Prediction of SSE interaction networks from protein structures."""

from ._ssein import (
    DimensionError,
    DomainError,
    DuplicateError,
    EmptyInputError,
    Error,
    ParseError,
    benchmark,
    decode,
    parse_pdb,
    predict,
    prediction_accuracy,
    strength_ranks,
    topological_profile,
    uniform_crossover,
    write_synthetic_family,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "DuplicateError",
    "EmptyInputError",
    "Error",
    "ParseError",
    "benchmark",
    "decode",
    "parse_pdb",
    "predict",
    "prediction_accuracy",
    "strength_ranks",
    "topological_profile",
    "uniform_crossover",
    "write_synthetic_family",
]
