"""Quantum context-free grammars: probabilities, well-formedness, evolution matrices."""

import json

from ._qcfg import (
    DerivationError,
    FormatError,
    Grammar,
    Production,
    UnknownSymbol,
    __version__,
    _check_json,
    _matrix_json,
    derivations,
    eval_amplitude,
    language,
    load_grammar,
    parse_grammar,
    serialize_grammar,
    word_probability,
)

__all__ = [
    "DerivationError",
    "FormatError",
    "Grammar",
    "Production",
    "UnknownSymbol",
    "__version__",
    "check",
    "derivations",
    "eval_amplitude",
    "evolution_matrix",
    "language",
    "load_grammar",
    "parse_grammar",
    "serialize_grammar",
    "word_probability",
]


def check(grammar, max_len=10, mode="strict", tolerance=1e-9, structural=False):
    """Well-formedness report as a dict; ``report["passed"]`` is the verdict."""
    return json.loads(_check_json(grammar, max_len, mode, tolerance, structural))


def evolution_matrix(grammar, terminal, max_len=8, tolerance=1e-9, dense=False):
    """Truncated evolution matrix for one terminal, with its orthogonality summary."""
    return json.loads(_matrix_json(grammar, terminal, max_len, tolerance, dense))
