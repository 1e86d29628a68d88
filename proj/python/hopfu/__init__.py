"""Exact computations for U = k<u,w>/(u^p, w^p - w, wu - uw - u)."""

import json

from ._hopfu import (
    HopfuError,
    decompose as _decompose,
    family_ids,
    fpdim,
    hilbert as _hilbert,
    run_cli,
    solve_actions as _solve_actions,
    tensor,
    verify_family,
)

__all__ = [
    "HopfuError",
    "decompose",
    "family_ids",
    "fpdim",
    "hilbert",
    "run_cli",
    "solve_actions",
    "tensor",
    "verify_family",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def hilbert(presentation, max_deg=6):
    """Hilbert function of a presentation (dict or JSON text) up to max_deg."""
    return _hilbert(_text(presentation), max_deg)


def decompose(module):
    """Summands of a module (dict or JSON text), e.g. "M(2,1) + M(3,0)"."""
    return _decompose(_text(module))


def solve_actions(presentation, budget=100_000_000):
    """Counts of U-actions on a presentation (dict or JSON text)."""
    return _solve_actions(_text(presentation), budget)
