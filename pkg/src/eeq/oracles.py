"""Brute-force reference computations, kept independent of the union-find path."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def matrix_closure(pairs: Iterable[tuple[int, int]], n: int) -> np.ndarray:
    """Reflexive, symmetric, transitive closure as an ``n x n`` boolean matrix.

    Propagates pairs to a fixpoint by repeated boolean squaring.
    """
    m = np.eye(n, dtype=bool)
    for a, b in pairs:
        m[a, b] = m[b, a] = True
    while True:
        nxt = (m.astype(np.int64) @ m.astype(np.int64)) > 0
        if np.array_equal(nxt, m):
            return m
        m = nxt


def matrix_reps(m: np.ndarray) -> tuple[int, ...]:
    """Least related index for every row."""
    return tuple(int(np.argmax(row)) for row in m)


def diagonal_listing(diagonals: int) -> dict[tuple[int, int], int]:
    """Index of every pair with ``x + y < diagonals`` when N x N is walked diagonal by diagonal.

    Diagonal ``d`` holds ``(d, 0), (d - 1, 1), ..., (0, d)`` in that order.
    """
    out: dict[tuple[int, int], int] = {}
    for d in range(diagonals):
        for y in range(d + 1):
            out[(d - y, y)] = len(out)
    return out
