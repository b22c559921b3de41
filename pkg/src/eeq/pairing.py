"""Cantor pairing on the naturals, with a hard 64-bit ceiling."""

from __future__ import annotations

from math import isqrt

from .errors import OverflowFault

WORD_BITS = 64
WORD_LIMIT = 1 << WORD_BITS


def check_word(value: int) -> int:
    if value >= WORD_LIMIT:
        raise OverflowFault(f"value {value} exceeds the {WORD_BITS}-bit word range")
    return value


def cantor_pair(x: int, y: int) -> int:
    """Diagonal pairing ``<x, y> = (x + y)(x + y + 1)/2 + y``."""
    if x < 0 or y < 0:
        raise ValueError("cantor_pair is defined on naturals only")
    d = x + y
    return check_word(d * (d + 1) // 2 + y)


def cantor_proj(z: int) -> tuple[int, int]:
    """Inverse of :func:`cantor_pair`."""
    if z < 0:
        raise ValueError("cantor_proj is defined on naturals only")
    w = (isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y
