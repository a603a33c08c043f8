"""Exact integer linear algebra: ranks and rational-span membership.

Everything here runs on Python ints (arbitrary precision).  Rank is computed
by fraction-free (Bareiss) elimination, so there is no floating point anywhere
and no overflow.  These primitives back set dimension, quasicube recognition
and the unimodular normal forms used by the conjecture scans.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix via fraction-free Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * pv - m[r][col] * m[row][c]) // prev
            m[r][col] = 0
        prev = pv
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def int_rank(vectors: Iterable[Sequence[int]]) -> int:
    """Rank over Q of a collection of integer vectors."""
    rows = [list(v) for v in vectors]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return _bareiss_rank(rows)


def in_rational_span(vector: Sequence[int], vectors: Iterable[Sequence[int]]) -> bool:
    """True iff `vector` lies in the Q-linear span of `vectors`.

    Span membership over Q is exactly what "has finite order modulo the
    saturation of the lattice spanned by `vectors`" means, which is the test
    quasicube recognition needs.
    """
    base = [list(v) for v in vectors]
    r0 = int_rank(base)
    return int_rank(base + [list(vector)]) == r0
