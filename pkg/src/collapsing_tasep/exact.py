"""Sparse fraction-free Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm


def _to_integer_row(row: dict[int, Fraction], b: Fraction) -> tuple[dict[int, int], int]:
    den = reduce(lcm, (Fraction(v).denominator for v in (*row.values(), b)), 1)
    return {c: int(v * den) for c, v in row.items() if v}, int(b * den)


def _primitive(row: dict[int, int], b: int) -> tuple[dict[int, int], int]:
    g = reduce(gcd, row.values(), b)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
        b //= g
    return row, b


def solve_sparse(rows: list[dict[int, Fraction]], rhs: list[Fraction], n: int) -> list[Fraction]:
    """Solve the square system ``rows @ x = rhs`` exactly.

    Each row is a ``{column: coefficient}`` map.  Rows are scaled to integers
    and reduced one at a time against earlier pivots, each pivoting on its
    lowest remaining column; rows are kept primitive (content gcd divided
    out) instead of normalising every entry to a ``Fraction``.
    Raises ``ValueError`` for a singular system.
    """
    if len(rows) != n or len(rhs) != n:
        raise ValueError("system must be square")
    pivots: dict[int, tuple[dict[int, int], int]] = {}
    for row, b in zip(rows, rhs):
        row, b = _to_integer_row(row, Fraction(b))
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                break
            c = min(hits)
            prow, pb = pivots[c]
            p, f = prow[c], row[c]
            g = gcd(p, f)
            p, f = p // g, f // g
            new = {k: p * v for k, v in row.items()}
            for k, v in prow.items():
                nv = new.get(k, 0) - f * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row, b = _primitive(new, p * b - f * pb)
        if not row:
            raise ValueError("singular system")
        pivots[min(row)] = (row, b)
    x: dict[int, Fraction] = {}
    for c in sorted(pivots, reverse=True):
        prow, b = pivots[c]
        acc = Fraction(b) - sum(v * x[k] for k, v in prow.items() if k != c)
        x[c] = acc / prow[c]
    return [x[i] for i in range(n)]
