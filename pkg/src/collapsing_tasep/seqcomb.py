"""Binary sequences, the domination order and domination weights.

Sequences are plain ``str`` objects over the characters ``'0'`` and ``'1'``,
read left to right.  ``A`` dominates ``B`` when ``B`` is obtained from ``A``
by moving ones to the right; the weight of ``A`` is the number of sequences
it dominates.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import accumulate

ENUMERATION_LIMIT = 20


def check_sequence(a: str) -> str:
    if not isinstance(a, str) or a.strip("01"):
        raise ValueError(f"not a binary sequence: {a!r}")
    return a


def prefix_ones(a: str, i: int) -> int:
    """Number of ones among the first ``i`` symbols of ``a``."""
    check_sequence(a)
    if not 0 <= i <= len(a):
        raise IndexError(f"prefix length {i} outside 0..{len(a)}")
    return a.count("1", 0, i)


def _prefix_counts(a: str) -> list[int]:
    return list(accumulate((c == "1" for c in a), initial=0))


def dominates(a: str, b: str) -> bool:
    if len(a) != len(b):
        return False
    pa, pb = _prefix_counts(a), _prefix_counts(b)
    return pa[-1] == pb[-1] and all(x >= y for x, y in zip(pa, pb))


@lru_cache(maxsize=None)
def weight(a: str) -> int:
    """Number of sequences dominated by ``a``.

    Counts lattice paths ``B`` position by position; the state is the number
    of ones ``B`` has used so far, which may never exceed the prefix count
    of ``a``.  O(n^2) with exact integers.
    """
    check_sequence(a)
    bound = _prefix_counts(a)
    total = bound[-1]
    # ways[j]: number of admissible prefixes of B holding j ones
    ways = [1] + [0] * total
    for i in range(1, len(a) + 1):
        cap = bound[i]
        new = [0] * (total + 1)
        for j in range(min(cap, total) + 1):
            new[j] = ways[j] + (ways[j - 1] if j else 0)
        ways = new
    return ways[total]


def enumerate_dominated(a: str) -> set[str]:
    """Explicit set of sequences dominated by ``a``.

    Independent of :func:`dominates` and :func:`weight`: closes ``{a}`` under
    the elementary move ``10 -> 01`` (a single one stepping right), which is
    the definition of domination taken literally.
    """
    check_sequence(a)
    if len(a) > ENUMERATION_LIMIT:
        raise ValueError(f"length {len(a)} exceeds enumeration limit {ENUMERATION_LIMIT}")
    seen = {a}
    frontier = [a]
    while frontier:
        cur = frontier.pop()
        for i in range(len(cur) - 1):
            if cur[i] == "1" and cur[i + 1] == "0":
                nxt = cur[:i] + "01" + cur[i + 2 :]
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    return seen


def occurrences(a: str, factor: str) -> list[int]:
    """Start indices of every (possibly overlapping) occurrence of ``factor``."""
    return [i for i in range(len(a) - len(factor) + 1) if a.startswith(factor, i)]


def weight_identity_terms(a: str) -> tuple[str | None, str | None, list[tuple[str, str]]]:
    """Decompose ``a`` for the recursive weight identity.

    Returns ``(x, y, splits)`` where ``x`` is set when ``a == x + '0'``,
    ``y`` is set when ``a == '1' + y`` and ``splits`` holds one ``(x, y)``
    per factorisation ``a == x + '01' + y``.  The identity reads
    ``W(a) = W(x) + W(y) + sum(W(x_j) * W(y_j))`` with absent terms dropped.
    """
    check_sequence(a)
    if not a:
        raise ValueError("identity terms are undefined for the empty sequence")
    left = a[:-1] if a.endswith("0") else None
    right = a[1:] if a.startswith("1") else None
    splits = [(a[:i], a[i + 2 :]) for i in occurrences(a, "01")]
    return left, right, splits


def identity_breakdown(a: str) -> list[int]:
    """Numeric terms of the identity in the order left, right, splits."""
    left, right, splits = weight_identity_terms(a)
    terms = []
    if left is not None:
        terms.append(weight(left))
    if right is not None:
        terms.append(weight(right))
    terms.extend(weight(x) * weight(y) for x, y in splits)
    return terms


def seq_transitions_out(a: str) -> list[str]:
    """All ``c`` with ``a -> c``, one entry per rewrite site.

    Rewrites: drop an initial 0, drop a terminal 1, replace a ``10`` by ``01``.
    """
    check_sequence(a)
    out = []
    if a.startswith("0"):
        out.append(a[1:])
    if a.endswith("1"):
        out.append(a[:-1])
    out.extend(a[:i] + "01" + a[i + 2 :] for i in occurrences(a, "10"))
    if a:
        assert len(out) == 1 + len(occurrences(a, "01"))
    return out


def seq_transitions_in(a: str) -> list[str]:
    """Segments ``b`` whose state-level move produces segment ``a``.

    These are the unsorting moves seen from ``a``: its terminal 0 removed
    (a ``0*`` edge undone), its initial 1 removed (a ``*1`` edge undone),
    and ``x10y`` for every factorisation ``a == x + '01' + y``.  This is not
    the inverse of :func:`seq_transitions_out`.
    """
    check_sequence(a)
    ins = []
    if a.endswith("0"):
        ins.append(a[:-1])
    if a.startswith("1"):
        ins.append(a[1:])
    ins.extend(a[:i] + "10" + a[i + 2 :] for i in occurrences(a, "01"))
    return ins


def flow_balance(a: str) -> tuple[int, int]:
    """(inflow, outflow) of weight through ``a`` under the sequence moves."""
    inflow = sum(weight(b) for b in seq_transitions_in(a))
    return inflow, weight(a) * len(seq_transitions_out(a))


def flow_balance_check(a: str) -> bool:
    """Whether weight inflow equals outflow at segment ``a``."""
    inflow, outflow = flow_balance(a)
    return inflow == outflow
