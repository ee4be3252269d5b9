"""Exact stationary laws on the cycle.

Two state alphabets appear here.  Three-type states use ``'1'``/``'*'``/``'0'``
(particle, empty, anti-particle).  Card states are digit strings ``'1'..'9'``
where a larger digit is a faster class; three-type words map to cards via
``'1'->'3'``, ``'*'->'2'``, ``'0'->'1'``.  The card dynamics sort every cyclic
edge ``(i, i+1)`` at rate 1 so that the larger card ends up on the right.

All probabilities are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, prod

from .collapse import SitePair, collapse_cycle, dual_collapse_cycle
from .exact import solve_sparse
from .seqcomb import weight

FORMULA_MAX_N = 14
GENERATOR_MAX_STATES = 50_000
PUSHFORWARD_MAX_PAIRS = 10_000_000

_TO_CARDS = str.maketrans("1*0", "321")
_FROM_CARDS = str.maketrans("321", "1*0")


def to_cards(x: str) -> str:
    return x.translate(_TO_CARDS)


def from_cards(w: str) -> str:
    if w.strip("123"):
        raise ValueError(f"{w!r} is not a three-card word")
    return w.translate(_FROM_CARDS)


@dataclass(frozen=True)
class ExactDistribution:
    """Exact law over state words; probabilities sum to one exactly."""

    entries: dict[str, Fraction]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if any(p < 0 for p in self.entries.values()):
            raise ValueError("negative probability")
        if sum(self.entries.values()) != 1:
            raise ValueError("probabilities do not sum to 1")

    def __getitem__(self, state: str) -> Fraction:
        return self.entries.get(state, Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def min_probability(self) -> Fraction:
        return min(self.entries.values())

    def argmin(self) -> set[str]:
        m = self.min_probability()
        return {x for x, p in self.entries.items() if p == m}

    def map_states(self, fn) -> "ExactDistribution":
        out: Counter = Counter()
        for x, p in self.entries.items():
            out[fn(x)] += p
        return ExactDistribution(dict(out), dict(self.meta))

    def diff(self, other: "ExactDistribution") -> dict[str, tuple[Fraction, Fraction]]:
        keys = set(self.entries) | set(other.entries)
        return {k: (self[k], other[k]) for k in sorted(keys) if self[k] != other[k]}

    def to_json(self, **header) -> str:
        doc = {**self.meta, **header}
        doc["entries"] = [{"state": x, "p": str(p)} for x, p in sorted(self.entries.items())]
        return json.dumps(doc, indent=2)

    @classmethod
    def from_counts(cls, counts: Mapping[str, int], **meta) -> "ExactDistribution":
        total = sum(counts.values())
        return cls({x: Fraction(c, total) for x, c in counts.items() if c}, meta)


# ----------------------------------------------------------------------------
# three-type states, segments and mass


def three_type_states(n: int, a: int, b: int) -> Iterator[str]:
    """All words of length ``n`` with ``a`` particles and ``b`` anti-particles."""
    if a < 0 or b < 0 or a + b > n:
        raise ValueError(f"need a, b >= 0 and a + b <= N, got N={n} a={a} b={b}")
    for ps in combinations(range(n), a):
        rest = [i for i in range(n) if i not in ps]
        for ts in combinations(rest, b):
            sites = ["*"] * n
            for i in ps:
                sites[i] = "1"
            for i in ts:
                sites[i] = "0"
            yield "".join(sites)


def binary_segments(x: str) -> list[str]:
    """Maximal runs of non-empty sites, read cyclically; empty runs omitted."""
    cut = x.find("*")
    if cut < 0:
        raise ValueError(f"{x!r} has no empty site")
    rotated = x[cut + 1 :] + x[: cut + 1]
    return [seg for seg in rotated.split("*") if seg]


def mass(x: str) -> int:
    """Number of seed sets ``S`` that collapse (with ``T`` = anti sites of ``x``) to ``x``.

    With at least one empty site this is the product of segment weights.
    Without empty sites every ``S`` of the right size works, so the mass is
    ``C(N, a)``.
    """
    if "*" not in x:
        return comb(len(x), x.count("1"))
    return prod(weight(seg) for seg in binary_segments(x))


def normaliser(n: int, a: int, b: int) -> int:
    return comb(n, a) * comb(n, b)


def formula_distribution(n: int, a: int, b: int) -> ExactDistribution:
    """Product-of-weights law for ``a`` particles and ``b`` anti-particles on ``Z_n``."""
    if n > FORMULA_MAX_N:
        raise ValueError(f"N={n} exceeds enumeration guard {FORMULA_MAX_N}")
    z = normaliser(n, a, b)
    if a + b == n:
        # no empty site: uniform over anti-particle placements
        states = list(three_type_states(n, a, b))
        entries = {x: Fraction(1, len(states)) for x in states}
    else:
        entries = {x: Fraction(mass(x), z) for x in three_type_states(n, a, b)}
    return ExactDistribution(entries, {"N": n, "composition": {"1": a, "*": n - a - b, "0": b}})


def least_likely_states(n: int, a: int, b: int) -> set[str]:
    """Cyclic shifts of ``1^a *^c 0^b``."""
    w = "1" * a + "*" * (n - a - b) + "0" * b
    return {w[i:] + w[:i] for i in range(n)}


# ----------------------------------------------------------------------------
# card dynamics and the brute-force generator oracle


def transitions(x: str) -> list[tuple[int, str]]:
    """Rate-1 moves of a card word: ``(edge, target)`` per unsorted edge.

    Edge ``e`` joins site ``e`` to site ``(e + 1) % N``.  Characters compare
    by their ordinal, so digit words sort as cards.
    """
    n = len(x)
    out = []
    for e in range(n):
        j = (e + 1) % n
        if x[e] > x[j]:
            y = list(x)
            y[e], y[j] = y[j], y[e]
            out.append((e, "".join(y)))
    return out


def in_transitions(x: str) -> list[tuple[int, str]]:
    """``(edge, source)`` for every move that lands on ``x``."""
    n = len(x)
    out = []
    for e in range(n):
        j = (e + 1) % n
        if x[e] < x[j]:
            y = list(x)
            y[e], y[j] = y[j], y[e]
            out.append((e, "".join(y)))
    return out


def normalise_composition(composition) -> dict[int, int]:
    """Accept ``{card: count}`` or an iterable of card values."""
    if isinstance(composition, Mapping):
        comp = {int(k): int(v) for k, v in composition.items() if v}
    else:
        comp = dict(Counter(int(c) for c in composition))
    if not comp:
        raise ValueError("empty composition")
    if any(not 1 <= c <= 9 for c in comp) or any(v < 0 for v in comp.values()):
        raise ValueError(f"cards must be 1..9 with nonnegative counts: {composition!r}")
    return dict(sorted(comp.items()))


def card_states(composition) -> Iterator[str]:
    comp = normalise_composition(composition)
    n = sum(comp.values())

    def rec(prefix: list[str], left: dict[int, int]):
        if len(prefix) == n:
            yield "".join(prefix)
            return
        for c in left:
            if left[c]:
                left[c] -= 1
                prefix.append(str(c))
                yield from rec(prefix, left)
                prefix.pop()
                left[c] += 1

    yield from rec([], dict(comp))


def state_count(composition) -> int:
    comp = normalise_composition(composition)
    n = sum(comp.values())
    out, rest = 1, n
    for v in comp.values():
        out *= comb(rest, v)
        rest -= v
    return out


def generator_stationary(composition) -> ExactDistribution:
    """Stationary law of the card chain by exact linear solve.

    Enumerates every arrangement of the composition, assembles the rate
    matrix edge by edge (rates accumulate with multiplicity), pins the first
    state's weight to 1, solves the balance equations at the remaining
    states and normalises.
    """
    comp = normalise_composition(composition)
    count = state_count(comp)
    if count > GENERATOR_MAX_STATES:
        raise ValueError(f"{count} states exceeds generator guard {GENERATOR_MAX_STATES}")
    states = list(card_states(comp))
    meta = {"N": len(states[0]), "composition": {str(k): v for k, v in comp.items()}}
    if len(states) == 1:
        return ExactDistribution({states[0]: Fraction(1)}, meta)
    index = {x: i for i, x in enumerate(states)}
    # balance[j]: {i: coefficient of pi_i in d pi_j / dt}
    balance: list[dict[int, int]] = [dict() for _ in states]
    adj: list[set[int]] = [set() for _ in states]
    for x in states:
        i = index[x]
        for _, y in transitions(x):
            j = index[y]
            balance[j][i] = balance[j].get(i, 0) + 1
            balance[i][i] = balance[i].get(i, 0) - 1
            adj[i].add(j)
            adj[j].add(i)
    _assert_connected(adj)
    n = len(states)
    rows = [{c - 1: v for c, v in balance[r].items() if c} for r in range(1, n)]
    rhs = [Fraction(-balance[r].get(0, 0)) for r in range(1, n)]
    x = [Fraction(1)] + solve_sparse(rows, rhs, n - 1)
    total = sum(x)
    return ExactDistribution({s: v / total for s, v in zip(states, x)}, meta)


def _assert_connected(adj: list[set[int]]) -> None:
    seen = {0}
    queue = deque([0])
    while queue:
        for v in adj[queue.popleft()]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    if len(seen) != len(adj):
        raise AssertionError("card chain is not irreducible")


def exact_three_type(n: int, a: int, b: int) -> ExactDistribution:
    """Generator oracle for ``a`` particles, ``b`` anti-particles, in three-type words."""
    if a < 0 or b < 0 or a + b > n:
        raise ValueError(f"need a, b >= 0 and a + b <= N, got N={n} a={a} b={b}")
    dist = generator_stationary({3: a, 2: n - a - b, 1: b})
    out = dist.map_states(from_cards)
    out.meta["composition"] = {"1": a, "*": n - a - b, "0": b}
    return out


def mass_derivative(x: str) -> int:
    """Net rate of change of the mass at three-type state ``x`` (zero if stationary)."""
    w = to_cards(x)
    inflow = sum(mass(from_cards(y)) for _, y in in_transitions(w))
    return inflow - mass(x) * len(transitions(w))


# ----------------------------------------------------------------------------
# collapse pushforwards and marginals


def _pair_pushforward(n: int, a: int, b: int, collapse) -> ExactDistribution:
    pairs = normaliser(n, a, b)
    if pairs > PUSHFORWARD_MAX_PAIRS:
        raise ValueError(f"{pairs} pairs exceeds pushforward guard {PUSHFORWARD_MAX_PAIRS}")
    counts: Counter = Counter()
    for S in combinations(range(n), a):
        for T in combinations(range(n), b):
            counts[collapse(SitePair.of(S, T), n)] += 1
    return ExactDistribution.from_counts(
        counts, N=n, composition={"1": a, "*": n - a - b, "0": b}
    )


def collapse_pushforward(n: int, a: int, b: int) -> ExactDistribution:
    """Image of the uniform law on ``(S, T)`` with ``|S| = a``, ``|T| = b``."""
    return _pair_pushforward(n, a, b, collapse_cycle)


def dual_pushforward(n: int, a: int, b: int) -> ExactDistribution:
    return _pair_pushforward(n, a, b, dual_collapse_cycle)


def preimage_count(x: str) -> int:
    """Number of seed sets collapsing to ``x`` (with ``T`` read off ``x``), by enumeration."""
    n, a = len(x), x.count("1")
    T = [i for i, c in enumerate(x) if c == "0"]
    return sum(
        collapse_cycle(SitePair.of(S, T), n) == x for S in combinations(range(n), a)
    )


def _marginal(dist: ExactDistribution, symbol: str) -> dict[frozenset[int], Fraction]:
    out: Counter = Counter()
    for x, p in dist.items():
        out[frozenset(i for i, c in enumerate(x) if c == symbol)] += p
    return dict(out)


def particle_marginal(dist: ExactDistribution) -> dict[frozenset[int], Fraction]:
    """Law of the set of particle positions."""
    return _marginal(dist, "1")


def anti_marginal(dist: ExactDistribution) -> dict[frozenset[int], Fraction]:
    return _marginal(dist, "0")
