"""Collapsing pairs of site sets into exclusion-process states.

States are strings with one character per site: ``'1'`` particle, ``'*'``
empty, ``'0'`` anti-particle; index 0 is leftmost (on the cycle, the cut
point).  Anti-particles are placed at ``T``; each seed in ``S`` then puts a
particle at the nearest empty site at or to the left of itself.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

PARTICLE, EMPTY, ANTI = "1", "*", "0"


class CapacityError(ValueError):
    """Raised when ``|S| + |T|`` exceeds the cycle length."""

    def __init__(self, n_s: int, n_t: int, n: int):
        super().__init__(f"|S|+|T| = {n_s}+{n_t} = {n_s + n_t} exceeds N = {n}")
        self.n_s, self.n_t, self.n = n_s, n_t, n


@dataclass(frozen=True)
class SitePair:
    """Seeds ``S`` and anti-particle sites ``T``; the two may overlap."""

    S: frozenset[int]
    T: frozenset[int]

    @classmethod
    def of(cls, S: Iterable[int] = (), T: Iterable[int] = ()) -> "SitePair":
        return cls(frozenset(S), frozenset(T))


def _check_cycle(pair: SitePair, n: int) -> None:
    for x in pair.S | pair.T:
        if not 0 <= x < n:
            raise ValueError(f"position {x} outside the cycle 0..{n - 1}")
    if len(pair.S) + len(pair.T) > n:
        raise CapacityError(len(pair.S), len(pair.T), n)


def collapse_cycle(pair: SitePair, n: int, order: Sequence[int] | None = None) -> str:
    """Collapse on the cycle of length ``n``.

    ``order`` fixes the processing order of the seeds (default ascending);
    the result does not depend on it.
    """
    _check_cycle(pair, n)
    sites = [EMPTY] * n
    for t in pair.T:
        sites[t] = ANTI
    for s in sorted(pair.S) if order is None else order:
        pos = s
        while sites[pos] != EMPTY:
            pos = (pos - 1) % n
        sites[pos] = PARTICLE
    return "".join(sites)


def dual_collapse_cycle(pair: SitePair, n: int) -> str:
    """Particles fixed at ``S``; each anti-particle moves right to the nearest empty site."""
    _check_cycle(pair, n)
    sites = [EMPTY] * n
    for s in pair.S:
        sites[s] = PARTICLE
    for t in sorted(pair.T):
        pos = t
        while sites[pos] != EMPTY:
            pos = (pos + 1) % n
        sites[pos] = ANTI
    return "".join(sites)


def collapse_line_window(pair: SitePair, lo: int, hi: int) -> tuple[str, int]:
    """Collapse inside the window ``[lo, hi]`` without wraparound.

    A seed with no empty site to its left inside the window is dropped.
    Returns the window state and the number of dropped seeds.
    """
    for x in pair.S | pair.T:
        if not lo <= x <= hi:
            raise ValueError(f"position {x} outside window [{lo}, {hi}]")
    sites = [EMPTY] * (hi - lo + 1)
    for t in pair.T:
        sites[t - lo] = ANTI
    dropped = 0
    for s in sorted(pair.S):
        pos = s - lo
        while pos >= 0 and sites[pos] != EMPTY:
            pos -= 1
        if pos < 0:
            dropped += 1
        else:
            sites[pos] = PARTICLE
    return "".join(sites), dropped


def particle_criterion(pos: int, pair: SitePair, n: int | None = None,
                       window: tuple[int, int] | None = None) -> bool:
    """Interval test for a particle at ``pos``, without running the procedure.

    ``pos`` holds a particle iff ``pos`` is not in ``T`` and some interval
    ``I = [pos, b]`` has ``|I & S| + |I & T| >= |I|``.  On the cycle (pass
    ``n``) intervals wrap and have length at most ``n``; on a line window
    (pass ``window``) they stay inside it.
    """
    if (n is None) == (window is None):
        raise ValueError("pass exactly one of n (cycle) or window (line)")
    if pos in pair.T:
        return False
    if n is not None:
        sites = [(pos + k) % n for k in range(n)]
    else:
        lo, hi = window
        if not lo <= pos <= hi:
            raise ValueError(f"position {pos} outside window [{lo}, {hi}]")
        sites = range(pos, hi + 1)
    covered = 0
    for length, x in enumerate(sites, start=1):
        covered += (x in pair.S) + (x in pair.T)
        if covered >= length:
            return True
    return False


def criterion_state(pair: SitePair, n: int | None = None,
                    window: tuple[int, int] | None = None) -> str:
    """Whole state assembled from :func:`particle_criterion` alone."""
    positions = range(n) if n is not None else range(window[0], window[1] + 1)
    return "".join(
        ANTI if x in pair.T else PARTICLE if particle_criterion(x, pair, n, window) else EMPTY
        for x in positions
    )


def reverse_charge(state: str) -> str:
    """Reflect the sites and swap particles with anti-particles."""
    return state[::-1].translate(str.maketrans("10", "01"))


def reflect_pair(pair: SitePair, n: int) -> SitePair:
    """Pair whose primal collapse is the reversal of the dual collapse of ``pair``."""
    return SitePair.of(S=(n - 1 - t for t in pair.T), T=(n - 1 - s for s in pair.S))
