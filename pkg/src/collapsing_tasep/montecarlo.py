"""Seeded Monte Carlo experiments for the collapsed measures.

Randomness comes from numpy's PCG64 ``Generator``.  Every experiment draws
from its own stream, ``default_rng([seed, stream])``, so identical seeds
reproduce identical outputs.  Hot loops are numba-compiled.

Line samples use integer site codes ``ANTI=0``, ``EMPTY=1``, ``PART=2``
(the card order), which :func:`codes_to_word` turns into ``'0*1'`` text.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass

import numba
import numpy as np

from .stationary import from_cards, normalise_composition, to_cards

DEFAULT_SEED = 20240601
DEFAULT_MARGIN = 512
CHUNK = 1 << 18
MAX_TALLY_CODES = 1 << 26

ANTI, EMPTY, PART = 0, 1, 2
_SYMBOLS = np.array(list("0*1"))

# stream indices, one per experiment kind
_CHAIN, _CYCLE, _LINE, _FACTOR = 1, 2, 3, 4


def rng_for(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(stream)])


def codes_to_word(codes: np.ndarray) -> str:
    return "".join(_SYMBOLS[codes])


def tv_distance(empirical: Mapping[str, float], exact: Mapping[str, float]) -> float:
    """Total variation between two laws given as weights (normalised here)."""
    ze = sum(empirical.values())
    zx = sum(exact.values())
    keys = set(empirical) | set(exact)
    return 0.5 * sum(
        abs(empirical.get(k, 0) / ze - float(exact.get(k, 0)) / float(zx)) for k in keys
    )


# ----------------------------------------------------------------------------
# cycle: uniformised card chain


@numba.njit(cache=True)
def _run_chain(ranks, edges, base, powers, counts, code, tally_from):
    n = ranks.shape[0]
    for t in range(edges.shape[0]):
        e = edges[t]
        j = e + 1
        if j == n:
            j = 0
        ri = ranks[e]
        rj = ranks[j]
        if ri > rj:
            ranks[e] = rj
            ranks[j] = ri
            code += (rj - ri) * powers[e] + (ri - rj) * powers[j]
        if t >= tally_from:
            counts[code] += 1
    return code


def simulate_chain(initial: str, steps: int, seed: int = DEFAULT_SEED,
                   burn_in: float = 0.2) -> Counter:
    """Occupancy tally of the uniformised chain started from ``initial``.

    Each step sorts one uniformly chosen edge (a no-op if already sorted).
    The first ``burn_in`` fraction of steps is discarded.  ``initial`` is a
    card word, or a three-type word when it contains ``'0'`` or ``'*'``; the
    tally keys use the same alphabet.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    three_type = "0" in initial or "*" in initial
    cards = to_cards(initial) if three_type else initial
    comp = normalise_composition(cards)
    values = sorted(comp)
    rank_of = {str(v): r for r, v in enumerate(values)}
    n, base = len(cards), len(values)
    if base ** n > MAX_TALLY_CODES:
        raise ValueError(f"{base}^{n} state codes exceed tally limit {MAX_TALLY_CODES}")
    ranks = np.array([rank_of[c] for c in cards], dtype=np.int64)
    powers = base ** np.arange(n, dtype=np.int64)
    counts = np.zeros(base ** n, dtype=np.int64)
    code = int((ranks * powers).sum())
    rng = rng_for(seed, _CHAIN)
    burn = int(steps * burn_in)
    done = 0
    while done < steps:
        m = min(CHUNK, steps - done)
        edges = rng.integers(0, n, size=m)
        code = _run_chain(ranks, edges, base, powers, counts, code, burn - done)
        done += m
    tally: Counter = Counter()
    for c in np.flatnonzero(counts):
        digits = [(c // base**i) % base for i in range(n)]
        word = "".join(str(values[d]) for d in digits)
        tally[from_cards(word) if three_type else word] = int(counts[c])
    return tally


# ----------------------------------------------------------------------------
# cycle: collapsed uniform pairs


@numba.njit(cache=True)
def _collapse_cycle_rows(S, T, n, out):
    """Collapse each row's seeds ``S`` with anti sites ``T``; write base-3 codes."""
    sites = np.empty(n, dtype=np.int64)
    for r in range(S.shape[0]):
        for i in range(n):
            sites[i] = EMPTY
        for k in range(T.shape[1]):
            sites[T[r, k]] = ANTI
        for k in range(S.shape[1]):
            pos = S[r, k]
            while sites[pos] != EMPTY:
                pos -= 1
                if pos < 0:
                    pos = n - 1
            sites[pos] = PART
        code = 0
        for i in range(n - 1, -1, -1):
            code = code * 3 + sites[i]
        out[r] = code


def _uniform_subsets(rng: np.random.Generator, rows: int, n: int, k: int) -> np.ndarray:
    return np.argsort(rng.random((rows, n)), axis=1)[:, :k].astype(np.int64)


def sample_collapsed_uniform(n: int, a: int, b: int, samples: int,
                             seed: int = DEFAULT_SEED) -> Counter:
    """Tally of collapses of independent uniform ``S`` (size ``a``) and ``T`` (size ``b``)."""
    if a < 0 or b < 0 or a + b > n:
        raise ValueError(f"need a, b >= 0 and a + b <= N, got N={n} a={a} b={b}")
    rng = rng_for(seed, _CYCLE)
    counts: Counter = Counter()
    done = 0
    while done < samples:
        m = min(CHUNK, samples - done)
        S = _uniform_subsets(rng, m, n, a)
        T = _uniform_subsets(rng, m, n, b)
        out = np.empty(m, dtype=np.int64)
        _collapse_cycle_rows(S, T, n, out)
        codes, freq = np.unique(out, return_counts=True)
        for c, f in zip(codes, freq):
            counts[int(c)] += int(f)
        done += m
    tally: Counter = Counter()
    for c, f in counts.items():
        tally[codes_to_word(np.array([(c // 3**i) % 3 for i in range(n)]))] = f
    return tally


# ----------------------------------------------------------------------------
# line windows


@dataclass(frozen=True)
class LineParams:
    """i.i.d. seed density ``p``, anti density ``q`` on ``[-L-M, L+M]``, reporting ``[-L, L]``."""

    p: float
    q: float
    L: int = 5000
    M: int = DEFAULT_MARGIN
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not (0 <= self.p <= 1 and 0 <= self.q <= 1):
            raise ValueError(f"densities must lie in [0, 1], got p={self.p} q={self.q}")
        if self.L < 0 or self.M < 0:
            raise ValueError("window half-width and margin must be nonnegative")

    @property
    def size(self) -> int:
        return 2 * (self.L + self.M) + 1

    def require_three_densities(self) -> None:
        if self.p + self.q >= 1:
            raise ValueError(f"need p + q < 1 for a non-trivial measure, got {self.p + self.q}")


@dataclass(frozen=True)
class WalkLaw:
    """Step law of the backward exploration walk: +1 when a site is in neither ``S`` nor ``T``,
    -1 when it is in both."""

    p: float
    q: float

    @property
    def up(self) -> float:
        return (1 - self.p) * (1 - self.q)

    @property
    def down(self) -> float:
        return self.p * self.q

    @property
    def stay(self) -> float:
        return 1 - self.up - self.down

    @property
    def mean(self) -> float:
        return self.up - self.down


@numba.njit(cache=True)
def _collapse_line(S, T, state, landing):
    """Collapse one line without wraparound via a stack of open sites.

    Scanning left to right, the nearest open site at or left of a seed is
    the top of the stack.  ``landing[i]`` is where the seed at ``i`` lands,
    ``-1`` if dropped or no seed.
    """
    n = S.shape[0]
    stack = np.empty(n, dtype=np.int64)
    top = 0
    for i in range(n):
        landing[i] = -1
        if T[i]:
            state[i] = ANTI
        else:
            state[i] = EMPTY
            stack[top] = i
            top += 1
        if S[i]:
            if top > 0:
                top -= 1
                state[stack[top]] = PART
                landing[i] = stack[top]


@numba.njit(cache=True)
def _collapse_line_rows(S, T, state):
    landing = np.empty(S.shape[1], dtype=np.int64)
    for r in range(S.shape[0]):
        _collapse_line(S[r], T[r], state[r], landing)


def collapse_line_arrays(S: np.ndarray, T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fast line-window collapse on boolean site arrays; returns ``(codes, landing)``."""
    S = np.ascontiguousarray(S, dtype=np.bool_)
    T = np.ascontiguousarray(T, dtype=np.bool_)
    state = np.empty(S.shape[0], dtype=np.int8)
    landing = np.empty(S.shape[0], dtype=np.int64)
    _collapse_line(S, T, state, landing)
    return state, landing


def _draw_line(params: LineParams, rng: np.random.Generator):
    S = rng.random(params.size) < params.p
    T = rng.random(params.size) < params.q
    state, landing = collapse_line_arrays(S, T)
    lo = params.M
    hi = params.M + 2 * params.L + 1
    return S, state, landing, lo, hi


def sample_line_window(params: LineParams, windows: int = 1) -> list[str]:
    """Central-window states ``[-L, L]`` of independent line collapses."""
    rng = rng_for(params.seed, _LINE)
    return [codes_to_word(_draw_line(params, rng)[1][params.M : params.M + 2 * params.L + 1])
            for _ in range(windows)]


def _batch_stat(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values, dtype=float)
    se = arr.std(ddof=1) / math.sqrt(len(arr)) if len(arr) > 1 else float("nan")
    return float(arr.mean()), float(se)


def line_statistics(params: LineParams, windows: int = 20) -> dict:
    """Per-type densities and nearest-neighbour particle correlation in the central window.

    Each entry is ``(mean, standard error)`` with the error taken over
    independent windows.
    """
    rng = rng_for(params.seed, _LINE)
    dens = {"particle": [], "anti": [], "empty": [], "pair": []}
    for _ in range(windows):
        _, state, _, lo, hi = _draw_line(params, rng)
        w = state[lo:hi]
        eta = (w == PART).astype(float)
        dens["particle"].append(eta.mean())
        dens["anti"].append((w == ANTI).mean())
        dens["empty"].append((w == EMPTY).mean())
        dens["pair"].append((eta[:-1] * eta[1:]).mean())
    return {k: _batch_stat(v) for k, v in dens.items()}


def hitting_time_law(p: float, q: float, horizon: int) -> tuple[dict[int, float], float]:
    """Law of the first time the walk from 0 reaches level 1, up to ``horizon``.

    Returns ``(law, residual)`` where ``residual`` is the mass not yet
    absorbed by ``horizon``.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    walk = WalkLaw(p, q)
    # level[k] holds the probability of being at height -k without having hit 1
    level = np.zeros(horizon + 1)
    level[0] = 1.0
    law = {}
    for t in range(1, horizon + 1):
        law[t] = walk.up * level[0]
        nxt = walk.stay * level
        nxt[:-1] += walk.up * level[1:]
        nxt[1:] += walk.down * level[:-1]
        level = nxt
    return law, float(max(0.0, 1.0 - sum(law.values())))


def gap_statistics(params: LineParams, gaps: int) -> Counter:
    """Distances between consecutive empty sites in central windows, at least ``gaps`` of them."""
    params.require_three_densities()
    rng = rng_for(params.seed, _LINE)
    tally: Counter = Counter()
    total = 0
    while total < gaps:
        _, state, _, lo, hi = _draw_line(params, rng)
        holes = np.flatnonzero(state[lo:hi] == EMPTY)
        d = np.diff(holes)
        vals, freq = np.unique(d, return_counts=True)
        for v, f in zip(vals, freq):
            tally[int(v)] += int(f)
        total += len(d)
    return tally


def displacement_tail(params: LineParams, windows: int = 20) -> Counter:
    """Seed position minus landing position, for seeds landing in the central window."""
    params.require_three_densities()
    rng = rng_for(params.seed, _LINE)
    tally: Counter = Counter()
    for _ in range(windows):
        S, _, landing, lo, hi = _draw_line(params, rng)
        seeds = np.flatnonzero(S)
        land = landing[seeds]
        keep = (land >= lo) & (land < hi)
        vals, freq = np.unique(seeds[keep] - land[keep], return_counts=True)
        for v, f in zip(vals, freq):
            tally[int(v)] += int(f)
    return tally


def tail_slope(tally: Mapping[int, int], min_count: int = 20) -> float:
    """Least-squares slope of log frequency against displacement."""
    xs = sorted(d for d, c in tally.items() if c >= min_count)
    if len(xs) < 2:
        raise ValueError("not enough populated displacements for a fit")
    total = sum(tally.values())
    y = np.log([tally[d] / total for d in xs])
    return float(np.polyfit(np.asarray(xs, dtype=float), y, 1)[0])


def factoring_check(params: LineParams, samples: int, width: int = 1,
                    z_limit: float = 5.0) -> dict:
    """Test independence of the two sides of an empty site.

    Draws independent short lines on ``[-width, width + M]``, keeps those
    with site 0 empty until ``samples`` are collected, and compares the joint
    law of the width-``width`` patterns left and right of 0 with the product
    of their marginals cell by cell.
    """
    params.require_three_densities()
    rng = rng_for(params.seed, _FACTOR)
    size = 2 * width + 1 + params.M
    lefts, rights = [], []
    kept = 0
    weights = 3 ** np.arange(width)
    while kept < samples:
        rows = min(CHUNK // 4, 2 * (samples - kept) + 16)
        S = rng.random((rows, size)) < params.p
        T = rng.random((rows, size)) < params.q
        state = np.empty((rows, size), dtype=np.int8)
        _collapse_line_rows(S, T, state)
        sel = state[:, width] == EMPTY
        left = state[sel, :width].astype(np.int64) @ weights
        right = state[sel, width + 1 : 2 * width + 1].astype(np.int64) @ weights
        take = min(len(left), samples - kept)
        lefts.append(left[:take])
        rights.append(right[:take])
        kept += take
    left = np.concatenate(lefts)
    right = np.concatenate(rights)
    joint, product, z = independence_table(left, right, 3**width)
    return {
        "samples": samples,
        "width": width,
        "max_z": float(z.max()),
        "z_limit": z_limit,
        "passed": bool(z.max() < z_limit),
        "joint": joint.tolist(),
        "product": product.tolist(),
    }


def independence_table(left: np.ndarray, right: np.ndarray, cells: int):
    """Joint frequencies, product of marginals and cellwise z-scores of their gap."""
    n = len(left)
    joint = np.zeros((cells, cells))
    np.add.at(joint, (left, right), 1)
    joint /= n
    product = np.outer(joint.sum(axis=1), joint.sum(axis=0))
    with np.errstate(divide="ignore", invalid="ignore"):
        se = np.sqrt(product * (1 - product) / n)
        z = np.where(product > 0, np.abs(joint - product) / se, 0.0)
    return joint, product, z


def margin_adequacy(params: LineParams, windows: int = 20, z_limit: float = 4.0) -> dict:
    """Compare central-window statistics at margin ``M`` and ``2M``."""
    a = line_statistics(params, windows)
    doubled = LineParams(params.p, params.q, params.L, 2 * params.M, params.seed + 1)
    b = line_statistics(doubled, windows)
    z = {
        k: abs(a[k][0] - b[k][0]) / math.hypot(a[k][1], b[k][1]) if a[k][1] or b[k][1] else 0.0
        for k in a
    }
    return {"z": z, "passed": all(v < z_limit for v in z.values())}
