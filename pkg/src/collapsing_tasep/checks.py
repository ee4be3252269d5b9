"""Acceptance checks shared by the test-suite and ``collapsing-tasep verify``.

Each check returns a :class:`CheckResult`; a check passes only if its
condition holds and it finishes inside its time budget.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from . import conjectures as cj
from . import montecarlo as mc
from .seqcomb import enumerate_dominated, flow_balance_check, identity_breakdown, weight
from .stationary import (
    anti_marginal,
    binary_segments,
    collapse_pushforward,
    exact_three_type,
    formula_distribution,
    generator_stationary,
    least_likely_states,
    mass,
    mass_derivative,
    normaliser,
    particle_marginal,
    preimage_count,
    three_type_states,
)
from .treebij import decode, enumerate_trees, f_encode, g_encode


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number:2d} {self.name} ({self.seconds:.1f}s / {self.budget:.0f}s)"

    def as_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "budget": self.budget,
            "detail": self.detail,
        }


def _run(number: int, name: str, budget: float, body) -> CheckResult:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        detail["timeout"] = True
    return CheckResult(number, name, bool(ok) and elapsed <= budget, elapsed, budget, detail)


def _words(max_len: int, min_len: int = 0):
    for n in range(min_len, max_len + 1):
        for bits in product("01", repeat=n):
            yield "".join(bits)


def paper_constants() -> CheckResult:
    def body():
        x = "*10**10100*0101"
        got = {
            "W(1010)": weight("1010"),
            "W(1011010)": weight("1011010"),
            "breakdown(1011010)": identity_breakdown("1011010"),
            "W(0101)": weight("0101"),
            "W(10100)": weight("10100"),
            "mass": mass(x),
            "preimages": preimage_count(x),
            "P": Fraction(mass(x), normaliser(15, 5, 6)),
        }
        want = {
            "W(1010)": 5,
            "W(1011010)": 23,
            "breakdown(1011010)": [7, 9, 5, 2],
            "W(0101)": 2,
            "W(10100)": 9,
            "mass": 36,
            "preimages": 36,
            "P": Fraction(36, comb(15, 5) * comb(15, 6)),
        }
        return got == want, {"mismatch": {k: str(got[k]) for k in got if got[k] != want[k]}}

    return _run(1, "paper constants", 1, body)


def weight_oracle(max_len: int = 12) -> CheckResult:
    def body():
        bad = [a for a in _words(max_len) if weight(a) != len(enumerate_dominated(a))]
        return not bad, {"max_len": max_len, "failures": bad[:10]}

    return _run(2, "weight DP equals dominated-set enumeration", 60, body)


def weight_identity(max_len: int = 14) -> CheckResult:
    def body():
        bad = [a for a in _words(max_len, 1) if sum(identity_breakdown(a)) != weight(a)]
        return not bad, {"max_len": max_len, "failures": bad[:10]}

    return _run(3, "recursive weight identity", 120, body)


def tree_bijection(max_edges: int = 9) -> CheckResult:
    def body():
        round_trip_bad = 0
        cor_bad = []
        for n in range(max_edges + 1):
            per_seq: Counter = Counter()
            for t in enumerate_trees(n):
                a, b = f_encode(t), g_encode(t)
                round_trip_bad += decode(a, b) != t
                per_seq[a] += 1
            cor_bad += [a for a in _words(n, n) if per_seq[a] != weight(a)]
        return not round_trip_bad and not cor_bad, {
            "round_trip_failures": round_trip_bad,
            "count_failures": cor_bad[:10],
        }

    return _run(4, "tree bijection and tree counts", 60, body)


def cycle_theorem(max_n_generator: int = 8, max_n_pushforward: int = 7) -> CheckResult:
    def body():
        bad = []
        for n in range(2, max_n_generator + 1):
            for a in range(1, n):
                for b in range(1, n - a + 1):
                    f = formula_distribution(n, a, b)
                    if f != exact_three_type(n, a, b):
                        bad.append(("generator", n, a, b))
                    if n <= max_n_pushforward and f != collapse_pushforward(n, a, b):
                        bad.append(("pushforward", n, a, b))
        return not bad, {"failures": bad}

    return _run(5, "product formula = generator oracle = collapse pushforward", 600, body)


def stationarity_machinery(max_n: int = 10, max_len: int = 12) -> CheckResult:
    def body():
        bad_states = [
            x
            for n in range(1, max_n + 1)
            for a in range(n + 1)
            for b in range(n - a + 1)
            for x in three_type_states(n, a, b)
            if mass_derivative(x) != 0
        ]
        bad_seqs = [a for a in _words(max_len) if not flow_balance_check(a)]
        return not bad_states and not bad_seqs, {
            "derivative_failures": bad_states[:10],
            "flow_failures": bad_seqs[:10],
        }

    return _run(6, "mass derivative and segment flow balance", 600, body)


def least_likely(max_n: int = 10) -> CheckResult:
    """Minimum value, its attainment at the shifts, integrality of all ratios.

    Also pins down the full set of minimisers: exactly the states all of
    whose segments have weight 1 (this includes non-shift states such as
    ``1*0*``).
    """

    def body():
        bad = []
        extra_minimisers = 0
        for n in range(3, max_n + 1):
            for a in range(1, n - 1):
                for b in range(1, n - a):
                    d = formula_distribution(n, a, b)
                    floor = Fraction(1, normaliser(n, a, b))
                    shifts = least_likely_states(n, a, b)
                    weight_one = {
                        x for x in d if all(weight(s) == 1 for s in binary_segments(x))
                    }
                    ok = (
                        d.min_probability() == floor
                        and len(shifts) == n
                        and all(d[x] == floor for x in shifts)
                        and d.argmin() == weight_one
                        and all((p / floor).denominator == 1 for _, p in d.items())
                    )
                    extra_minimisers += len(d.argmin() - shifts)
                    if not ok:
                        bad.append((n, a, b))
        return not bad, {"failures": bad, "non_shift_minimisers": extra_minimisers}

    return _run(7, "least likely states and integrality", 600, body)


def uniform_marginals(max_n: int = 8) -> CheckResult:
    def body():
        bad = []
        for n in range(1, max_n + 1):
            for a in range(n + 1):
                for b in range(n - a + 1):
                    d = formula_distribution(n, a, b)
                    pm, am = particle_marginal(d), anti_marginal(d)
                    if set(pm.values()) != {Fraction(1, comb(n, a))} or len(pm) != comb(n, a):
                        bad.append(("particle", n, a, b))
                    if set(am.values()) != {Fraction(1, comb(n, b))} or len(am) != comb(n, b):
                        bad.append(("anti", n, a, b))
        return not bad, {"failures": bad}

    return _run(8, "uniform particle and anti-particle marginals", 600, body)


def monte_carlo_consistency(seed: int = mc.DEFAULT_SEED, chain_steps: int = 10**7,
                            samples: int = 10**6, tv_limit: float = 0.02) -> CheckResult:
    def body():
        chain = mc.simulate_chain("11**00", chain_steps, seed)
        tv_chain = mc.tv_distance(chain, formula_distribution(6, 2, 2).entries)
        sampled = mc.sample_collapsed_uniform(8, 2, 2, samples, seed)
        tv_sample = mc.tv_distance(sampled, formula_distribution(8, 2, 2).entries)
        return tv_chain < tv_limit and tv_sample < tv_limit, {
            "tv_chain": tv_chain,
            "tv_sample": tv_sample,
            "tv_limit": tv_limit,
        }

    return _run(9, "Monte Carlo chain and collapse sampling", 600, body)


def line_measure(p: float = 0.3, q: float = 0.2, L: int = 5000, windows: int = 20,
                 gaps: int = 10**5, factor_samples: int = 10**5,
                 seed: int = mc.DEFAULT_SEED) -> CheckResult:
    def body():
        params = mc.LineParams(p, q, L, mc.DEFAULT_MARGIN, seed)
        stats = mc.line_statistics(params, windows)
        targets = {"particle": p, "anti": q, "empty": 1 - p - q, "pair": p * p}
        z = {k: abs(stats[k][0] - v) / stats[k][1] for k, v in targets.items()}
        law, residual = mc.hitting_time_law(p, q, 400)
        tv_gap = mc.tv_distance(mc.gap_statistics(params, gaps), law)
        slope = mc.tail_slope(mc.displacement_tail(params, windows))
        f1 = mc.factoring_check(params, factor_samples, width=1)
        f2 = mc.factoring_check(params, factor_samples, width=2)
        margin = mc.margin_adequacy(params, windows)
        ok = (
            all(v < 3 for v in z.values())
            and tv_gap < 0.02
            and slope < 0
            and f1["passed"]
            and f2["passed"]
            and margin["passed"]
        )
        return ok, {
            "z_scores": z,
            "tv_gap": tv_gap,
            "hitting_residual": residual,
            "tail_slope": slope,
            "factoring_max_z": [f1["max_z"], f2["max_z"]],
            "margin_z": margin["z"],
        }

    return _run(10, "line window densities, gaps, tail, factoring", 600, body)


def multitype(max_n: int = 6, max_classes: int = 4) -> CheckResult:
    def body():
        exact = generator_stationary([1, 2, 3, 4])
        report = cj.check_conjectures([1, 2, 3, 4], exact)
        mismatches = cj.candidate_mismatches([1, 2, 3, 4], exact)
        table = [cj.check_conjectures(c).row() for c in cj.compositions(max_n, max_classes)]
        ok = (
            exact["1324"] != exact["1423"]
            and all(mismatches.values())
            and all(r["conjecture1"] != cj.FAIL for r in table)
            and all(r["conjecture2"] != cj.FAIL for r in table)
            and all(r["conjecture3"] == cj.PASS for r in table)
        )
        status = Counter((r["conjecture1"], r["conjecture2"], r["conjecture3"]) for r in table)
        return ok, {
            "mu_1324": str(exact["1324"]),
            "mu_1423": str(exact["1423"]),
            "candidates_checked": len(mismatches),
            "candidates_matching": [k for k, v in mismatches.items() if not v],
            "compositions": len(table),
            "status_counts": {"/".join(k): v for k, v in status.items()},
            "extremal_report": report.row(),
        }

    return _run(11, "multitype observations and conjectures", 600, body)


ALL_CHECKS = [
    paper_constants,
    weight_oracle,
    weight_identity,
    tree_bijection,
    cycle_theorem,
    stationarity_machinery,
    least_likely,
    uniform_marginals,
    monte_carlo_consistency,
    line_measure,
    multitype,
]


def run_all(seed: int = mc.DEFAULT_SEED, echo=None) -> list[CheckResult]:
    results = []
    for check in ALL_CHECKS:
        if check in (monte_carlo_consistency, line_measure):
            res = check(seed=seed)
        else:
            res = check()
        if echo is not None:
            echo(res.line())
        results.append(res)
    return results
