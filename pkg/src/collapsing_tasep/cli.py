"""``collapsing-tasep`` command line.

Every subcommand prints JSON (or CSV with ``--format csv``) whose
``config`` block echoes the resolved parameters.  Exit status: 0 when all
requested checks pass, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import checks
from . import conjectures as cj
from . import montecarlo as mc
from .collapse import CapacityError, SitePair, collapse_cycle, collapse_line_window, criterion_state
from .seqcomb import check_sequence, identity_breakdown, weight, weight_identity_terms
from .stationary import (
    collapse_pushforward,
    exact_three_type,
    formula_distribution,
    generator_stationary,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "out", "format") and v is not None}


def _emit(args, doc: dict, rows: list[dict] | None = None) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        for k, v in doc["config"].items():
            buf.write(f"# {k}={v}\n")
        rows = rows or []
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
            writer.writeheader()
            writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(doc, indent=2, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _finish(args, doc: dict, failures: list[str], rows=None) -> int:
    doc["passed"] = not failures
    doc["failures"] = failures
    _emit(args, doc, rows)
    return EXIT_OK if not failures else EXIT_FAIL


# ----------------------------------------------------------------------------


def cmd_weight(args) -> int:
    seq = args.sequence
    try:
        check_sequence(seq)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"config": _config(args), "sequence": seq, "weight": str(weight(seq))}
    if seq:
        left, right, splits = weight_identity_terms(seq)
        doc["identity"] = {
            "ends_in_0": None if left is None else {"x": left, "W": str(weight(left))},
            "starts_with_1": None if right is None else {"y": right, "W": str(weight(right))},
            "splits": [{"x": x, "y": y, "W": str(weight(x) * weight(y))} for x, y in splits],
            "terms": [str(t) for t in identity_breakdown(seq)],
        }
    rows = [{"sequence": seq, "weight": doc["weight"]}]
    return _finish(args, doc, [], rows)


def cmd_collapse(args) -> int:
    S, T = _int_list(args.S), _int_list(args.T)
    pair = SitePair.of(S, T)
    doc = {"config": _config(args)}
    if args.geometry == "cycle":
        if args.n is None:
            raise UsageError("--n is required for the cycle")
        try:
            state = collapse_cycle(pair, args.n)
        except CapacityError as exc:
            raise UsageError(f"capacity violated: {exc}") from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        criterion = criterion_state(pair, n=args.n)
    else:
        window = _int_list(args.window)
        if len(window) != 2:
            raise UsageError("--window must be 'lo,hi' for the line")
        try:
            state, dropped = collapse_line_window(pair, *window)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        doc["dropped"] = dropped
        criterion = criterion_state(pair, window=tuple(window))
    doc.update(state=state, criterion_state=criterion, criterion_agrees=criterion == state)
    failures = [] if criterion == state else ["criterion disagrees with the procedure"]
    return _finish(args, doc, failures, [{"state": state}])


def _three_type_args(args) -> tuple[int, int, int]:
    if None in (args.n, args.a, args.b):
        raise UsageError("give --n, --a and --b (or --cards)")
    if args.a < 0 or args.b < 0 or args.a + args.b > args.n:
        raise UsageError(f"need a, b >= 0 and a + b <= N, got N={args.n} a={args.a} b={args.b}")
    return args.n, args.a, args.b


def _distribution(mode: str, args):
    if args.cards:
        if mode != "exact":
            raise UsageError("--cards only supports --mode exact")
        return generator_stationary(_int_list(args.cards))
    n, a, b = _three_type_args(args)
    return {"formula": formula_distribution, "exact": exact_three_type,
            "pushforward": collapse_pushforward}[mode](n, a, b)


def cmd_stationary(args) -> int:
    try:
        dist = _distribution(args.mode, args)
        compare = [_distribution(m, args) for m in args.compare] if args.compare else []
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = {"config": _config(args), **dist.meta,
           "entries": [{"state": x, "p": str(p)} for x, p in sorted(dist.items())]}
    failures = []
    if compare:
        first = compare[0]
        report = {}
        for mode, other in zip(args.compare[1:], compare[1:]):
            diff = first.diff(other)
            report[f"{args.compare[0]} vs {mode}"] = (
                "identical" if not diff else {k: [str(u), str(v)] for k, v in diff.items()}
            )
            if diff:
                failures.append(f"{args.compare[0]} and {mode} differ on {len(diff)} states")
        doc["compare"] = report
    if args.cards and sorted(_int_list(args.cards)) == [1, 2, 3, 4]:
        doc["mu_1324"], doc["mu_1423"] = str(dist["1324"]), str(dist["1423"])
        doc["mu_1324_ne_mu_1423"] = dist["1324"] != dist["1423"]
    rows = [{"state": x, "p": str(p)} for x, p in sorted(dist.items())]
    return _finish(args, doc, failures, rows)


def _tally_doc(args, tally, exact) -> tuple[dict, list[str], list[dict]]:
    tv = mc.tv_distance(tally, exact.entries)
    doc = {"config": _config(args), "tally": dict(sorted(tally.items())),
           "tv_to_exact": tv, "tv_limit": args.tv_limit}
    failures = [] if tv < args.tv_limit else [f"TV {tv:.4f} >= {args.tv_limit}"]
    rows = [{"state": x, "count": c, "exact": float(exact[x])} for x, c in sorted(tally.items())]
    return doc, failures, rows


def cmd_simulate(args) -> int:
    if args.cards:
        initial = "".join(str(c) for c in sorted(_int_list(args.cards), reverse=True))
        exact = generator_stationary(_int_list(args.cards))
    else:
        n, a, b = _three_type_args(args)
        initial = "1" * a + "*" * (n - a - b) + "0" * b
        exact = formula_distribution(n, a, b)
    tally = mc.simulate_chain(initial, args.steps, args.seed)
    return _finish(args, *_tally_doc(args, tally, exact))


def cmd_sample(args) -> int:
    n, a, b = _three_type_args(args)
    tally = mc.sample_collapsed_uniform(n, a, b, args.samples, args.seed)
    return _finish(args, *_tally_doc(args, tally, formula_distribution(n, a, b)))


def cmd_line(args) -> int:
    try:
        params = mc.LineParams(args.p, args.q, int(args.window), args.margin, args.seed)
        params.require_three_densities()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    stats = mc.line_statistics(params, args.windows)
    targets = {"particle": args.p, "anti": args.q, "empty": 1 - args.p - args.q,
               "pair": args.p**2}
    z = {k: abs(stats[k][0] - v) / stats[k][1] for k, v in targets.items()}
    law, residual = mc.hitting_time_law(args.p, args.q, args.horizon)
    gaps = mc.gap_statistics(params, args.samples)
    tv = mc.tv_distance(gaps, law)
    failures = [f"{k} off by {v:.2f} sigma" for k, v in z.items() if v >= 3]
    if tv >= args.tv_limit:
        failures.append(f"gap TV {tv:.4f} >= {args.tv_limit}")
    total = sum(gaps.values())
    rows = [{"gap": d, "empirical": gaps.get(d, 0) / total, "hitting_law": law.get(d, 0.0)}
            for d in range(1, max(gaps) + 1)]
    doc = {"config": _config(args), "densities": stats, "z_scores": z,
           "gap_tv": tv, "hitting_residual": residual, "gap_law": rows}
    return _finish(args, doc, failures, rows)


def cmd_conjectures(args) -> int:
    table = [cj.check_conjectures(c).row() for c in cj.compositions(args.n, args.classes)]
    failures = [
        f"{r['extremal']}: conjecture {i}"
        for r in table
        for i in (1, 2, 3)
        if r[f"conjecture{i}"] == cj.FAIL
    ]
    rows = [{k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in r.items()
             if not k.startswith("mu_")} for r in table]
    if args.format != "csv":
        for r in table:
            print(f"{r['extremal']:>8}  C1 {r['conjecture1']:<9} C2 {r['conjecture2']:<9} "
                  f"C3 {r['conjecture3']:<9} min={r['min_p']}", file=sys.stderr)
    return _finish(args, {"config": _config(args), "table": table}, failures, rows)


def cmd_verify(args) -> int:
    results = checks.run_all(seed=args.seed, echo=lambda s: print(s, file=sys.stderr))
    failures = [r.name for r in results if not r.passed]
    doc = {"config": _config(args), "results": [r.as_dict() for r in results]}
    rows = [{"number": r.number, "name": r.name, "passed": r.passed, "seconds": r.seconds}
            for r in results]
    return _finish(args, doc, failures, rows)


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=mc.DEFAULT_SEED)

    sizes = argparse.ArgumentParser(add_help=False)
    sizes.add_argument("--n", type=int)
    sizes.add_argument("--a", type=int)
    sizes.add_argument("--b", type=int)
    sizes.add_argument("--cards", help="comma-separated card values, e.g. 1,2,3,4")

    parser = argparse.ArgumentParser(
        prog="collapsing-tasep",
        description="Collapsed-measure constructions for the two-species TASEP.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weight", parents=[common], help="domination weight of a 0/1 sequence")
    p.add_argument("sequence", nargs="?", default="")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("collapse", parents=[common], help="collapse a pair (S, T)")
    p.add_argument("--geometry", choices=("cycle", "line"), default="cycle")
    p.add_argument("--n", type=int)
    p.add_argument("--window", help="lo,hi for the line")
    p.add_argument("--S", default="")
    p.add_argument("--T", default="")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("stationary", parents=[common, sizes], help="exact stationary law")
    p.add_argument("--mode", choices=("formula", "exact", "pushforward"), default="formula")
    p.add_argument("--compare", nargs="+", choices=("formula", "exact", "pushforward"))
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("simulate", parents=[common, sizes], help="uniformised chain tally")
    p.add_argument("--steps", type=int, default=10**7)
    p.add_argument("--tv-limit", type=float, default=0.02)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sample", parents=[common, sizes], help="collapsed uniform samples")
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--tv-limit", type=float, default=0.02)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("line", parents=[common], help="line-window densities and gap law")
    p.add_argument("--p", type=float, default=0.3)
    p.add_argument("--q", type=float, default=0.2)
    p.add_argument("--window", type=int, default=5000, help="half-width L")
    p.add_argument("--margin", type=int, default=mc.DEFAULT_MARGIN)
    p.add_argument("--windows", type=int, default=20)
    p.add_argument("--samples", type=int, default=10**5, help="number of gaps to record")
    p.add_argument("--horizon", type=int, default=400)
    p.add_argument("--tv-limit", type=float, default=0.02)
    p.set_defaults(func=cmd_line)

    p = sub.add_parser("conjectures", parents=[common], help="multitype conjecture table")
    p.add_argument("--n", type=int, default=6, help="largest cycle length")
    p.add_argument("--classes", type=int, default=4, help="largest number of classes")
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("verify", parents=[common], help="run every acceptance check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
