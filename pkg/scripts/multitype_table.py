"""Exact multitype laws on small cycles: conjecture table and naive collapse candidates.

    python scripts/multitype_table.py --max-n 6 --max-classes 4
"""

import argparse
from dataclasses import dataclass

from collapsing_tasep import conjectures as cj
from collapsing_tasep.stationary import generator_stationary


@dataclass
class Config:
    max_n: int = 6
    max_classes: int = 4


def main(cfg: Config) -> None:
    exact = generator_stationary([1, 2, 3, 4])
    print(f"mu(1324) = {exact['1324']}   mu(1423) = {exact['1423']}")
    mism = cj.candidate_mismatches([1, 2, 3, 4], exact)
    print(f"repeated-collapse candidates matching the exact law on 1234: "
          f"{[k for k, v in mism.items() if not v] or 'none'} (of {len(mism)})")
    print()
    print(f"{'extremal':>9} {'min p':>10}  C1         C2         C3    readings")
    for comp in cj.compositions(cfg.max_n, cfg.max_classes, min_n=2):
        r = cj.check_conjectures(comp)
        print(f"{r.extremal:>9} {str(r.min_probability):>10}  {r.conjecture1:<10} "
              f"{r.conjecture2:<10} {r.conjecture3:<5} {','.join(r.matching_readings)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--max-classes", type=int, default=Config.max_classes)
    a = ap.parse_args()
    main(Config(a.max_n, a.max_classes))
