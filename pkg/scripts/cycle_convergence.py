"""TV distance of simulated and sampled cycle laws to the exact law, as samples grow."""

import argparse
from dataclasses import dataclass

from collapsing_tasep import montecarlo as mc
from collapsing_tasep.stationary import formula_distribution


@dataclass
class Config:
    n: int = 8
    a: int = 2
    b: int = 2
    seed: int = mc.DEFAULT_SEED


def main(cfg: Config) -> None:
    exact = formula_distribution(cfg.n, cfg.a, cfg.b).entries
    start = "1" * cfg.a + "*" * (cfg.n - cfg.a - cfg.b) + "0" * cfg.b
    print("samples,tv_sample,tv_chain")
    for k in range(3, 8):
        m = 10**k
        tv_s = mc.tv_distance(mc.sample_collapsed_uniform(cfg.n, cfg.a, cfg.b, m, cfg.seed), exact)
        tv_c = mc.tv_distance(mc.simulate_chain(start, m, cfg.seed), exact)
        print(f"{m},{tv_s:.5f},{tv_c:.5f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--a", type=int, default=2)
    ap.add_argument("--b", type=int, default=2)
    ap.add_argument("--seed", type=int, default=mc.DEFAULT_SEED)
    a = ap.parse_args()
    main(Config(a.n, a.a, a.b, a.seed))
