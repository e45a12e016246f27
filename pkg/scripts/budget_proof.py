"""Time the proof that K_v has no {K3, K4}-decomposition within a block budget.

With the default arguments this is the optimality certificate for K18
(no split into 32 blocks); ``--order 19 --budget 34`` does the same for K19.
"""
from __future__ import annotations

import argparse
import json
import logging
from dataclasses import asdict, dataclass

from clique_cover import CoverInstance, SolverConfig, solve_exact


@dataclass
class BudgetRun:
    order: int = 18
    budget: int = 32
    frontier_limit: int = 20_000
    threads: int = 1


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(BudgetRun()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    p.add_argument("-v", "--verbose", action="store_true", help="log frontier growth")
    a = p.parse_args()
    if a.verbose:
        logging.basicConfig(level=logging.INFO, format="%(relativeCreated)8d ms %(message)s")
    cfg = BudgetRun(a.order, a.budget, a.frontier_limit, a.threads)
    out = solve_exact(CoverInstance(cfg.order, frozenset({3, 4})),
                      SolverConfig(frontier_limit=cfg.frontier_limit, thread_count=cfg.threads),
                      max_blocks=cfg.budget)
    print(json.dumps({**asdict(cfg), "status": out.status.value, "nodes": out.nodes,
                      "seconds": round(out.ms / 1000, 1)}))


if __name__ == "__main__":
    main()
