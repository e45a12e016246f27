"""Find and certify minimum {K3, K4}-decompositions of K18 and K19.

Each order is solved to optimality, the blocks are re-checked edge by edge,
and the result is written as JSON next to a one-line summary on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from clique_cover import CoverInstance, SolverConfig, solve_minimum, verify_cover


@dataclass
class MinimumRun:
    orders: tuple[int, ...] = (18, 19)
    time_limit: float = 1800.0
    restarts: int = 200
    seed: int = 0
    out_dir: Path = Path("results")


def run(cfg: MinimumRun) -> list[dict]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for v in cfg.orders:
        inst = CoverInstance(v, frozenset({3, 4}))
        out = solve_minimum(inst, SolverConfig(time_limit=cfg.time_limit, restarts=cfg.restarts, seed=cfg.seed))
        row = {
            "order": v,
            "status": out.status.value,
            "blocks": out.block_count,
            "by_size": {str(k): n for k, n in sorted(out.count_by_size().items())},
            "minimal": out.minimal,
            "verified": out.feasible and verify_cover(inst, out.blocks).exact,
            "seconds": round(out.ms / 1000, 1),
        }
        (cfg.out_dir / f"k{v}_minimum.json").write_text(
            json.dumps({**row, "solution": [list(b) for b in out.blocks]}, indent=1) + "\n")
        print(json.dumps(row), file=sys.stderr)
        rows.append(row)
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--orders", type=int, nargs="+", default=[18, 19])
    p.add_argument("--time-limit", type=float, default=MinimumRun.time_limit)
    p.add_argument("--restarts", type=int, default=MinimumRun.restarts)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", type=Path, default=MinimumRun.out_dir)
    a = p.parse_args()
    cfg = MinimumRun(tuple(a.orders), a.time_limit, a.restarts, a.seed, a.out_dir)
    print(json.dumps({k: str(v) for k, v in asdict(cfg).items()}), file=sys.stderr)
    rows = run(cfg)
    sys.exit(0 if all(r["minimal"] and r["verified"] for r in rows) else 1)


if __name__ == "__main__":
    main()
