"""Run every registered case exclusion and print a verdict table.

The two K19 sweeps are included; the 266-graph sweep resumes from
``--checkpoint`` when that file already holds finished cases.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from clique_cover import SolverConfig
from clique_cover.cases import REGISTRY, run_lemma


@dataclass
class ExclusionRun:
    lemmas: tuple[str, ...] = tuple(REGISTRY)
    checkpoint: Optional[Path] = Path("results/k19_alpha11.jsonl")
    jobs: int = 1
    time_limit: Optional[float] = None


def run(cfg: ExclusionRun) -> dict[str, str]:
    verdicts = {}
    config = SolverConfig(time_limit=cfg.time_limit)
    for lemma in cfg.lemmas:
        started = time.perf_counter()
        extra = {}
        if lemma == "k19-alpha11":
            if cfg.checkpoint is not None:
                cfg.checkpoint.parent.mkdir(parents=True, exist_ok=True)
            extra = {"checkpoint": cfg.checkpoint, "jobs": cfg.jobs}
        report = run_lemma(lemma, config, **extra)
        verdicts[lemma] = report.verdict
        print(f"{lemma:22s} {report.verdict:22s} {len(report.entries):4d} entries "
              f"{time.perf_counter() - started:8.1f} s", file=sys.stderr)
    return verdicts


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("lemmas", nargs="*", help=f"subset of: {', '.join(REGISTRY)} (default: all)")
    p.add_argument("--checkpoint", type=Path, default=ExclusionRun.checkpoint)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--time-limit", type=float, default=None)
    a = p.parse_args()
    unknown = [x for x in a.lemmas if x not in REGISTRY]
    if unknown:
        p.error(f"unknown lemma ids: {unknown}")
    verdicts = run(ExclusionRun(tuple(a.lemmas) or tuple(REGISTRY), a.checkpoint, a.jobs, a.time_limit))
    print(json.dumps(verdicts, indent=1))
    sys.exit(0 if set(verdicts.values()) == {"all-infeasible"} else 1)


if __name__ == "__main__":
    main()
