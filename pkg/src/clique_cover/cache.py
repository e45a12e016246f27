"""On-disk memo of solver outcomes keyed by instance digest.

Only finished searches (Feasible or Infeasible) are stored: a TimedOut result
depends on the limits and would wrongly short-circuit a longer rerun.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .solver import CoverInstance, CoverOutcome, SolverConfig, Status, solve_exact, solve_minimum

CACHE_ENV = "CLIQUE_COVER_CACHE"


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def instance_digest(instance: CoverInstance, mode: str, max_blocks: Optional[int] = None) -> str:
    return sha256_text(canonical_json({"instance": instance.to_json(), "mode": mode,
                                       "max_blocks": max_blocks}))


def resolve_cache_dir(flag: Optional[str]) -> Optional[Path]:
    """The environment variable wins over the flag when both are set."""
    chosen = os.environ.get(CACHE_ENV) or flag
    return Path(chosen) if chosen else None


@dataclass
class OutcomeCache:
    root: Path
    hits: int = 0
    misses: int = 0

    def __post_init__(self) -> None:
        self.root = Path(self.root)
        (self.root / "outcomes").mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.root / "outcomes" / f"{key}.json"

    def get(self, key: str) -> Optional[CoverOutcome]:
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        self.hits += 1
        return CoverOutcome.from_json(json.loads(path.read_text(encoding="utf-8")))

    def put(self, key: str, outcome: CoverOutcome) -> None:
        if outcome.status is Status.TIMED_OUT:
            return
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(canonical_json(outcome.to_json(timing=True)), encoding="utf-8")
        tmp.replace(self._path(key))


def cached_solve(instance: CoverInstance, config: Optional[SolverConfig] = None,
                 cache: Optional[OutcomeCache] = None, minimize: bool = False,
                 max_blocks: Optional[int] = None) -> CoverOutcome:
    mode = "minimum" if minimize else "exact"
    key = instance_digest(instance, mode, max_blocks) if cache is not None else ""
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    if minimize:
        out = solve_minimum(instance, config)
    else:
        out = solve_exact(instance, config, max_blocks=max_blocks)
    if cache is not None:
        cache.put(key, out)
    return out


@dataclass
class RunManifest:
    """Record of one CLI invocation, appended to ``manifests.jsonl``."""

    command: str
    parameters: dict
    input_digests: dict = field(default_factory=dict)
    outcome_digest: str = ""
    wall_time: float = 0.0
    tool_version: str = ""

    def append_to(self, root: Path) -> None:
        root.mkdir(parents=True, exist_ok=True)
        with (root / "manifests.jsonl").open("a", encoding="utf-8") as fh:
            fh.write(canonical_json(asdict(self)) + "\n")
