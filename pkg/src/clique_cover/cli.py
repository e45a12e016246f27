"""Command-line interface.

Every command prints one JSON object on standard output; progress and
summaries go to standard error. Wall-clock fields sit under a separate
``"timing"`` key so that the rest of the output is byte-identical on rerun.

Exit codes: 0 Feasible / exact / all-infeasible, 1 Infeasible / defects /
counterexample-found, 2 TimedOut / incomplete, 3 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .cache import OutcomeCache, RunManifest, canonical_json, cached_solve, resolve_cache_dir, sha256_text
from .cases import REGISTRY, CaseReport, k19_alpha9_sweep, k19_alpha11_sweep, run_lemma
from .design import (
    cover_number,
    erdos_gallai_check,
    excess_min,
    lower_bound,
    vertex_triple_residue,
)
from .enumeration import ParityError, enumerate_even_graphs, enumerate_regular_graphs
from .fixtures import DECOMPOSITIONS, REGULAR_LISTINGS, decomposition, digest
from .graph6 import encode
from .solver import CoverInstance, SolverConfig, Status, verify_cover

EXIT_OK, EXIT_NEGATIVE, EXIT_INCOMPLETE, EXIT_USAGE = 0, 1, 2, 3

STATUS_EXIT = {Status.FEASIBLE: EXIT_OK, Status.INFEASIBLE: EXIT_NEGATIVE, Status.TIMED_OUT: EXIT_INCOMPLETE}
VERDICT_EXIT = {"all-infeasible": EXIT_OK, "counterexample-found": EXIT_NEGATIVE, "incomplete": EXIT_INCOMPLETE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage, which is taken by TimedOut here."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})") from None


def _pairs(data: Any, path: str, key: str) -> list[tuple[int, int]]:
    if isinstance(data, dict):
        if key not in data:
            raise UsageError(f"{path}: expected a list of pairs or an object with {key!r}")
        data = data[key]
    if not isinstance(data, list):
        raise UsageError(f"{path}: expected a list of pairs")
    out = []
    for i, item in enumerate(data):
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, int) for x in item)):
            raise UsageError(f"{path}: entry {i} is not a pair of integers: {item!r}")
        out.append((item[0], item[1]))
    return out


def _excess(data: Any, path: str) -> dict[tuple[int, int], int]:
    if isinstance(data, dict):
        data = data.get("excess", data)
    if not isinstance(data, list):
        raise UsageError(f"{path}: expected a list of [[a, b], multiplicity] entries")
    out = {}
    for i, item in enumerate(data):
        ok = (isinstance(item, list) and len(item) == 2 and isinstance(item[0], list)
              and len(item[0]) == 2 and isinstance(item[1], int))
        if not ok:
            raise UsageError(f"{path}: entry {i} is not [[a, b], multiplicity]: {item!r}")
        out[(item[0][0], item[0][1])] = item[1]
    return out


def _solver_config(args) -> SolverConfig:
    return SolverConfig(node_limit=args.node_limit, time_limit=args.time_limit,
                        thread_count=args.threads, seed=args.seed, restarts=args.restarts)


def _emit(result: dict, timing: Optional[dict] = None) -> None:
    body = dict(result)
    if timing is not None:
        body["timing"] = timing
    sys.stdout.write(json.dumps(body, sort_keys=True) + "\n")


class _Run:
    """Collects what a manifest needs while a command executes."""

    def __init__(self, args) -> None:
        self.args = args
        root = resolve_cache_dir(getattr(args, "cache", None))
        self.cache = OutcomeCache(root) if root is not None else None
        self.inputs: dict[str, str] = {}
        self.started = time.perf_counter()

    def add_input(self, name: str, text_digest: str) -> None:
        self.inputs[name] = text_digest

    def add_file(self, path: str) -> None:
        self.inputs[path] = sha256_text(Path(path).read_text(encoding="utf-8"))

    def finish(self, result: dict) -> None:
        if self.cache is None:
            return
        params = {k: v for k, v in vars(self.args).items() if k not in ("func", "cache")}
        RunManifest(
            command=self.args.command,
            parameters=params,
            input_digests=dict(sorted(self.inputs.items())),
            outcome_digest=sha256_text(canonical_json(result)),
            wall_time=round(time.perf_counter() - self.started, 3),
            tool_version=__version__,
        ).append_to(self.cache.root)


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    run = _Run(args)
    removed: list = []
    excess: dict = {}
    if args.remove:
        removed = _pairs(_load_json(args.remove), args.remove, "removed_edges")
        run.add_file(args.remove)
    if args.excess:
        excess = _excess(_load_json(args.excess), args.excess)
        run.add_file(args.excess)
    try:
        instance = CoverInstance(args.order, frozenset(args.block_sizes), frozenset(removed), excess)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = cached_solve(instance, _solver_config(args), run.cache, minimize=args.minimize,
                       max_blocks=args.max_blocks)
    result = out.to_json(timing=False)
    result["count_by_size"] = {str(k): v for k, v in sorted(out.count_by_size().items())}
    _emit(result, {"ms": round(out.ms, 3)})
    run.finish(result)
    print(f"{out.status.value}: {out.block_count} blocks {result['count_by_size']}", file=sys.stderr)
    return STATUS_EXIT[out.status]


def cmd_verify(args) -> int:
    run = _Run(args)
    if args.fixture is not None:
        blocks = decomposition(args.fixture)
        order = args.order or args.fixture
        run.add_input(DECOMPOSITIONS[args.fixture], digest(DECOMPOSITIONS[args.fixture]))
    elif args.solution is not None:
        data = _load_json(args.solution)
        run.add_file(args.solution)
        if isinstance(data, dict):
            blocks = data.get("blocks")
            order = args.order or data.get("order")
        else:
            blocks, order = data, args.order
        if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
            raise UsageError(f"{args.solution}: expected a list of blocks (lists of vertices)")
    else:
        raise UsageError("verify needs --solution FILE or --fixture ORDER")
    if not order:
        raise UsageError("order unknown: pass --order")
    removed = _pairs(_load_json(args.remove), args.remove, "removed_edges") if args.remove else []
    instance = CoverInstance(int(order), frozenset(args.block_sizes), frozenset(removed))
    report = verify_cover(instance, blocks)
    result = report.to_json()
    _emit(result)
    run.finish(result)
    print("exact cover" if report.exact else f"{len(report.defects())} defect edges, "
          f"{len(report.invalid_blocks)} invalid blocks", file=sys.stderr)
    return EXIT_OK if report.exact else EXIT_NEGATIVE


def cmd_enumerate(args) -> int:
    try:
        if args.regular is not None:
            graphs = enumerate_regular_graphs(args.order, args.regular)
        elif args.size is not None:
            if not args.even:
                raise UsageError("edge-count enumeration is available for even-degree graphs: add --even")
            graphs = enumerate_even_graphs(args.order, args.size)
        else:
            raise UsageError("enumerate needs --regular K or --size M --even")
    except ParityError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for g in graphs:
        if args.format == "graph6":
            sys.stdout.write(encode(g) + "\n")
        else:
            sys.stdout.write(json.dumps({"order": g.order, "edges": [list(e) for e in sorted(g.edges)]}) + "\n")
    print(f"{len(graphs)} classes", file=sys.stderr)
    return EXIT_OK


def formulas(v: int) -> dict:
    result = {"v": v, "xi": excess_min(v), "cover_number": cover_number(v),
              "residue": vertex_triple_residue(v)}
    try:
        result["lower_bound"] = lower_bound(v)
    except ValueError:
        pass
    return result


def cmd_formulas(args) -> int:
    try:
        result = formulas(args.v)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(result)
    return EXIT_OK


def cmd_graphic(args) -> int:
    if any(x < 0 for x in args.sequence):
        raise UsageError("degrees must be non-negative")
    res = erdos_gallai_check(args.sequence)
    result: dict = {"graphic": res.graphic}
    if res.failing_k is not None:
        result["failing_k"] = res.failing_k
    if res.odd_sum:
        result["odd_sum"] = True
    _emit(result)
    return EXIT_OK


def _report_out(run: _Run, report: CaseReport, started: float) -> int:
    result = report.to_json(timing=False)
    _emit(result, {"ms": round((time.perf_counter() - started) * 1000, 3)})
    run.finish(result)
    print(f"{report.lemma_id}: {report.verdict} ({len(report.entries)} entries)", file=sys.stderr)
    return VERDICT_EXIT[report.verdict]


def cmd_lemma(args) -> int:
    if args.list or args.id is None:
        _emit({"lemmas": {k: c.description for k, c in REGISTRY.items()}})
        return EXIT_OK
    if args.id not in REGISTRY:
        raise UsageError(f"unknown lemma id {args.id!r}; known: {', '.join(REGISTRY)}")
    if REGISTRY[args.id].sweep is not None:
        raise UsageError(f"{args.id} is a sweep: use 'sweep {args.id}'")
    run = _Run(args)
    started = time.perf_counter()
    return _report_out(run, run_lemma(args.id, _solver_config(args), run.cache), started)


def cmd_sweep(args) -> int:
    run = _Run(args)
    started = time.perf_counter()
    config = _solver_config(args)
    if args.name == "k19-alpha9":
        report = k19_alpha9_sweep(config, run.cache)
    else:
        run.add_input(REGULAR_LISTINGS[(11, 6)], digest(REGULAR_LISTINGS[(11, 6)]))
        checkpoint = args.resume or args.checkpoint
        if args.resume and not Path(args.resume).exists():
            raise UsageError(f"checkpoint {args.resume} does not exist")
        report = k19_alpha11_sweep(checkpoint, config, jobs=args.jobs, stop_after=args.stop_after,
                                   cache=run.cache, check_h_side=args.check_h_side)
    return _report_out(run, report, started)


# ---------------------------------------------------------------- parser

def _add_limits(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("search limits")
    g.add_argument("--time-limit", type=float, default=None, help="seconds per search")
    g.add_argument("--node-limit", type=int, default=None)
    g.add_argument("--threads", type=int, default=1, help="worker processes for one search")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--restarts", type=int, default=0, help="randomised probes before the complete search")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="clique-cover", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--cache", metavar="DIR", default=None,
                        help="memoise finished outcomes and append run manifests here "
                             "(CLIQUE_COVER_CACHE takes precedence)")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="exact cover of K_v minus removed edges")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--block-sizes", type=_int_list, default=[3, 4])
    p.add_argument("--remove", metavar="FILE", help="JSON list of removed edges")
    p.add_argument("--excess", metavar="FILE", help="JSON list of [[a, b], multiplicity]")
    p.add_argument("--minimize", action="store_true", help="fewest blocks")
    p.add_argument("--max-blocks", type=int, default=None)
    _add_limits(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check that blocks cover every edge exactly")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--solution", metavar="FILE")
    p.add_argument("--fixture", type=int, choices=sorted(DECOMPOSITIONS), help="bundled decomposition")
    p.add_argument("--block-sizes", type=_int_list, default=[3, 4])
    p.add_argument("--remove", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="graphs up to isomorphism")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--size", type=int, default=None, help="edge count (with --even)")
    p.add_argument("--even", action="store_true", help="every degree even")
    p.add_argument("--regular", type=int, default=None, metavar="K")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("formulas", help="closed-form counts for K_v")
    p.add_argument("--v", type=int, required=True)
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("graphic", help="Erdős–Gallai test of a degree sequence")
    p.add_argument("--sequence", type=_int_list, required=True)
    p.set_defaults(func=cmd_graphic)

    p = sub.add_parser("lemma", help="run one registered case exclusion")
    p.add_argument("id", nargs="?")
    p.add_argument("--list", action="store_true")
    _add_limits(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("sweep", help="K19 case sweeps")
    p.add_argument("name", choices=("k19-alpha9", "k19-alpha11"))
    p.add_argument("--resume", metavar="FILE", help="continue from this checkpoint (and keep appending)")
    p.add_argument("--checkpoint", metavar="FILE", help="start or continue a checkpoint file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--stop-after", type=int, default=None, help="stop after this many new cases")
    p.add_argument("--check-h-side", action="store_true",
                   help="also record whether H splits into triangles")
    _add_limits(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        _emit({"error": str(exc)})
        print(f"clique-cover {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
