"""Command-line front end.

    convcover solve --in inst.json --out sol.json [--collection bk|triangulation] [--solver exact|greedy|anneal]
    convcover verify --in inst.json --solution sol.json
    convcover enumerate --in inst.json --points v|v+s1|v+s2 --out coll.json
    convcover render --in inst.json [--solution sol.json | --collection-file coll.json] --out pic.svg
    convcover merge --in inst.json --solutions a.json b.json ... --out merged.json
    convcover bench --in a.json b.json ... --seeds 0 1 2 --csv out.csv

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 pipeline failure, 4 limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .collect import Collection, CollectionConfig, LimitExceeded, build_collection, canonical_order, \
    enumerate_maximal_convex, point_set
from .model import ParseError, load_instance, load_solution, parse_collection, verify, write_collection, \
    write_solution
from .pipeline import PatchMode, PipelineConfig, PipelineError, Solver, merge_solutions, solve, uncovered_region
from .render import render_svg
from .witness import WitnessOrigin

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_PIPELINE, EXIT_LIMIT = 0, 1, 2, 3, 4
TIME_LIMIT_ENV = "CONVCOVER_TIME_LIMIT_S"

WITNESS_FLAGS = {"quick": WitnessOrigin.QUICK_VERTEX, "vertex": WitnessOrigin.VERTEX,
                 "arrangement": WitnessOrigin.ARRANGEMENT}
POINT_FLAGS = {"v": "V", "v+s1": "V+S1", "v+s2": "V+S2"}


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"convcover: {msg}", file=sys.stderr)


def _time_limit(args) -> float | None:
    env = os.environ.get(TIME_LIMIT_ENV)
    v = float(env) if env else args.time_limit_s
    return None if v is not None and v <= 0 else v


def _rounds(text: str) -> tuple[str, ...]:
    parts = [p.strip().upper() for p in text.split(",") if p.strip()]
    for p in parts:
        if not set(p.split("+")) <= {"V", "S1", "S2"}:
            raise argparse.ArgumentTypeError(f"bad bloat round {p!r}")
    return tuple(parts)


def _load_instance(path):
    try:
        return load_instance(path)
    except (OSError, ParseError, ValueError, KeyError, TypeError) as e:
        raise InputError(f"cannot read instance {path}: {e}") from e


def _load_solution(path, inst, allow_mismatch: bool):
    try:
        s = load_solution(path)
    except (OSError, ParseError, ValueError, KeyError, TypeError) as e:
        raise InputError(f"cannot read solution {path}: {e}") from e
    if s.instance_name != inst.name and not allow_mismatch:
        raise InputError(f"solution is for {s.instance_name!r}, instance is {inst.name!r} "
                         "(use --allow-name-mismatch)")
    return s


def _reference(path, name):
    if not path:
        return None
    try:
        scores = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise InputError(f"cannot read reference scores {path}: {e}") from e
    v = scores.get(name)
    return int(v) if v is not None else None


def _check_out(path):
    if path is None:
        return
    d = Path(path).resolve().parent
    if not d.is_dir() or not os.access(d, os.W_OK):
        raise InputError(f"output directory {d} is not writable")


def _pipeline_config(args) -> PipelineConfig:
    tl = _time_limit(args)
    coll = CollectionConfig(method=args.collection, points=POINT_FLAGS[args.points],
                            replication=args.replication, rounds=args.rounds, seed=args.seed,
                            max_polygons=args.max_polygons, time_limit=tl, workers=args.workers)
    return PipelineConfig(collection=coll, witnesses=WITNESS_FLAGS[args.witnesses], solver=Solver(args.solver),
                          max_iterations=args.max_iterations, patch_mode=PatchMode(args.patch_mode),
                          seed=args.seed, anneal_iterations=args.anneal_iterations, solver_time_limit=tl)


def _collection(P, cfg: PipelineConfig) -> tuple[Collection, bool]:
    """Build the collection; a limit hit keeps the partial seeds and flags truncation."""
    try:
        return build_collection(P, cfg.collection), False
    except LimitExceeded as e:
        return Collection(canonical_order(e.partial), {"method": cfg.collection.method, "truncated": True}), True


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--collection", choices=["triangulation", "bk"], default="triangulation")
    p.add_argument("--points", choices=sorted(POINT_FLAGS), default="v", help="point set for --collection bk")
    p.add_argument("--replication", type=int, default=1, help="copies of each triangle to bloat")
    p.add_argument("--rounds", type=_rounds, default=("V",), help="comma separated bloat rounds, e.g. V,V+S1")
    p.add_argument("--witnesses", choices=sorted(WITNESS_FLAGS), default="quick")
    p.add_argument("--solver", choices=[s.value for s in Solver], default="exact")
    p.add_argument("--max-iterations", type=int, default=20)
    p.add_argument("--patch-mode", choices=[m.value for m in PatchMode], default="constraint_gen")
    p.add_argument("--anneal-iterations", type=int, default=1000)
    p.add_argument("--max-polygons", type=int, default=200_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit-s", type=float, default=60.0,
                   help=f"per-stage limit; {TIME_LIMIT_ENV} overrides, <= 0 disables")
    p.add_argument("--reference", help="JSON file mapping instance name to best known size")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="convcover", description="Minimum convex cover heuristics.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("solve", help="compute a convex cover")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", help="solution JSON (default <instance>.solution.json)")
    p.add_argument("--report", help="RunReport JSON (default <out>.report.json)")
    p.add_argument("--runs", type=int, default=1, help="independent runs (seeds seed..seed+runs-1), then merge")
    _add_pipeline_flags(p)

    p = sub.add_parser("verify", help="check a solution")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--allow-name-mismatch", action="store_true")

    p = sub.add_parser("enumerate", help="list the maximal convex polygons of a point set")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--points", choices=sorted(POINT_FLAGS), default="v")
    p.add_argument("--out")
    p.add_argument("--max-polygons", type=int, default=200_000)
    p.add_argument("--time-limit-s", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("render", help="draw an instance and optionally a solution or collection as SVG")
    p.add_argument("--in", dest="input", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--solution")
    g.add_argument("--collection-file")
    p.add_argument("--out", required=True)
    p.add_argument("--show-uncovered", action="store_true")
    p.add_argument("--stroke-width", type=float, default=1.0)
    p.add_argument("--fill-opacity", type=float, default=0.35)
    p.add_argument("--allow-name-mismatch", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("merge", help="re-solve over the union of several solutions")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--solutions", nargs="+", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.add_argument("--allow-name-mismatch", action="store_true")
    _add_pipeline_flags(p)

    p = sub.add_parser("bench", help="solve many instances/seeds and write a CSV")
    p.add_argument("--in", dest="inputs", nargs="+", required=True)
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--csv", required=True)
    p.add_argument("--jobs", type=int, default=1, help="concurrent runs")
    _add_pipeline_flags(p)
    return ap


# --------------------------------------------------------------------------
# subcommands


def cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    out = args.out or f"{inst.name}.solution.json"
    report_path = args.report or f"{out}.report.json"
    _check_out(out)
    _check_out(report_path)
    best = _reference(args.reference, inst.name)
    cfg = _pipeline_config(args)
    truncated = False
    sols, reports = [], []
    try:
        for k in range(max(1, args.runs)):
            cfg.seed = cfg.collection.seed = args.seed + k
            coll, t = _collection(inst.polygon, cfg)
            truncated |= t
            s, r = solve(inst, cfg, coll, best)
            r.truncated = t
            sols.append(s)
            reports.append(r)
        if len(sols) > 1:
            cfg.seed = cfg.collection.seed = args.seed
            s, r = merge_solutions(inst, sols, cfg)
            if best is not None:
                r.relative_size = Fraction(best, len(s))
            r.truncated = truncated
        else:
            s, r = sols[0], reports[0]
    except PipelineError as e:
        _err(f"pipeline failure: {e}")
        return EXIT_PIPELINE
    Path(out).write_bytes(write_solution(s))
    Path(report_path).write_text(r.to_json())
    line = f"{inst.name}: size {len(s)}"
    if r.relative_size is not None:
        line += f", relative size {float(r.relative_size):.4f}"
    print(line)
    if truncated:
        _err("limit exceeded while building the collection; result is from a partial collection")
        return EXIT_LIMIT
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.input)
    s = _load_solution(args.solution, inst, args.allow_name_mismatch)
    rep = verify(inst, s)
    print(json.dumps(rep.as_dict()))
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_enumerate(args) -> int:
    inst = _load_instance(args.input)
    out = args.out or f"{inst.name}.collection.json"
    _check_out(out)
    kind = POINT_FLAGS[args.points]
    prov = {"method": "bk", "points": kind}
    t0 = time.monotonic()
    code = EXIT_OK
    try:
        polys = enumerate_maximal_convex(inst.polygon, point_set(inst.polygon, kind), args.max_polygons,
                                         _time_limit(args))
    except LimitExceeded as e:
        polys, code = e.partial, EXIT_LIMIT
        prov["truncated"] = True
        _err(str(e))
    dt = time.monotonic() - t0
    Path(out).write_bytes(write_collection(inst.name, polys, prov))
    print(f"{inst.name}: {len(polys)} polygons in {dt:.3f} s")
    return code


def cmd_render(args) -> int:
    inst = _load_instance(args.input)
    _check_out(args.out)
    polys = []
    if args.solution:
        polys = _load_solution(args.solution, inst, args.allow_name_mismatch).polygons
    elif args.collection_file:
        try:
            _, polys, _ = parse_collection(Path(args.collection_file).read_bytes())
        except (OSError, ParseError, ValueError, KeyError, TypeError) as e:
            raise InputError(f"cannot read collection {args.collection_file}: {e}") from e
    unc = list(uncovered_region(inst.polygon, polys)) if args.show_uncovered else []
    svg = render_svg(inst.polygon, polys, unc, args.stroke_width, args.fill_opacity)
    Path(args.out).write_text(svg)
    return EXIT_OK


def cmd_merge(args) -> int:
    inst = _load_instance(args.input)
    _check_out(args.out)
    sols = [_load_solution(p, inst, args.allow_name_mismatch) for p in args.solutions]
    cfg = _pipeline_config(args)
    try:
        s, r = merge_solutions(inst, sols, cfg)
    except PipelineError as e:
        _err(f"pipeline failure: {e}")
        return EXIT_PIPELINE
    best = _reference(args.reference, inst.name)
    if best is not None:
        r.relative_size = Fraction(best, len(s))
    Path(args.out).write_bytes(write_solution(s))
    Path(args.report or f"{args.out}.report.json").write_text(r.to_json())
    print(f"{inst.name}: merged {[len(x) for x in sols]} -> {len(s)}")
    return EXIT_OK


BENCH_FIELDS = ["instance", "n", "seed", "collection", "solver", "witnesses", "collection_size", "size",
                "iterations", "patched", "seconds", "relative_size", "status"]


def _bench_one(job):
    path, seed, cfg, best = job
    inst = load_instance(path)
    cfg.seed = cfg.collection.seed = seed
    t0 = time.monotonic()
    status = "ok"
    try:
        coll, trunc = _collection(inst.polygon, cfg)
        s, r = solve(inst, cfg, coll, best)
        if trunc:
            status = "truncated"
    except PipelineError:
        return dict(instance=inst.name, n=inst.n, seed=seed, status="pipeline_error")
    return dict(instance=inst.name, n=inst.n, seed=seed, collection=cfg.collection.method, solver=cfg.solver.value,
                witnesses=cfg.witnesses.value, collection_size=r.collection_size, size=len(s),
                iterations=r.iterations_used, patched=r.patched, seconds=f"{time.monotonic() - t0:.3f}",
                relative_size="" if r.relative_size is None else f"{float(r.relative_size):.6f}", status=status)


def cmd_bench(args) -> int:
    _check_out(args.csv)
    insts = [_load_instance(p) for p in args.inputs]
    cfg = _pipeline_config(args)
    jobs = [(p, seed, cfg, _reference(args.reference, inst.name)) for p, inst in zip(args.inputs, insts)
            for seed in args.seeds]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    with open(args.csv, "w", newline="") as fh:
        w = csv.DictWriter(fh, BENCH_FIELDS)
        w.writeheader()
        w.writerows(rows)
    bad = sum(r["status"] == "pipeline_error" for r in rows)
    print(f"{len(rows)} runs, {bad} failures -> {args.csv}")
    return EXIT_PIPELINE if bad else EXIT_OK


COMMANDS = {"solve": cmd_solve, "verify": cmd_verify, "enumerate": cmd_enumerate, "render": cmd_render,
            "merge": cmd_merge, "bench": cmd_bench}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.cmd](args)
    except InputError as e:
        _err(str(e))
        return EXIT_INPUT
    except ValueError as e:
        _err(f"invalid argument: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
