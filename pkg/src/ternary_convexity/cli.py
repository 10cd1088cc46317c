"""Command line entry point.

    ternary-convexity run tester-eval --n 12 --epsilon 0.05 --family tas --trials 50 --seed 7
    ternary-convexity -e sparre-andersen --m 8 --trials 100000 --seed 1
    ternary-convexity generate --family tas --n 9 --seed 3 --out tas9.set
    ternary-convexity list

Exit codes: 0 when every check passes, 1 on a failed check, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .experiments import EXPERIMENTS, N_CAP, Config, UsageError, make_family, run, trial_rng
from .instances import sample_dno
from .setfile import write_set

FLAG_KEYS = ("n", "m", "epsilon", "seed", "trials", "family", "out", "format", "threads")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_int_list, help="dimension or comma separated grid")
    p.add_argument("--m", type=_int_list, help="walk length or comma separated grid")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--family")
    p.add_argument("--out", help="output directory")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--threads", type=int, help="worker threads (default: logical cores)")
    p.add_argument("--config", help="JSON file with the same keys; flags take precedence")
    p.add_argument("--param", action="append", default=[], metavar="KEY=JSON",
                   help="experiment specific parameter, repeatable")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ternary-convexity")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-e", "--experiment", choices=sorted(EXPERIMENTS))
    _add_run_flags(p)
    sub = p.add_subparsers(dest="command")
    r = sub.add_parser("run", help="run a named experiment")
    r.add_argument("name", choices=sorted(EXPERIMENTS))
    _add_run_flags(r)
    g = sub.add_parser("generate", help="write an instance as a set file plus JSON sidecar")
    g.add_argument("--family", required=True,
                   choices=("ball", "halfspace", "intersection", "dyes", "dno", "tas", "random"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.add_argument("--set-format", choices=("indices", "bitmap"), default="indices")
    sub.add_parser("list", help="list experiments")
    return p


def _load_config(args) -> Config:
    base: dict = {}
    if args.config:
        try:
            base = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}")
        if not isinstance(base, dict):
            raise UsageError("config file must hold a JSON object")
    merged = {k: base.get(k) for k in FLAG_KEYS}
    for k in FLAG_KEYS:
        v = getattr(args, k, None)
        if v is not None:
            merged[k] = v
    for k in ("n", "m"):
        if isinstance(merged[k], int):
            merged[k] = [merged[k]]
    params = dict(base.get("params", {}))
    for item in args.param:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects KEY=JSON, got {item!r}")
        try:
            params[key] = json.loads(val)
        except json.JSONDecodeError:
            params[key] = val
    name = getattr(args, "name", None) or args.experiment or base.get("experiment")
    if name is None:
        raise UsageError("no experiment given (use `run <name>` or -e)")
    if name not in EXPERIMENTS:
        raise UsageError(f"unknown experiment {name!r}")
    threads = merged["threads"] if merged["threads"] is not None else os.cpu_count()
    return Config(experiment=name, n=merged["n"], m=merged["m"], epsilon=merged["epsilon"],
                  seed=merged["seed"] if merged["seed"] is not None else 0,
                  trials=merged["trials"], family=merged["family"], out=merged["out"],
                  format=merged["format"] or "csv", threads=threads, params=params)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


def records_csv(records: list[dict]) -> str:
    fields: list[str] = []
    for r in records:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, restval="", lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return buf.getvalue()


def _prepare_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
        probe = path / ".write-probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise UsageError(f"output path {out} is not writable: {exc}")
    return path


def cmd_run(cfg: Config) -> int:
    out = _prepare_out(cfg.out)
    t0 = time.perf_counter()
    try:
        result = run(cfg)
        error = None
    except AssertionError as exc:
        result, error = None, f"assertion failed: {exc}"
    wall = (time.perf_counter() - t0) * 1000
    config_echo = {k: getattr(cfg, k) for k in ("experiment", "n", "m", "epsilon", "seed", "trials",
                                                "family", "format", "threads", "params")}
    manifest = {"config": config_echo, "version": __version__, "wall_ms": round(wall, 3)}
    if result is not None:
        manifest.update(summary=result.summary, checks=result.checks, passed=result.passed)
    else:
        manifest.update(error=error, passed=False)
    if out is not None and result is not None:
        if cfg.format == "csv":
            (out / f"{cfg.experiment}.csv").write_text(records_csv(result.records))
        else:
            manifest["records"] = result.records
    if out is not None:
        (out / f"{cfg.experiment}.manifest.json").write_text(
            json.dumps(_jsonable(manifest), indent=2, sort_keys=True) + "\n")
    shown = {k: v for k, v in manifest.items() if k != "records"}
    print(json.dumps(_jsonable(shown), indent=2, sort_keys=True))
    print("PASS" if manifest["passed"] else "FAIL", cfg.experiment)
    return 0 if manifest["passed"] else 1


def cmd_generate(args) -> int:
    if not 1 <= args.n <= N_CAP:
        raise UsageError(f"n={args.n} is outside 1..{N_CAP}")
    rng = trial_rng(args.seed, 0)
    if args.family == "dno":
        inst = sample_dno(args.n, rng)
        S, meta = inst.set, {"N": inst.params.N}
    else:
        S, meta = make_family(args.family, args.n, rng)
    path = Path(args.out)
    try:
        write_set(path, S, fmt=args.set_format)
        side = {"family": args.family, "n": args.n, "seed": args.seed, "size": len(S),
                "version": __version__, **meta}
        path.with_name(path.name + ".json").write_text(json.dumps(_jsonable(side), indent=2) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")
    print(f"wrote {path} ({len(S)} points)")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "list":
            for name, fn in EXPERIMENTS.items():
                doc = (fn.__doc__ or "").strip().splitlines()
                print(f"{name:20s} {doc[0] if doc else ''}")
            return 0
        if args.command == "generate":
            return cmd_generate(args)
        return cmd_run(_load_config(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
