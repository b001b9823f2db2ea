"""Command-line front end.

Commands: threshold, sweep, wstar, lstar, complexity.  Single results are
emitted as JSON, sweeps default to CSV with the fixed column order
ensemble,m,W,L,R_L,epsilon_star,capacity_gap,evaluations,error.  All numbers
come straight from the library; the CLI only formats them.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import sys

from .analysis import complexity_profile
from .errors import (
    DecodeFailureError,
    DegenerateBracketError,
    GrammarError,
    NonpositiveRateError,
    NoPlateauError,
    ScldpcError,
    WindowTooSmallError,
)
from .pde import PdeConfig
from .protograph import EnsembleSpec, parse_ensemble
from .thresholds import (
    capacity_gap,
    find_l_star,
    find_w_star,
    fsd_threshold,
    wd_threshold,
)

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_GRAMMAR = 2
EXIT_DEGENERATE = 3
EXIT_WINDOW = 4
EXIT_NO_PLATEAU = 5
EXIT_DECODE = 6

CSV_COLUMNS = ["ensemble", "m", "W", "L", "R_L",
               "epsilon_star", "capacity_gap", "evaluations", "error"]

# Latency rows of the reference complexity table for C1(3,6,m,2): each entry
# maps latency 2mW to its (m, W) candidates.
TABLE1_ROWS = {
    24: [(1, 12), (2, 6)],
    40: [(1, 20), (2, 10), (4, 5), (5, 4)],
    48: [(1, 24), (2, 12), (3, 8), (4, 6), (6, 4), (8, 3)],
    60: [(1, 30), (2, 15), (3, 10), (5, 6), (6, 5), (10, 3)],
    80: [(1, 40), (2, 20), (4, 10), (5, 8), (8, 5), (10, 4)],
    120: [(1, 60), (2, 30), (3, 20), (4, 15), (5, 12), (6, 10), (10, 6)],
}
TABLE1_EPSILONS = (0.488, 0.44)


def parse_range(text):
    """'3' -> [3]; '1..10' -> [1..10]; '1,2,4' -> [1, 2, 4]."""
    vals = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise GrammarError(f"empty element in range {text!r}")
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise GrammarError(f"descending range {part!r}")
            vals.extend(range(lo, hi + 1))
        else:
            vals.append(int(part))
    if not vals:
        raise GrammarError(f"empty range {text!r}")
    return vals


def load_config_file(path):
    """Plain key=value defaults (delta, max_iters, tol, w_max, l_max)."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise GrammarError(f"bad config line {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key] = val
    return out


def _build_parser():
    ap = argparse.ArgumentParser(prog="scldpc")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, wd_help="window size W"):
        p.add_argument("--ensemble", action="append", required=True,
                       metavar="SPEC", help='e.g. "C1(3,6,5,2)" or "B(3,6,2)"')
        p.add_argument("--m", default=None, help="override m (single value or range)")
        p.add_argument("--L", type=int, default=None, help="override coupling length")
        p.add_argument("--delta", type=float, default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--max-iters", type=int, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["json", "csv"], default=None)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--config", default=None, help="key=value defaults file")
        return p

    p = common(sub.add_parser("threshold"))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fsd", action="store_true")
    g.add_argument("--wd", type=int, default=None, metavar="W")

    p = common(sub.add_parser("sweep"))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fsd", action="store_true")
    g.add_argument("--wd", default=None, metavar="W_RANGE")

    common(sub.add_parser("wstar"))
    common(sub.add_parser("lstar"))

    p = common(sub.add_parser("complexity"))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--fsd", action="store_true")
    g.add_argument("--wd", type=int, default=None, metavar="W")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--table1", action="store_true",
                   help="reproduce the full latency/complexity table")
    return ap


class _Settings:
    """Merged config-file defaults and command-line overrides."""

    def __init__(self, args):
        cfg = load_config_file(args.config) if args.config else {}
        self.delta = args.delta if args.delta is not None else float(cfg.get("delta", 1e-6))
        self.tol = args.tol if args.tol is not None else float(cfg.get("tol", 1e-6))
        self.max_iters = (args.max_iters if args.max_iters is not None
                          else int(cfg.get("max_iters", 10000)))
        self.w_max = int(cfg.get("w_max", 40))
        self.l_max = int(cfg.get("l_max", 100))
        self.pde = PdeConfig(delta=self.delta, max_iters=self.max_iters)


def _expand_specs(args):
    specs = []
    m_values = parse_range(args.m) if args.m is not None else [None]
    for text in args.ensemble:
        base = parse_ensemble(text)
        if args.L is not None:
            base = base.with_(L=args.L)
        for m in m_values:
            specs.append(base if m is None else base.with_(m=m))
    return specs


def _emit(text, args):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _threshold_doc(spec, W, res):
    rate = float(spec.design_rate())
    return {
        "ensemble": spec.name(),
        "m": spec.m,
        "W": "FSD" if W is None else W,
        "L": None if spec.family == "block" else spec.L,
        "R_L": rate,
        "epsilon_star": res.epsilon,
        "capacity_gap": capacity_gap(rate, res.epsilon),
        "evaluations": res.evaluations,
        "resolution": res.resolution,
        "window_too_small": res.window_too_small,
    }


def cmd_threshold(args):
    settings = _Settings(args)
    specs = _expand_specs(args)
    W = None if args.fsd else args.wd
    docs = []
    saw_window_too_small = False
    for spec in specs:
        if W is None:
            res = fsd_threshold(spec, tol=settings.tol, config=settings.pde)
        else:
            res = wd_threshold(spec, W, tol=settings.tol, config=settings.pde)
            saw_window_too_small |= res.window_too_small
        docs.append(_threshold_doc(spec, W, res))
    payload = docs[0] if len(docs) == 1 else docs
    _emit(json.dumps(payload, indent=2), args)
    return EXIT_WINDOW if saw_window_too_small else EXIT_OK


def _sweep_cell(task):
    """One (ensemble, W-or-FSD) sweep cell; module-level for multiprocessing."""
    text, m, L, W, tol, delta, max_iters = task
    spec = parse_ensemble(text)
    if L is not None:
        spec = spec.with_(L=L)
    if m is not None:
        spec = spec.with_(m=m)
    cfg = PdeConfig(delta=delta, max_iters=max_iters)
    row = {
        "ensemble": spec.name(),
        "m": spec.m,
        "W": "FSD" if W is None else W,
        "L": "" if spec.family == "block" else spec.L,
        "R_L": float(spec.design_rate()),
        "epsilon_star": "",
        "capacity_gap": "",
        "evaluations": "",
        "error": "",
    }
    try:
        if W is None:
            res = fsd_threshold(spec, tol=tol, config=cfg)
        else:
            res = wd_threshold(spec, W, tol=tol, config=cfg)
        row["epsilon_star"] = res.epsilon
        row["capacity_gap"] = capacity_gap(row["R_L"], res.epsilon)
        row["evaluations"] = res.evaluations
        if res.window_too_small:
            row["error"] = "window_too_small"
    except ScldpcError as exc:
        row["error"] = type(exc).__name__
    return row


def cmd_sweep(args):
    settings = _Settings(args)
    m_values = parse_range(args.m) if args.m is not None else [None]
    w_values = [None] if args.fsd else parse_range(args.wd)
    tasks = []
    for text in args.ensemble:
        parse_ensemble(text)  # fail fast on grammar before fanning out
        for m in m_values:
            for W in w_values:
                tasks.append((text, m, args.L, W,
                              settings.tol, settings.delta, settings.max_iters))
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_sweep_cell, tasks))
    else:
        rows = [_sweep_cell(t) for t in tasks]

    fmt = args.format or "csv"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args)
    else:
        _emit(json.dumps(rows, indent=2), args)
    failed = any(r["error"] not in ("", "window_too_small") for r in rows)
    return EXIT_PARTIAL if failed else EXIT_OK


def cmd_star(args, which):
    settings = _Settings(args)
    specs = _expand_specs(args)
    docs = []
    for spec in specs:
        if which == "wstar":
            res = find_w_star(spec, tol=settings.tol, config=settings.pde,
                              w_max=settings.w_max)
            key = "w_star"
        else:
            res = find_l_star(spec, tol=settings.tol, config=settings.pde,
                              l_max=settings.l_max)
            key = "l_star"
        docs.append({
            "ensemble": spec.name(),
            "m": spec.m,
            key: res.value,
            "threshold": res.threshold,
            "trace": [list(pair) for pair in res.history],
            "evaluations": res.evaluations,
        })
    payload = docs[0] if len(docs) == 1 else docs
    _emit(json.dumps(payload, indent=2), args)
    return EXIT_OK


def _report_doc(rep):
    return {
        "ensemble": rep.ensemble,
        "m": rep.m,
        "W": "FSD" if rep.W is None else rep.W,
        "epsilon": rep.epsilon,
        "R_L": rep.rate,
        "latency_bits": rep.latency_bits,
        "iterations_total": rep.iterations_total,
        "l_t": rep.l_t.tolist(),
        "complexity": rep.complexity,
    }


def cmd_complexity(args):
    settings = _Settings(args)
    if args.table1:
        docs = []
        for latency in sorted(TABLE1_ROWS):
            for m, W in TABLE1_ROWS[latency]:
                spec = parse_ensemble(f"C1(3,6,{m},2)")
                if args.L is not None:
                    spec = spec.with_(L=args.L)
                for eps in TABLE1_EPSILONS:
                    rep = complexity_profile(spec, eps, W=W, config=settings.pde)
                    doc = _report_doc(rep)
                    doc["latency_row"] = latency
                    docs.append(doc)
        _emit(json.dumps(docs, indent=2), args)
        return EXIT_OK
    if args.epsilon is None:
        raise GrammarError("--epsilon is required unless --table1 is given")
    specs = _expand_specs(args)
    W = args.wd if not args.fsd else None
    docs = []
    for spec in specs:
        rep = complexity_profile(spec, args.epsilon, W=W, config=settings.pde)
        docs.append(_report_doc(rep))
    payload = docs[0] if len(docs) == 1 else docs
    _emit(json.dumps(payload, indent=2), args)
    return EXIT_OK


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "threshold":
            return cmd_threshold(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        if args.command in ("wstar", "lstar"):
            return cmd_star(args, args.command)
        if args.command == "complexity":
            return cmd_complexity(args)
        raise AssertionError(args.command)
    except WindowTooSmallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except (GrammarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GRAMMAR
    except (DegenerateBracketError, NonpositiveRateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except NoPlateauError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PLATEAU
    except DecodeFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECODE


if __name__ == "__main__":
    sys.exit(main())
