"""Backend benchmark: times the compiled kernel against the pure-Python twin
on the same density-evolution run and checks that they agree.

    python -m scldpc.benchmark [--m M] [--ensemble SPEC] [--epsilon F] [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import _core
from .pde import FsdRunner, PdeConfig
from .protograph import parse_ensemble
from .subspace import get_tables, initial_message


def _run_once(backend, runner, eps):
    g = runner.graph
    m = runner.m
    chan = initial_message(m, eps).probs
    channel = np.tile(chan, (g.n_cols, 1))
    p_V = np.tile(chan, (g.n_edges, 1))
    p_C = np.zeros((g.n_edges, m + 1))
    p_C[:, m] = 1.0
    app0 = np.zeros(g.n_cols)
    cfg = runner.config
    status, iters = backend.run_window(
        m, runner.tables.C, runner.tables.V,
        g.edge_b, g.edge_col, g.row_ptr, g.row_entry, g.col_ptr, g.col_entry,
        np.zeros(0, dtype=np.int32), np.zeros((0, m + 1)),
        channel, p_V, p_C, np.arange(g.n_cols, dtype=np.int32),
        cfg.delta, cfg.max_iters, cfg.stall_eps, app0,
    )
    return status, iters, p_V, p_C, app0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python -m scldpc.benchmark")
    ap.add_argument("--ensemble", default="C1(3,6,3,2,L=24)")
    ap.add_argument("--m", type=int, default=None)
    ap.add_argument("--epsilon", type=float, default=0.45)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    spec = parse_ensemble(args.ensemble)
    if args.m is not None:
        spec = spec.with_(m=args.m)
    get_tables(spec.m)  # build coefficient tables outside the timed region
    runner = FsdRunner(spec.base_matrix(), spec.m, PdeConfig())
    print(f"ensemble {spec.name()}  m={spec.m}  eps={args.epsilon}  "
          f"edges={runner.graph.n_edges}")

    results = {}
    backends = ["python"] + (["compiled"] if _core.COMPILED else [])
    if not _core.COMPILED:
        print("compiled kernel not built; timing the python backend only")
    for name in backends:
        backend = _core.get_backend(name)
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            out = _run_once(backend, runner, args.epsilon)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, out)
        status, iters = out[0], out[1]
        print(f"{name:>9}: {best * 1e3:9.2f} ms  (status={status}, iterations={iters})")

    if len(results) == 2:
        (tp, outp), (tc, outc) = results["python"], results["compiled"]
        agree = (
            outp[0] == outc[0]
            and outp[1] == outc[1]
            and np.allclose(outp[2], outc[2], atol=1e-10)
            and np.allclose(outp[3], outc[3], atol=1e-10)
            and np.allclose(outp[4], outc[4], atol=1e-10)
        )
        print(f"speedup: {tp / tc:.1f}x   agreement: {'yes' if agree else 'NO'}")
        return 0 if agree else 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
