"""Compare the compiled search kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from grmeasure import _kernels_py
from grmeasure.quiver import (
    KroneckerLabel,
    direct_sum,
    hom_space,
    identity,
    kronecker_rep,
)


def _cases():
    rng = np.random.default_rng(0)
    p = 3
    dense = rng.integers(0, p, size=(120, 160))

    P2 = kronecker_rep(KroneckerLabel("P", 2), p)
    P3 = kronecker_rep(KroneckerLabel("P", 3), p)
    mono = hom_space(direct_sum(P2, P2), direct_sum(P3, P3, P2))
    # End of a regular module is a local ring, so the idempotent scan runs to the end
    R10 = kronecker_rep(KroneckerLabel("R", 10, (1, 0)), p)
    end = hom_space(R10, R10)

    def args(H):
        return np.asarray(H.basis, dtype=np.int64), H.source.p, np.asarray(H.blocks, dtype=np.int64)

    mb, mp, mblk = args(mono)
    eb, ep, eblk = args(end)
    ident = end.flatten(identity(R10))
    return [
        ("rref 120x160 mod 3", lambda k: k.rref(dense, p)),
        (f"all_monos P2+P2 -> P3+P3+P2 (3^{mono.dim})", lambda k: k.all_monos(mb, mp, mblk, 1 << 20)),
        (f"first_idempotent End R10 (3^{end.dim})", lambda k: k.first_idempotent(eb, ep, eblk, ident)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        compiled = importlib.import_module("grmeasure._kernels_cy")
    except ImportError:
        compiled = None
        print("compiled kernels not built; timing the fallback only")
    print(f"{'kernel':44s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in _cases():
        t_py, a = _time(fn, _kernels_py, args.repeat)
        if compiled is None:
            print(f"{name:44s} {t_py:10.4f}")
            continue
        t_cy, b = _time(fn, compiled, args.repeat)
        if not _same(a, b):
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:44s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


def _time(fn, impl, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(impl)
        best = min(best, time.perf_counter() - start)
    return best, out


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if a is None or b is None:
        return a is None and b is None
    return np.array_equal(np.asarray(a), np.asarray(b))

if __name__ == "__main__":
    main()
