"""Compiled kernels against their pure-Python twins.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Each row times one kernel on both backends, checks that the outputs are
identical, and reports the speedup.
"""

import argparse
import json
import sys
import timeit

import numpy as np

from greenmackey import _kernels_py as py

try:
    from greenmackey import _ckernels as cy
except ImportError:
    sys.exit("compiled extension not built; run `pip install -e . --no-build-isolation` first")


def symmetric_gens(n):
    cycle = tuple(list(range(1, n)) + [0])
    swap = (1, 0) + tuple(range(2, n))
    return [cycle, swap]


def group_data(backend, degree):
    els = backend.perm_closure(symmetric_gens(degree), degree, 10**6)
    mul, inv = backend.mul_table(els)
    return els, backend.prepare(np.asarray(mul, dtype=np.int32), np.asarray(inv, dtype=np.int32))


def cases(rng):
    out = []
    for d in (4, 5):
        out.append((f"closure S{d}", lambda b, d=d: b.perm_closure(symmetric_gens(d), d, 10**6)))
    for d in (4, 5):
        els = py.perm_closure(symmetric_gens(d), d, 10**6)
        out.append((f"mul table S{d}", lambda b, els=els: b.mul_table(els)))
    tables = {b.BACKEND: group_data(b, 4)[1] for b in (py, cy)}
    out.append(("subgroups S4", lambda b: b.enumerate_subgroups(tables[b.BACKEND])))
    t5 = {b.BACKEND: group_data(b, 5)[1] for b in (py, cy)}
    subs5 = py.enumerate_subgroups(group_data(py, 5)[1])
    # K4, K6: the first subgroups of order 4 and 6
    small = [m for m, _ in subs5 if len(m) == 4][0]
    other = [m for m, _ in subs5 if len(m) == 6][0]
    whole = tuple(range(120))
    out.append(("subgroups S5", lambda b: b.enumerate_subgroups(t5[b.BACKEND])))
    out.append(("left cosets S5/K4", lambda b: b.left_coset_reps(t5[b.BACKEND], whole, small)))
    out.append(("double cosets K4\\S5/K6", lambda b: b.double_coset_reps(t5[b.BACKEND], whole, small, other)))
    for size in (8, 16):
        A = rng.integers(-50, 51, size=(size, size)).tolist()
        out.append((f"snf {size}x{size}", lambda b, A=A, s=size: b.snf(A, s, s)))
    return out


def normalize(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (list, tuple)):
        return [normalize(v) for v in x]
    return x


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    rows = []
    for name, fn in cases(rng):
        if normalize(fn(py)) != normalize(fn(cy)):
            raise SystemExit(f"{name}: backends disagree")
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        rows.append({"kernel": name, "python_ms": tp * 1e3, "cython_ms": tc * 1e3, "speedup": tp / tc})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'kernel':26s} {'python ms':>11s} {'cython ms':>11s} {'speedup':>8s}")
    for r in rows:
        print(f"{r['kernel']:26s} {r['python_ms']:11.3f} {r['cython_ms']:11.3f} {r['speedup']:7.1f}x")


if __name__ == "__main__":
    main()
