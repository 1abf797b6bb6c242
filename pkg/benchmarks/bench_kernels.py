"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--sizes 8 32 128] [--repeat 5]

Each kernel is run once untimed (numba compilation), outputs of the two
implementations are compared, then the best of ``--repeat`` runs is reported.
"""

import argparse
import timeit

import numpy as np

from ordcat import _kernels as K
from ordcat import quantale as Q


def _preorder(rng, n, density=0.05):
    return np.ascontiguousarray(K.rt_closure_np(rng.random((n, n)) < density))


def _inputs(name, rng, n):
    if name == "bool_matmul":
        return rng.random((n, n)) < 0.1, rng.random((n, n)) < 0.1
    if name == "rt_closure":
        return (rng.random((n, n)) < 2.0 / max(n, 1),)
    lx, ly = _preorder(rng, n), _preorder(rng, n)
    if name == "ideal_violation":
        m = K.bool_matmul_np(K.bool_matmul_np(lx, rng.random((n, n)) < 0.02), ly)
        return lx, np.ascontiguousarray(m), ly
    if name == "difunctional_witness":
        # an equivalence-like relation: difunctional, so the full scan runs
        lab = rng.integers(0, 4, n)
        return (np.ascontiguousarray(lab[:, None] == lab[None, :]),)
    if name == "ord_difunctional_witness":
        return np.ones((n, n), dtype=bool), lx, ly
    V = Q.min_chain3()
    if name in ("vcat_violation", "vwedge_violation", "vcat_closure"):
        h = np.full((n, n), V.unit, dtype=np.int64)
        if name == "vcat_closure":
            h = np.ascontiguousarray(rng.integers(0, V.size, (n, n)))
            return h, np.ascontiguousarray(V.tensor), np.ascontiguousarray(V.join)
        if name == "vcat_violation":
            return h, np.ascontiguousarray(V.tensor), V.leq, V.unit
        return h, np.ascontiguousarray(V.meet), V.leq
    raise KeyError(name)


def bench(sizes, repeat, seed=0):
    rng = np.random.default_rng(seed)
    rows = []
    for name in K.KERNEL_NAMES:
        nb, npf = K.implementations(name)
        for n in sizes:
            if name.startswith(("ord_difunctional", "vcat", "vwedge")) and n > 64:
                continue
            args = _inputs(name, rng, n)
            a = npf(*args)
            b = nb(*args) if nb is not None else a
            same = np.array_equal(np.asarray(a), np.asarray(b))
            t_np = min(timeit.repeat(lambda: npf(*args), number=1, repeat=repeat))
            t_nb = min(timeit.repeat(lambda: nb(*args), number=1, repeat=repeat)) if nb else float("nan")
            rows.append((name, n, t_nb, t_np, same))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 32, 128])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':26s} {'n':>5s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s} agree")
    for name, n, t_nb, t_np, same in bench(args.sizes, args.repeat):
        print(f"{name:26s} {n:5d} {t_nb * 1e3:10.3f} {t_np * 1e3:10.3f} {t_np / t_nb:8.1f} {same}")


if __name__ == "__main__":
    main()
