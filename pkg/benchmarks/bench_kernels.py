"""Benchmark the two hot GF(p) kernels, numba @njit versus the pure-numpy
fallback, on the real workloads:

* the membership elimination (6435 x 11881 augmented system mod p);
* the rejection sampler for variety points over GF(p).

Run:  python benchmarks/bench_kernels.py [--trials N] [--prime P] [--repeat K]
"""
import argparse
import time

import numpy as np

from heis8_certify import geometry
from heis8_certify.kernels import required_dtype
from heis8_certify.kernels.modelim import _eliminate_numba, eliminate_mod_p_numpy
from heis8_certify.kernels.sampling import _sample_numba, sample_quadric_points_numpy


def build_membership_aug(p):
    problem = geometry.psi_membership_problem()
    ri, ci, vals = problem._build_coo()
    nrows, ncols = problem.shape
    dtype = required_dtype(nrows, p)
    aug = np.zeros((nrows, ncols + 1), dtype=dtype)
    np.add.at(aug, (ri, ci), np.asarray([v % p for v in vals], dtype=dtype))
    for e, c in problem._target_int.items():
        aug[problem._row_index[e], ncols] = c % p
    return aug


def build_sampler_args(p):
    system = geometry.build_system(
        geometry.MinusPlanePoint.rational(1, 2, 3).to_field(geometry.GF(p))
    )
    ti, tj, tc, offsets = [], [], [], [0]
    for q in system.quadrics:
        for e, c in q.sorted_terms():
            idx = [i for i in range(8) for _ in range(e[i])]
            ti.append(idx[0])
            tj.append(idx[1])
            tc.append(c.value)
        offsets.append(len(ti))
    return (
        np.asarray(ti, dtype=np.int64),
        np.asarray(tj, dtype=np.int64),
        np.asarray(tc, dtype=np.int64),
        np.asarray(offsets, dtype=np.int64),
    )


def timed(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=17)
    ap.add_argument("--trials", type=int, default=10**7)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    p = args.prime

    print(f"membership elimination, {geometry.psi_membership_problem().shape} mod {p}")
    base = build_membership_aug(p)
    rows = []
    if _eliminate_numba is not None:
        _eliminate_numba(base[:4, :4].copy(), p)  # compile outside the timing
        t, out = timed(lambda: _eliminate_numba(base.copy(), p), args.repeat)
        rows.append(("numba", t, out[0]))
    t, out = timed(lambda: eliminate_mod_p_numpy(base.copy(), p), args.repeat)
    rows.append(("numpy", t, out[0]))
    for name, t, rank in rows:
        print(f"  {name:>6s}: {t:8.3f} s   (rank {rank})")
    if len(rows) == 2:
        print(f"  speedup: {rows[1][1] / rows[0][1]:.2f}x")

    print(f"\nrejection sampler, {args.trials} draws mod {p}")
    ti, tj, tc, offsets = build_sampler_args(p)
    rows = []
    if _sample_numba is not None:
        _sample_numba(ti, tj, tc, offsets, p, 1000, np.uint64(1), 64)
        t, out = timed(
            lambda: _sample_numba(ti, tj, tc, offsets, p, args.trials, np.uint64(1), 65536),
            args.repeat,
        )
        rows.append(("numba", t, out[0]))
    t, out = timed(
        lambda: sample_quadric_points_numpy(ti, tj, tc, offsets, p, args.trials, 1, 65536),
        args.repeat,
    )
    rows.append(("numpy", t, out[0]))
    for name, t, hits in rows:
        print(f"  {name:>6s}: {t:8.3f} s   ({hits} hits)")
    if len(rows) == 2:
        print(f"  speedup: {rows[1][1] / rows[0][1]:.2f}x")


if __name__ == "__main__":
    main()
