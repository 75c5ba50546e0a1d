"""Compare the numba and numpy kernel backends on the hot paths.

Run: python3 benchmarks/bench_kernels.py --q 3 --n 400 --width 16 --repeats 5
"""
import argparse
import time

import numpy as np

from sumprod.field import FieldSpec
from sumprod.kernels import backend_module


def best_ms(fn, *args, repeats=5):
    fn(*args)  # warm-up, also pays the numba compile
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best * 1000.0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=3, help="prime field size")
    ap.add_argument("--n", type=int, default=400, help="rows per operand")
    ap.add_argument("--width", type=int, default=16)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    add_t, mul_t = FieldSpec(args.q).tables()
    rng = np.random.default_rng(args.seed)
    a = rng.integers(0, args.q, size=(args.n, args.width), dtype=np.int64)
    b = rng.integers(0, args.q, size=(args.n, args.width), dtype=np.int64)
    small = a[: max(1, args.n // 8)]
    vals = rng.integers(-(1 << 40), 1 << 40, size=args.n, dtype=np.int64)
    pack_w = min(args.width, 30)

    cases = [
        ("pair_add_rows", lambda m: (m.pair_add_rows, a, b, add_t)),
        ("pair_mul_rows", lambda m: (m.pair_mul_rows, small, small, add_t, mul_t)),
        ("rows_mul", lambda m: (m.rows_mul, a, b, add_t, mul_t)),
        ("dist_matrix_rows", lambda m: (m.dist_matrix_rows, a)),
        ("valuation_matrix", lambda m: (m.valuation_matrix, vals, 2)),
        ("pack_rows", lambda m: (m.pack_rows, a[:, :pack_w] % 2, 2)),
    ]
    mods = {name: backend_module(name) for name in ("numpy", "numba")}
    print(f"q={args.q} n={args.n} width={args.width} repeats={args.repeats}")
    print(f"{'kernel':<18}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}  agree")
    for label, make in cases:
        res, times = {}, {}
        for name, mod in mods.items():
            fn, *fargs = make(mod)
            times[name] = best_ms(fn, *fargs, repeats=args.repeats)
            res[name] = fn(*fargs)
        agree = np.array_equal(res["numpy"], res["numba"])
        speed = times["numpy"] / max(times["numba"], 1e-9)
        print(f"{label:<18}{times['numpy']:>12.3f}{times['numba']:>12.3f}{speed:>9.2f}x  {agree}")


if __name__ == "__main__":
    main()
