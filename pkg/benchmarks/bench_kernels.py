"""Time the lattice-box kernel on both backends.

    python3 benchmarks/bench_kernels.py [--bounds 8 16 32] [--repeat 5]

The first numba call includes JIT compilation and is reported separately.
"""

import argparse
import time
from fractions import Fraction

import numpy as np

from tiltwall import _kernels
from tiltwall.chern import ChernCharacter
from tiltwall.wallfinder import brute_force_walls, enumerate_walls_on_line, restrict_to_box


def kernel_args(v, beta0):
    b = Fraction(beta0)
    p, q = b.numerator, b.denominator
    R, C, D = v.ch0, v.ch1, v.ch2
    d2 = int(2 * D)
    return dict(
        p=p, q=q, R=int(R),
        CC=int(q * C - p * R),
        DD=int(q * q * d2 - 2 * p * q * C + p * p * R),
        delta=int(C * C - 2 * R * D),
    )


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bounds", type=int, nargs="+", default=[8, 16, 32, 48])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    v = ChernCharacter.of(1, 0, -3, 5)
    beta0 = Fraction(-5, 2)
    kw = kernel_args(v, beta0)

    if _kernels.HAVE_NUMBA:
        t = time.perf_counter()
        _kernels.box_mask(2, backend="numba", **kw)
        print(f"numba compile + first call: {time.perf_counter() - t:.3f}s")
    else:
        print("numba not installed; numpy only")

    print(f"{'bound':>5} {'cells':>10} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for bound in args.bounds:
        cells = (2 * bound + 1) ** 2 * (4 * bound + 1)
        t_np = best_of(lambda: _kernels.box_mask(bound, backend="numpy", **kw), args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb = best_of(lambda: _kernels.box_mask(bound, backend="numba", **kw), args.repeat)
            same = np.array_equal(
                _kernels.box_mask(bound, backend="numpy", **kw), _kernels.box_mask(bound, backend="numba", **kw)
            )
            assert same, f"backends disagree at bound {bound}"
            print(f"{bound:>5} {cells:>10} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{bound:>5} {cells:>10} {t_np:>10.4f} {'-':>10} {'-':>8}")

    # end to end: exhaustive box against the bounded enumeration
    for bound in (8, 16):
        t = time.perf_counter()
        slow = brute_force_walls(v, beta0, bound)
        t_bf = time.perf_counter() - t
        t = time.perf_counter()
        fast = restrict_to_box(enumerate_walls_on_line(v, beta0), bound)
        t_en = time.perf_counter() - t
        print(f"bound {bound}: brute force {t_bf:.4f}s, enumeration {t_en:.4f}s, agree={slow == fast}")


if __name__ == "__main__":
    main()
