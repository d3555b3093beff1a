"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from zariski import _kernels_py
from zariski.cyclotomic import cyclotomic_polynomial

try:
    from zariski import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def workloads(rng: random.Random):
    phi40 = list(cyclotomic_polynomial(40))
    small = [[rng.randint(-50, 50) for _ in range(16)] for _ in range(200)]
    big = [[rng.randint(-(10**40), 10**40) for _ in range(16)] for _ in range(200)]
    table = [rng.randint(-(2**128), 2**128) for _ in range(16)]
    return {
        "mulmod Q(zeta_40), small ints": lambda k: [k.poly_mulmod(a, b, phi40) for a, b in zip(small, small[1:])],
        "mulmod Q(zeta_40), 40-digit ints": lambda k: [k.poly_mulmod(a, b, phi40) for a, b in zip(big, big[1:])],
        "reduce degree 30 mod Phi_40": lambda k: [k.poly_reduce(a + a, phi40) for a in small],
        "fixed_dot 16 x 128-bit": lambda k: [k.fixed_dot(a, table) for a in small],
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=20)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled extension not available; only the Python kernels were timed")
    rng = random.Random(0)
    print(f"{'workload':36s} {'python ms':>10s} {'compiled ms':>12s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=args.number, repeat=args.repeat)) / args.number
        if _compiled is None:
            print(f"{name:36s} {py * 1e3:10.3f} {'-':>12s} {'-':>8s}")
            continue
        assert fn(_compiled) == fn(_kernels_py)
        co = min(timeit.repeat(lambda: fn(_compiled), number=args.number, repeat=args.repeat)) / args.number
        print(f"{name:36s} {py * 1e3:10.3f} {co * 1e3:12.3f} {py / co:7.1f}x")


if __name__ == "__main__":
    main()
