"""Time each kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

import numpy as np

from chardeg import kernels
from chardeg.field_oracle import FieldCtx
from chardeg.numtheory import carmichael, factorize


def cases():
    ctx = FieldCtx.build(7, 4)
    g = ctx.code(ctx.generator)
    lam = carmichael(factorize(9240))
    lam_primes = factorize(lam).primes
    return [
        ("orbit_partition d=923520 (q=31,e=4)", kernels.orbit_partition, (31**4 - 1, 31, 4)),
        ("orbit_partition d=531440 (q=3,e=12)", kernels.orbit_partition, (3**12 - 1, 3, 12)),
        ("class_count |G|=9804 (q=7,e=6,d=1634)", kernels.class_count, (1634, 6, 7)),
        ("class_count |G|=3280 (q=3,e=8,d=410)", kernels.class_count, (410, 8, 3)),
        ("orders_mod n=9240", kernels.orders_mod, (9240, lam, lam_primes)),
        ("power_table GF(7^4)", kernels.power_table, (g, 7, 4, ctx.modulus, 2400)),
        ("frobenius_map GF(7^4)", kernels.frobenius_map, (7, 4, ctx.modulus)),
    ]


def bench(fn, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return np.array(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    opts = parser.parse_args()

    print(f"{'kernel':44s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    print("-" * 76)
    for name, fn, args in cases():
        results = {}
        for backend in ("numba", "numpy"):
            if backend == "numba" and not kernels.HAVE_NUMBA:
                results[backend] = None
                continue
            with kernels.backend(backend):
                fn(*args)  # compile / warm caches
                results[backend] = bench(fn, args, opts.repeat).min() * 1000
        nb, npy = results["numba"], results["numpy"]
        speed = f"{npy / nb:7.1f}x" if nb else "   n/a"
        nb_s = f"{nb:10.2f}" if nb is not None else f"{'n/a':>10s}"
        print(f"{name:44s} {nb_s} {npy:10.2f} {speed}")


if __name__ == "__main__":
    main()
