"""Time the compiled and NumPy segment kernels on identical inputs.

    python benchmarks/bench_kernels.py [--lo 100000000] [--count 65536] [--repeat 5]
"""

import argparse
import math
import timeit

import numpy as np

from sievekit import _pykernels
from sievekit.arithmetic import build_sieve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=10**8)
    ap.add_argument("--count", type=int, default=1 << 16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    try:
        from sievekit import _ckernels
    except ImportError:
        _ckernels = None
        print("compiled kernels not built; timing the NumPy backend only")

    hi = args.lo + 2 * args.count
    primes = build_sieve(math.isqrt(hi) + 1).primes()
    lo_odd = args.lo | 1
    backends = [("numpy", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])

    print(f"lo={args.lo} count={args.count} primes<=sqrt(hi): {primes.size}")
    print(f"{'kernel':<16}{'backend':<9}{'best ms':>10}")
    times = {}
    for kernel, call in (
        ("sieve_segment", lambda m: m.sieve_segment(lo_odd, args.count, primes)),
        ("factor_segment", lambda m: m.factor_segment(args.lo, args.count, primes)),
    ):
        outs = []
        for name, mod in backends:
            outs.append(call(mod))
            best = min(timeit.repeat(lambda: call(mod), number=1, repeat=args.repeat))
            times[kernel, name] = best
            print(f"{kernel:<16}{name:<9}{best * 1e3:>10.2f}")
        if len(outs) == 2:
            a, b = (o if isinstance(o, tuple) else (o,) for o in outs)
            assert all(np.array_equal(x, y) for x, y in zip(a, b)), "backends disagree"
    if _ckernels:
        for kernel in ("sieve_segment", "factor_segment"):
            print(f"{kernel} speedup: {times[kernel, 'numpy'] / times[kernel, 'cython']:.1f}x")


if __name__ == "__main__":
    main()
