"""Benchmark the compiled cycle kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernel.py [--samples K]

Times the per-graph operations that dominate Monte Carlo runtime on
representative workloads and prints the speedup per operation.
"""

import argparse
import time

from randsurf._kernel import _pycore
from randsurf.ribbon import sample_sigma

try:
    from randsurf._kernel import _fastcore
except ImportError:
    _fastcore = None


WORKLOADS = [
    ("circuit counts k<=3, n=200", 200,
     lambda K, sig: K.count_cycles(sig, 3)),
    ("word classes k<=3, n=200", 200,
     lambda K, sig: K.count_word_classes(sig, 3)),
    ("faces + genus, n=500", 500,
     lambda K, sig: K.genus_info(sig)),
    ("essential search, n=512", 512,
     lambda K, sig: K.essential_search(sig, True)),
    ("separating <=8, n=512", 512,
     lambda K, sig: K.has_short_separating(sig, 8)),
]


def time_lane(kernel, n, fn, sigmas):
    t0 = time.perf_counter()
    for sig in sigmas:
        fn(kernel, sig)
    return (time.perf_counter() - t0) / len(sigmas)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=50,
                        help="graphs per workload (default 50)")
    args = parser.parse_args()

    if _fastcore is None:
        print("compiled kernel not built; nothing to compare")
        return 1

    print(f"{'workload':<32} {'pure ms':>10} {'compiled ms':>12} {'speedup':>9}")
    for name, n, fn in WORKLOADS:
        sigmas = [sample_sigma(n, 12345, stream=i) for i in range(args.samples)]
        # verify agreement on the first graph before timing
        assert fn(_pycore, sigmas[0]) == fn(_fastcore, sigmas[0])
        t_pure = time_lane(_pycore, n, fn, sigmas)
        t_fast = time_lane(_fastcore, n, fn, sigmas)
        print(f"{name:<32} {t_pure * 1e3:>10.3f} {t_fast * 1e3:>12.3f} "
              f"{t_pure / t_fast:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
