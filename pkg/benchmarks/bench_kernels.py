"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import random
import timeit

from linlog import _purepy

try:
    from linlog import _speedups
except ImportError:
    _speedups = None


def workloads(rng):
    mats = [[[rng.randint(-50, 50) for _ in range(24)] for _ in range(20)] for _ in range(5)]
    cols = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(4)]
    return {
        "digit_sum": lambda m: [m.digit_sum(j, p) for p in (2, 3, 7) for j in range(0, 200000, 7)],
        "legendre_valuation": lambda m: [m.legendre_valuation(j, p) for p in (2, 5, 97) for j in range(0, 200000, 7)],
        "bareiss_rank": lambda m: [m.bareiss_rank([r[:] for r in a]) for a in mats],
        "count_lattice_images": lambda m: m.count_lattice_images(cols, [6, 6, 5, 5]),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    jobs = workloads(random.Random(args.seed))
    print(f"{'kernel':<22}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, job in jobs.items():
        py = min(timeit.repeat(lambda: job(_purepy), number=1, repeat=args.repeat)) * 1e3
        if _speedups is None:
            print(f"{name:<22}{py:>14.2f}{'n/a':>14}{'':>10}")
            continue
        assert job(_purepy) == job(_speedups), name
        cy = min(timeit.repeat(lambda: job(_speedups), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<22}{py:>14.2f}{cy:>14.2f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
