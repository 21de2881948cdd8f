"""Compare the compiled and pure-Python F_p kernels.

    python benchmarks/bench_kernels.py [--T 20 40 60] [--p 2 3 5] [--repeat 3]

The workload is the multiplicativity defect ``(1/F)(X+Y) * F(X) F(Y)`` of a
random unit series, which dominates every theorem check, plus a univariate
truncated product.  Results from both backends are asserted equal.
"""

import argparse
import random
import timeit

from ahexp import _kernels


def defect_with(k, f, p, T):
    inv = k.inv_trunc(f, p, T)
    return k.bi_mul(k.bi_subst_sum(inv, p, T), k.bi_outer(f, f, p, T), p, T)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--T", type=int, nargs="+", default=[20, 40, 60])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"python": _kernels.get_backend("python")}
    try:
        backends["cython"] = _kernels.get_backend("cython")
    except ImportError:
        print("compiled kernels not built; timing the pure-Python backend only")

    print(f"{'kernel':<10}{'p':>4}{'T':>5}" + "".join(f"{name + ' (ms)':>15}" for name in backends)
          + ("    speedup" if len(backends) == 2 else ""))
    for p in args.p:
        for T in args.T:
            rng = random.Random(p * 1000 + T)
            f = [1] + [rng.randrange(p) for _ in range(T)]
            g = [rng.randrange(p) for _ in range(T + 1)]
            jobs = {
                "defect": lambda k: defect_with(k, f, p, T),
                "mul_trunc": lambda k: k.mul_trunc(f, g, p, T),
            }
            for name, job in jobs.items():
                results = {b: job(k) for b, k in backends.items()}
                assert len({tuple(r) for r in results.values()}) == 1, "backends disagree"
                times = {}
                for b, k in backends.items():
                    timer = timeit.Timer(lambda: job(k))
                    n, _ = timer.autorange()
                    times[b] = min(timer.repeat(args.repeat, n)) / n * 1e3
                row = f"{name:<10}{p:>4}{T:>5}" + "".join(f"{times[b]:>15.3f}" for b in backends)
                if len(times) == 2:
                    row += f"{times['python'] / times['cython']:>10.1f}x"
                print(row)


if __name__ == "__main__":
    main()
