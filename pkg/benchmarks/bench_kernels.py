"""Compare the compiled and pure-Python region kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--k 2 8 32]

Times a single lhs evaluation per region kind and a full boundary bisection
for each available backend, and reports the speedup of the compiled one.
"""

import argparse
import timeit

import numpy as np

from gsbcast import kernels


def make_case(K, seed=0):
    rng = np.random.default_rng(seed)
    noise = np.ascontiguousarray(np.sort(10.0 ** rng.uniform(-1, 1, K))[::-1])
    coef = np.ascontiguousarray(noise - np.append(noise[1:], 0.0))
    d = np.ascontiguousarray(np.sort(10.0 ** rng.uniform(-3, 0, K))[::-1])
    tau = np.ascontiguousarray(np.append(np.sort(10.0 ** rng.uniform(-2, 2, K - 1))[::-1], 0.0))
    scale = np.ascontiguousarray(2.0 ** np.arange(1, K + 1, dtype=float))
    return noise, coef, d, tau, scale


def bench_backend(mod, K, repeat, number):
    noise, coef, d, tau, scale = make_case(K)
    inv_b = 0.5
    budget = coef @ (d ** -inv_b)  # put the boundary at the sampled point
    jobs = {
        "scaled": lambda: mod.evaluate(kernels.KIND_SCALED, coef, d, tau, scale, inv_b),
        "parametric": lambda: mod.evaluate(kernels.KIND_PARAMETRIC, coef, d, tau, scale, inv_b),
        "p2p": lambda: mod.evaluate(kernels.KIND_P2P, noise, d, tau, scale, inv_b),
    }
    hi = d[K - 2] if K > 1 else 1.0
    lo = d[K - 1] * 1e-3

    def bisect():
        work = d.copy()
        mod.bisect(kernels.KIND_SCALED, coef, work, tau, np.ones(K), inv_b, K - 1, lo, hi,
                   budget, 0.0, 1e-12, 1e-14, 400)

    jobs["bisect"] = bisect
    out = {}
    for name, fn in jobs.items():
        n = number if name != "bisect" else max(1, number // 20)
        out[name] = min(timeit.repeat(fn, repeat=repeat, number=n)) / n
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=2000)
    parser.add_argument("--k", type=int, nargs="+", default=[2, 8, 32])
    args = parser.parse_args()

    backends = {"python": kernels.backend_module("python")}
    try:
        backends["cython"] = kernels.backend_module("cython")
    except ImportError:
        print("compiled extension not built; timing the Python kernels only")

    print(f"{'K':>4} {'kernel':<11}" + "".join(f"{name + ' (us)':>15}" for name in backends) + f"{'speedup':>10}")
    for K in args.k:
        results = {name: bench_backend(mod, K, args.repeat, args.number) for name, mod in backends.items()}
        for kernel in results["python"]:
            row = f"{K:>4} {kernel:<11}" + "".join(f"{results[b][kernel] * 1e6:>15.2f}" for b in backends)
            if "cython" in results:
                row += f"{results['python'][kernel] / results['cython'][kernel]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
