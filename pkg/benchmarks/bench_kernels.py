"""Compare the compiled and NumPy kernel backends.

    python3 benchmarks/bench_kernels.py --steps 200000 --repeat 5
"""

import argparse
import timeit

import numpy as np

from spinstat.kernels import BACKEND, available_backends


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--steps", type=int, default=200_000, help="schedule length / number of samples")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    dts = rng.uniform(1e-5, 1e-4, args.steps)
    omegas = rng.normal(size=(args.steps, 3))
    samples = np.outer(np.sin(np.arange(args.steps) * 1e-3), [1.0, 0.5, -2.0])

    backends = available_backends()
    print(f"selected backend: {BACKEND}; available: {', '.join(sorted(backends))}")
    print(f"{'kernel':<22}{'backend':<10}{'best of ' + str(args.repeat):>14}")
    results = {}
    for kernel, call_args in (("su2_ordered_product", (dts, omegas)), ("central_difference", (samples, 1e-3))):
        for name, mod in sorted(backends.items()):
            fn = getattr(mod, kernel)
            best = min(timeit.repeat(lambda: fn(*call_args), number=1, repeat=args.repeat))
            results[kernel, name] = (best, np.asarray(fn(*call_args)))
            print(f"{kernel:<22}{name:<10}{best * 1e3:>11.3f} ms")
        if len(backends) > 1:
            (tp, outp), (tc, outc) = results[kernel, "python"], results[kernel, "cython"]
            print(f"{'':<22}speedup {tp / tc:6.1f}x, max |diff| {np.max(np.abs(outp - outc)):.1e}")


if __name__ == "__main__":
    main()
