"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_core.py [--repeat 5] [--size 2000]

Prints one line per kernel with the best-of-N time of each backend and the
speed-up, plus an end-to-end line for a sine/cosine-integral transform.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from bvft import _core_py

try:
    from bvft import _core
except ImportError:  # pragma: no cover - no compiler at install time
    _core = None


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def kernel_cases(size, rng):
    u_small = rng.uniform(1e-3, 6.0, size)
    u_mixed = np.geomspace(1e-4, 1e5, size)
    series = np.cumsum(rng.choice([-1.0, 1.0], 40) / np.arange(1, 41))
    return [
        ("sici_aux (mixed u)", lambda m: m.sici_aux(u_mixed), 20),
        ("sici_series (u <= 6)", lambda m: m.sici_series(u_small), 20),
        ("aux_fg (u > 6)", lambda m: m.aux_fg(u_mixed[u_mixed > 6.0]), 20),
        ("wynn_epsilon (40 sums)", lambda m: m.wynn_epsilon(series), 2000),
    ]


END_TO_END = ("from bvft import registry_get, h0_script_t_cisi\n"
              "import time\n"
              "g = registry_get('gaussian').fprime\n"
              "t = time.perf_counter()\n"
              "for x in (0.1, 0.5, 1.0, 2.0, 5.0): h0_script_t_cisi(g, x, 1e-11)\n"
              "print(time.perf_counter() - t)\n")


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("BVFT_PURE_PYTHON", None)
    if pure:
        env["BVFT_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--size", type=int, default=2000)
    args = p.parse_args(argv)
    if _core is None:
        print("compiled core not built; only the fallback is available")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<26}{'compiled':>12}{'fallback':>12}{'speed-up':>10}")
    for name, fn, number in kernel_cases(args.size, rng):
        tc = best(lambda: fn(_core), args.repeat, number)
        tp = best(lambda: fn(_core_py), args.repeat, number)
        print(f"{name:<26}{tc * 1e6:>10.1f}us{tp * 1e6:>10.1f}us{tp / tc:>9.1f}x")
    tc, tp = end_to_end(False), end_to_end(True)
    print(f"{'h0_script_t_cisi x5':<26}{tc * 1e3:>10.1f}ms{tp * 1e3:>10.1f}ms{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
