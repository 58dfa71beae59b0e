"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Part 1 times the raw kernels on random dense polynomials.  Part 2 runs the
same end-to-end workload (the duality suite on A3, n = 2, and positivity on G2, n = 3) in a
subprocess per backend, selected through HECKECELLS_PURE_PYTHON.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from heckecells import _pykernel

try:
    from heckecells import _ckernel
except ImportError:
    _ckernel = None

WORKLOAD = """
import time
from heckecells import kernels, suites
from heckecells.hecke import AlgebraContext
t0 = time.perf_counter()
ok = suites.run("duality", AlgebraContext.build("A3", 2))[0].passed
ok &= suites.run("positivity", AlgebraContext.build("G2", 3))[0].passed
print(kernels.BACKEND, ok, time.perf_counter() - t0)
"""


def rand_poly(rng, size, bound):
    c = [rng.randint(-bound, bound) for _ in range(size)]
    c[0] = c[0] or 1
    c[-1] = c[-1] or 1
    return tuple(c)


def bench_kernels(repeat):
    rng = random.Random(0)
    cases = []
    for size in (4, 16, 64):
        a, b = rand_poly(rng, size, 50), rand_poly(rng, size, 50)
        cases.append((size, a, b, _pykernel.mul(a, b)))
    print(f"{'kernel':10s} {'size':>5s} {'python us':>10s} {'cython us':>10s} {'speedup':>8s}")
    for size, a, b, ab in cases:
        for name, args in (("mul", (a, b)), ("add", (0, a, 3, b)), ("divexact", (ab, b))):
            times = []
            for mod in (_pykernel, _ckernel):
                if mod is None:
                    times.append(float("nan"))
                    continue
                fn = getattr(mod, name)
                n = 2000
                t = min(timeit.repeat(lambda: fn(*args), number=n, repeat=repeat)) / n
                times.append(t * 1e6)
            print(f"{name:10s} {size:5d} {times[0]:10.2f} {times[1]:10.2f} {times[0] / times[1]:8.2f}x")


def bench_end_to_end():
    for pure in ("1", "0"):
        env = dict(os.environ, HECKECELLS_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
        backend, ok, secs = out.stdout.split()
        print(f"end-to-end A3 duality + G2 positivity  backend={backend:7s} pass={ok}  {float(secs):.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernel is None:
        print("compiled kernel not built; only the Python backend is available")
    bench_kernels(args.repeat)
    bench_end_to_end()


if __name__ == "__main__":
    main()
