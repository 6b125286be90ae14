"""Compare the compiled kernels with the pure-Python fallback.

Run ``python3 benchmarks/bench_kernels.py``.  The first table times the
kernels directly on identical inputs; the second runs one order-12
reduction end to end in a subprocess per backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from folnf import _kernels_py as py

try:
    from folnf import _kernels_c as cy
except ImportError:
    cy = None

SHIFT = py.SHIFT


def random_poly(rng, nvars, nterms, deg, bits):
    out = {}
    for _ in range(nterms):
        m = 0
        for k in range(nvars):
            m |= rng.randint(0, deg) << (SHIFT * k)
        out[m] = rng.randint(-(1 << bits), 1 << bits) or 1
    return out


def kernel_table(repeat):
    rng = random.Random(1)
    f = random_poly(rng, 4, 40, 4, 64)
    g = random_poly(rng, 4, 40, 4, 64)
    fg = py.mul(f, g)
    cases = {
        "mul": lambda k: k.mul(f, g),
        "add": lambda k: k.add(f, g),
        "divexact": lambda k: k.divexact(fg, g),
        "evaluate": lambda k: k.evaluate(fg, 1, 10 ** 12 + 39),
        "content": lambda k: k.content(fg),
    }
    print(f"{'kernel':<10} {'python (ms)':>12} {'compiled (ms)':>14} {'speedup':>8}")
    for name, fn in cases.items():
        tp = min(timeit.repeat(lambda: fn(py), number=repeat, repeat=3)) / repeat * 1e3
        if cy is None:
            print(f"{name:<10} {tp:>12.3f} {'n/a':>14} {'':>8}")
            continue
        assert fn(py) == fn(cy)
        tc = min(timeit.repeat(lambda: fn(cy), number=repeat, repeat=3)) / repeat * 1e3
        print(f"{name:<10} {tp:>12.3f} {tc:>14.3f} {tp / tc:>7.2f}x")


REDUCE_SNIPPET = """
import time
from folnf import BACKEND
from folnf.cone import STANDARD_LINES, construct_example
from folnf.field import gen
from folnf.jets import pullback
from folnf.perturb import random_identity_tangent_map
from folnf.reduction import reduce_to_normal_form
t1, t2, t3, t4, t5 = (gen(k) for k in range(1, 6))
omega = construct_example((t1, t2, 1 - t1 - t2), STANDARD_LINES, [t3, t4, t5], {order})
start = time.perf_counter()
reduce_to_normal_form(omega)
first = time.perf_counter() - start
start = time.perf_counter()
for seed in range({maps}):
    reduce_to_normal_form(pullback(omega, random_identity_tangent_map(seed, 3, {order})))
print(BACKEND, first, (time.perf_counter() - start) / {maps})
"""


def reduction_table(order, maps):
    print(f"\norder-{order} reduction: first run (incl. factorizations), then mean per perturbed input")
    print(f"{'backend':<10} {'first (s)':>10} {'per map (s)':>12}")
    for pure in (True, False):
        env = dict(os.environ)
        if pure:
            env["FOLNF_PURE_PYTHON"] = "1"
        else:
            env.pop("FOLNF_PURE_PYTHON", None)
        out = subprocess.run([sys.executable, "-c", REDUCE_SNIPPET.format(order=order, maps=maps)],
                             env=env, capture_output=True, text=True, check=True).stdout.split()
        print(f"{out[0]:<10} {float(out[1]):>10.2f} {float(out[2]):>12.2f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=50)
    parser.add_argument("--order", type=int, default=12)
    parser.add_argument("--maps", type=int, default=3)
    args = parser.parse_args()
    kernel_table(args.repeat)
    reduction_table(args.order, args.maps)


if __name__ == "__main__":
    main()
