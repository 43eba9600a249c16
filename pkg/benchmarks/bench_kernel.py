"""Compare the pure-Python and compiled reduction kernels.

Times the two kernels on a fixed nontrivial ideal: computing its reduced
Groebner basis (pair handling lives outside the kernel, so gains are modest)
and a batch of deep normal forms against that basis (kernel-bound).  Run with

    python3 benchmarks/bench_kernel.py [--repeat 3] [--elements 300] [--factors 12]
"""

import argparse
import random
import time

from subtlesw import backend
from subtlesw.grobner import groebner_basis, normal_form
from subtlesw.poly import bso_ring, parse_poly

# a fixed bihomogeneous ideal with a 129-element reduced basis
GENS = (
    "u2^6*u4*u7+t^2*u2^4*u3^5",
    "u4^2*u8+t*u2^3*u3*u7",
    "u2^8*u3^3+u2*u3^3*u6*u8+u2^2*u3^2*u7*u8",
    "u2^2*u3+u3*u4+u2*u5+u7",
)


def random_monomial(ring, rng, factors):
    e = [0] * len(ring)
    for _ in range(factors):
        e[rng.randrange(len(ring))] += 1
    return ring.poly([tuple(e)])


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--elements", type=int, default=300)
    ap.add_argument("--factors", type=int, default=12)
    args = ap.parse_args()

    ring = bso_ring(8)
    gens = [parse_poly(ring, s) for s in GENS]
    gb = groebner_basis(ring, gens)
    rng = random.Random(7)
    elems = [random_monomial(ring, rng, args.factors) for _ in range(args.elements)]

    workloads = [
        ("groebner basis", lambda: groebner_basis(ring, gens)),
        (f"normal_form x{args.elements}", lambda: [normal_form(x, gb) for x in elems]),
    ]

    names = backend.available()
    if "compiled" not in names:
        print("compiled kernel not built; timing the pure kernel only")
    print(f"{'workload':<24}" + "".join(f"{nm:>12}" for nm in names) + f"{'speedup':>10}")
    for label, fn in workloads:
        row = {}
        for nm in names:
            with backend.use(nm):
                row[nm] = best_of(args.repeat, fn)
        line = f"{label:<24}" + "".join(f"{row[nm]:>11.3f}s" for nm in names)
        if "compiled" in row:
            line += f"{row['pure'] / row['compiled']:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
