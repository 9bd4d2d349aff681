"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload calls one kernel with inputs of the size the identity builders
produce at their default orders.
"""

from __future__ import annotations

import argparse
import random
import timeit
from fractions import Fraction

from qverify import _kernels_py

try:
    from qverify import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def workloads(seed: int = 7):
    rng = random.Random(seed)
    dense_int = {e: rng.randint(-20, 20) or 1 for e in range(200)}
    sparse = {e * e: rng.choice((-2, -1, 1, 2)) for e in range(15)}
    fracs = {e: Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 7)) for e in range(80)}
    return {
        "mul dense 200x200": lambda m: m.mul_terms(dense_int, dense_int, 200),
        "mul sparse x dense": lambda m: m.mul_terms(sparse, dense_int, 200),
        "mul rational 80x80": lambda m: m.mul_terms(fracs, fracs, 80),
        "(q;q)_inf to 200": lambda m: _poch(m, 200),
        "1/(1-q^k) chain to 200": lambda m: _partitions(m, 200),
        "inverse dense to 200": lambda m: m.inverse_terms({0: 1, **{e: -1 for e in range(1, 40)}}, 200),
    }


def _poch(m, g):
    t = {0: 1}
    for e in range(1, g + 1):
        t = m.mul_binomial(t, 1, e, g)
    return t


def _partitions(m, g):
    t = {0: 1}
    for e in range(1, g + 1):
        t = m.divide_binomial(t, 1, e, g)
    return t


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _kernels_py)] + ([("compiled", _compiled)] if _compiled else [])
    print(f"{'workload':26}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _compiled else ""))
    for label, fn in workloads().items():
        times = []
        for _, mod in backends:
            if _compiled is not None:
                assert fn(mod) == fn(backends[0][1])
            times.append(min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat)))
        row = f"{label:26}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
