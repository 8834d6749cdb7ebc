"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import random
import timeit
from fractions import Fraction

from hodgeball import _kernels_py


def series_case(rng, nvars=4, order=6, terms=60):
    def rand_series():
        out = {}
        for _ in range(terms):
            e = [0] * nvars
            for _ in range(rng.randint(0, order)):
                e[rng.randrange(nvars)] += 1
            out[tuple(e)] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 9))
        return out

    a, b = rand_series(), rand_series()
    return lambda k: k.series_mul(a, b, order)


def echelon_case(rng, n=14):
    rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
    return lambda k: k.echelon(rows, n)


def monomial_case():
    leads = [tuple(2 * (i == j) for j in range(6)) for i in range(6)]
    return lambda k: k.standard_monomials(6, 4, leads)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    try:
        compiled = importlib.import_module("hodgeball._kernels")
    except ImportError:
        compiled = None
        print("compiled kernels not built; timing the fallback only")
    rng = random.Random(args.seed)
    cases = {
        "series_mul": series_case(rng),
        "echelon": echelon_case(rng),
        "standard_monomials": monomial_case(),
    }
    print(f"{'kernel':<20}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in cases.items():
        if compiled is not None and fn(compiled) != fn(_kernels_py):
            raise SystemExit(f"{name}: backends disagree")
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=3, repeat=args.repeat)) / 3
        if compiled is None:
            print(f"{name:<20}{t_py * 1e3:>14.2f}{'-':>14}{'-':>10}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(compiled), number=3, repeat=args.repeat)) / 3
        print(f"{name:<20}{t_py * 1e3:>14.2f}{t_cy * 1e3:>14.2f}{t_py / t_cy:>9.2f}x")


if __name__ == "__main__":
    main()
