"""Compare the Cython and pure-Python Bareiss kernels on mixed moment matrices.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit
from fractions import Fraction
from math import lcm

from multiop import _bareiss_py
from multiop.core import MopSystem
from multiop.lattice import MultiIndex
from multiop.moments import FamilySpec, build_moments

try:
    from multiop import _bareiss_ext
except ImportError:
    _bareiss_ext = None


def integer_rows(matrix):
    rows = []
    for i in range(matrix.rows):
        row = matrix.row(i)
        scale = lcm(*(Fraction(v).denominator for v in row))
        rows.append([int(v * scale) for v in row])
    return rows


def cases():
    fixtures = {
        "laguerre1": FamilySpec.laguerre1([Fraction(1, 2), Fraction(5, 3)]),
        "jacobi_pineiro": FamilySpec.jacobi_pineiro([Fraction(1, 2), Fraction(1, 3)], Fraction(1, 3)),
    }
    for name, spec in fixtures.items():
        for k in (4, 8, 12):
            n = MultiIndex.of(k, k)
            system = MopSystem(build_moments(spec, 2 * (2 * k) + 1))
            rows = integer_rows(system.moment_matrix(n).transpose())
            rhs = [0] * (len(rows) - 1) + [1]
            yield f"{name} n=({k},{k})", rows, rhs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _bareiss_py)]
    if _bareiss_ext is not None:
        backends.append(("cython", _bareiss_ext))
    else:
        print("compiled extension not built; timing the pure-Python kernel only")
    print(f"{'case':28} {'op':6} " + " ".join(f"{b:>12}" for b, _ in backends) + "   speedup")
    for label, rows, rhs in cases():
        for op in ("det", "solve"):
            times = []
            results = []
            for _, mod in backends:
                fn = (lambda m=mod: m.det_int(rows)) if op == "det" else (lambda m=mod: m.solve_int(rows, rhs))
                results.append(fn())
                times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
            assert all(r == results[0] for r in results), "backends disagree"
            speed = f"{times[0] / times[-1]:8.2f}x" if len(times) > 1 else ""
            print(f"{label:28} {op:6} " + " ".join(f"{t * 1e3:10.3f}ms" for t in times) + f"   {speed}")


if __name__ == "__main__":
    main()
