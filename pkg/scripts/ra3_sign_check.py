"""Compare the Jackson integral of Phi_k(z, s, k + a) with both l-series.

The alternating series (the one shared with the k - a shift) misses by O(1);
the series without the (-1)^l factor matches to rounding.
"""

import argparse
import cmath
import math

from qzeta.cli import parse_complex
from qzeta.raabe import lhs_ra2, lhs_ra3, rhs_ra3_corrected, rhs_ra23

DEFAULT_POINTS = [
    (1, 0.6, 3, 2.0),
    (2, 0.6, 3, 2.0),
    (2, 0.3 + 0.4j, 2 - 1j, 1.5),
    (1, cmath.exp(1j * math.pi / 3), 2.5, 2.0),
]


def short(c):
    c = complex(c)
    return f"{c.real:.4g}{c.imag:+.4g}i" if c.imag else f"{c.real:.4g}"


def row(k, z, s, q):
    l2, l3 = lhs_ra2(k, z, s, q).value, lhs_ra3(k, z, s, q).value
    alt = rhs_ra23(k, z, s, q).value
    plain = rhs_ra3_corrected(k, z, s, q).value
    return abs(l2 - alt), abs(l3 - alt), abs(l3 - plain)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int)
    ap.add_argument("--z")
    ap.add_argument("--s")
    ap.add_argument("--q", type=float, default=2.0)
    args = ap.parse_args()
    points = DEFAULT_POINTS
    if args.k is not None:
        points = [(args.k, parse_complex(args.z), parse_complex(args.s), args.q)]
    print(f"{'k':>2} {'z':>14} {'s':>8} {'q':>4}  {'k-a vs alt':>10}  {'k+a vs alt':>10}  {'k+a vs plain':>12}")
    for k, z, s, q in points:
        d2, d3, d3c = row(k, z, s, q)
        print(f"{k:>2} {short(z):>14} {short(s):>8} {q:>4}  {d2:10.2e}  {d3:10.2e}  {d3c:12.2e}")


if __name__ == "__main__":
    main()
