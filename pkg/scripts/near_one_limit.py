"""Track the RA1 right side for k=1 as z approaches 1 from below.

Li_1(z, s) blows up like Gamma(1-s)(-ln z)^(s-1); after removing that term the
right side settles onto the z = 1 (Hurwitz zeta) value.
"""

import argparse
import math

from qzeta.raabe import IdentityId, rhs_cor, verify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=float, default=0.5)
    ap.add_argument("--q", type=float, default=2.0)
    ap.add_argument("--digits", type=int, default=4, help="use z = 1 - 10^-d for d = 1..digits")
    args = ap.parse_args()
    target = rhs_cor(IdentityId.COR_RA1W, args.s, args.q).value
    print(f"z=1 value: {target.real:.15g}")
    print(f"{'z':>10}  {'residual':>9}  {'|rhs - z=1|':>12}  {'regularized':>12}")
    for d in range(1, args.digits + 1):
        z = 1 - 10.0**-d
        rep = verify("ra1", 1, z, args.s, args.q)
        singular = math.gamma(1 - args.s) * (-math.log(z)) ** (args.s - 1)
        print(f"{z:>10}  {rep.abs_residual:9.1e}  {abs(rep.rhs - target):12.4e}  {abs(rep.rhs - singular - target):12.4e}")


if __name__ == "__main__":
    main()
