"""Tabulate, for small primes, which a in F_p make sum_{0<k<p/3} C(3k,k) a^k vanish.

Each row also lists how many a outside {0, 1/9, 4/27} make a(1-z)^3 - z^2 split
completely, which should equal the number of zeros.
"""

import argparse
from fractions import Fraction

from trunccong.gfq import FqContext, count_roots_in_fq
from trunccong.modmath import odd_primes
from trunccong.zerosum import splitting_cubic, zero_set


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmax", type=int, default=60)
    args = ap.parse_args()
    print(f"{'p':>5} {'p mod 9':>7} {'#zeros':>6} {'#split':>6}  zero set")
    for p in odd_primes(5, args.pmax + 1):
        ctx = FqContext(p)
        excluded = {ctx(0), ctx(Fraction(1, 9)), ctx(Fraction(4, 27))}
        zeros = sorted(int(a) for a in zero_set(ctx))
        split = sum(
            1 for a in ctx.elements() if a not in excluded and count_roots_in_fq(splitting_cubic(a), ctx) == 3
        )
        print(f"{p:>5} {p % 9:>7} {len(zeros):>6} {split:>6}  {zeros}")


if __name__ == "__main__":
    main()
