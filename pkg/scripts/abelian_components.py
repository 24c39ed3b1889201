"""Exhaustive Nielsen component counts of (Z/m)^r next to phi(m)/2."""

import argparse
import math

from gsnielsen.groups import AbelianGroup
from gsnielsen.nielsen import explore_exhaustive


def phi(m):
    return sum(1 for a in range(1, m + 1) if math.gcd(a, m) == 1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--moduli", default="2,3,4,5,6,7,8,9,10")
    ap.add_argument("--rank", type=int, default=2)
    args = ap.parse_args()
    print("m   k=r  predicted  k=r+1")
    for m in map(int, args.moduli.split(",")):
        h = AbelianGroup([m] * args.rank)
        at_rank = explore_exhaustive(h, args.rank).count
        predicted = 1 if m <= 3 else phi(m) // 2
        above = explore_exhaustive(h, args.rank + 1).count if m ** (args.rank * (args.rank + 1)) <= 10 ** 6 else "-"
        print(f"{m:<3} {at_rank:<4} {predicted:<10} {above}")


if __name__ == "__main__":
    main()
