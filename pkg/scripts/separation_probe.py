"""Probe at which level the commutator cycle types of (x, y z_k) and
(x, y z_j) first differ.  Observations only: no separation up to the
maximum depth says nothing about Nielsen equivalence."""

import argparse

from gsnielsen.catalog import X, Y, ScenarioPair, z
from gsnielsen.nielsen import separation_depth
from gsnielsen.tree import product


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--max-depth", type=int, default=7)
    args = ap.parse_args()

    pairs = {n: ScenarioPair(f"(x, y z_{n})", X, product(Y, z(n, args.p)))
             for n in range(1, args.max_n + 1)}
    pairs[0] = ScenarioPair("(x, y)", X, Y)
    names = sorted(pairs)
    print(f"p={args.p}, levels 1..{args.max_depth}")
    print("pair A          pair B          first separating level")
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            d = separation_depth(pairs[a], pairs[b], args.p, args.max_depth)
            print(f"{pairs[a].label:<15} {pairs[b].label:<15} {d if d else '-'}")


if __name__ == "__main__":
    main()
