"""Orders of G_p/St(n) from stabilizer chains, printed as powers of p."""

import argparse
import math
import time

from gsnielsen.groups import QuotientGroup


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=5)
    args = ap.parse_args()
    for d in range(1, args.max_depth + 1):
        t = time.perf_counter()
        h = QuotientGroup(args.p, d)
        order = h.order()
        exp = round(math.log(order, args.p))
        assert args.p ** exp == order
        print(f"depth {d}: |G/St({d})| = {args.p}^{exp}  "
              f"(base length {len(h.chain.base)}, {time.perf_counter() - t:.2f}s)")


if __name__ == "__main__":
    main()
