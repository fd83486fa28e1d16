"""Enumerate every equilibrium at tiny n and summarize their social costs.

Reports observed price of stability / anarchy against the brute-force optimum.
An empty scan means no equilibrium was found within the search bounds, which
is not a proof that none exists.
"""
import argparse
import time
from collections import Counter

from tempo_ncg import Variant, exhaustive_ne_scan, social_cost, social_optimum
from tempo_ncg.io import approx, rational

DEFAULT_VARIANTS = ["nonstrict,zero,positive", "nonstrict,down,positive", "nonstrict,up,positive",
                    "strict,zero", "strict,zero,positive", "strict,down,positive", "strict,up,positive"]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--variants", default=";".join(DEFAULT_VARIANTS), help="semicolon-separated")
    parser.add_argument("--n", type=int, nargs="+", default=[3, 4])
    args = parser.parse_args()

    print("variant\tn\tequilibria\topt\tcosts\tPoS\tPoA\tseconds")
    for text in args.variants.split(";"):
        variant = Variant.parse(text)
        for n in args.n:
            start = time.perf_counter()
            found = exhaustive_ne_scan(variant, n)
            costs = Counter(social_cost(variant, p) for p in found)
            opt = social_optimum(variant, n).value
            if found and opt:
                pos, poa = min(costs) / opt, max(costs) / opt
                ratios = f"{rational(pos)} ({approx(pos)})\t{rational(poa)} ({approx(poa)})"
            else:
                ratios = "none found within bounds\t-"
            spread = ",".join(f"{rational(c)}x{k}" for c, k in sorted(costs.items()))
            print(f"{variant}\t{n}\t{len(found)}\t{rational(opt)}\t{spread}\t{ratios}\t"
                  f"{time.perf_counter() - start:.1f}")


if __name__ == "__main__":
    main()
