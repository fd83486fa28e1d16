"""Best-response dynamics from seeded random profiles; tallies outcomes and final costs."""
import argparse
import random
from collections import Counter

from tempo_ncg import Variant, best_response_dynamics, is_nash, social_cost
from tempo_ncg.game import random_profile
from tempo_ncg.io import rational


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--variant", default="nonstrict,zero,positive")
    parser.add_argument("--n", type=int, default=4)
    parser.add_argument("--runs", type=int, default=50)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--max-rounds", type=int, default=30)
    parser.add_argument("--max-label", type=int, default=3)
    args = parser.parse_args()

    variant = Variant.parse(args.variant)
    rng = random.Random(args.seed)
    outcomes, costs = Counter(), Counter()
    for _ in range(args.runs):
        res = best_response_dynamics(variant, random_profile(args.n, rng, args.max_label), args.max_rounds)
        outcomes[res.status] += 1
        if res.converged:
            assert is_nash(variant, res.profile).certified, "converged profile failed verification"
            costs[social_cost(variant, res.profile)] += 1
    print(f"variant {variant}, n={args.n}, runs={args.runs}, seed={args.seed}")
    print("outcomes:", dict(outcomes))
    print("converged social costs:", {rational(c): k for c, k in sorted(costs.items())})


if __name__ == "__main__":
    main()
