"""Generators for the equilibrium constructions and the variants they are claimed for."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game import LabelCost, Penalty, StrategyProfile, Variant
from .temporal_graph import ReachMode

POS = frozenset({Penalty.POSITIVE})
POS_PROPER = frozenset({Penalty.POSITIVE, Penalty.PROPER})


@dataclass(frozen=True)
class ConstructionClaim:
    name: str
    profile: StrategyProfile
    claimed_variants: tuple[Variant, ...]
    expected_social_cost: Fraction
    anchor: str

    def manifest(self) -> dict:
        return {
            "construction": self.name,
            "variants": [str(v) for v in self.claimed_variants],
            "expected_social_cost": str(self.expected_social_cost),
            "anchor": self.anchor,
        }


def star_tree(n: int, label: int = 1) -> ConstructionClaim:
    """Agents 1..n-1 each buy one edge with ``label`` towards agent 0."""
    if n < 1:
        raise ValueError("n must be positive")
    profile = StrategyProfile.from_buys(n, {u: [(0, label)] for u in range(1, n)})
    # With a label below 1 the positivity claim is dropped; the star is still
    # minimally connected without that penalty.
    pens = POS if label >= 1 else frozenset()
    variants = tuple(Variant(ReachMode.NONSTRICT, c, pens) for c in LabelCost)
    return ConstructionClaim("star", profile, variants, Fraction(n - 1),
                             "equal-label spanning star: optimum and equilibrium for non-strict paths")


def grid_ne(k: int) -> ConstructionClaim:
    """k groups of k agents: a 1-labeled path inside each group, plus k-1
    2-labeled edges bought by each group's second member, one per foreign
    non-second agent.

    Agent ``v_i^j`` (group i in 0..k-1, position j in 1..k) has index ``i*k + j-1``.
    """
    if k < 3:
        raise ValueError("the grid construction needs k >= 3")
    n = k * k

    def v(i: int, j: int) -> int:
        return (i % k) * k + j - 1

    buys: dict[int, list[tuple[int, int]]] = {}
    for i in range(k):
        buys[v(i, 1)] = [(v(i, 2), 1)]
        for j in range(3, k + 1):
            buys[v(i, j)] = [(v(i, j - 1), 1)]
    positions = [1] + list(range(3, k + 1))  # every position except 2
    for i in range(k):
        # r-th foreign group gets the r-th non-second position; no target repeats.
        buys[v(i, 2)] = [(v(i + r, positions[r - 1]), 2) for r in range(1, k)]
    profile = StrategyProfile.from_buys(n, buys)
    variants = (Variant(ReachMode.NONSTRICT, LabelCost.ZERO, POS), Variant(ReachMode.NONSTRICT, LabelCost.UP, POS))
    return ConstructionClaim("grid", profile, variants, Fraction(2 * k * (k - 1)),
                             "uniform-cost non-strict equilibrium with 2k(k-1) edges")


def outer_ring_ne(n: int, spokes: str = "flat") -> ConstructionClaim:
    """A 4-cycle labeled n, n+1, n, n+1 with every extra agent hanging off both
    opposite corners by one low and one high edge.

    Indices: v_a=0, v_b=1, v_c=2, v_d=3, extra agent k (1-based) is ``3 + k``.
    Odd k buys a low edge to v_a and is bought by v_c at ``n+1+ceil(k/2)``;
    even k mirrors this with the corners swapped.

    ``spokes="flat"`` labels every low spoke 1. ``spokes="staggered"`` uses
    ``ceil(k/2)``, which stops being an equilibrium from n = 7 on: a corner
    with two attached agents buys one 1-edge to the opposite corner and rides
    the later spokes from there. Both agree for n <= 6.
    """
    if n < 4:
        raise ValueError("the outer ring needs n >= 4")
    if spokes not in ("flat", "staggered"):
        raise ValueError(f"unknown spoke labeling {spokes!r}")
    a, b, c, d = 0, 1, 2, 3
    buys: dict[int, list[tuple[int, int]]] = {a: [(b, n)], b: [(c, n + 1)], c: [(d, n)], d: [(a, n + 1)]}
    for k in range(1, n - 3):
        e = 3 + k
        half = (k + 1) // 2
        low = 1 if spokes == "flat" else half
        if k % 2:
            buys[e] = [(a, low)]
            buys[c].append((e, n + 1 + half))
        else:
            buys[e] = [(c, low)]
            buys[a].append((e, n + 1 + half))
    profile = StrategyProfile.from_buys(n, buys)
    variants = (Variant(ReachMode.STRICT, LabelCost.ZERO, POS), Variant(ReachMode.STRICT, LabelCost.ZERO, POS_PROPER))
    return ConstructionClaim("outer-ring", profile, variants, Fraction(2 * n - 4),
                             "strict uniform-cost equilibrium matching the 2n-4 optimum")


def clique_ne(n: int, label: int = 1) -> ConstructionClaim:
    """Complete graph, every edge bought by its lower endpoint with one shared label."""
    if n < 2:
        raise ValueError("the clique needs n >= 2")
    if label < 1:
        raise ValueError("clique labels must be positive")
    profile = StrategyProfile.from_buys(n, {u: [(w, label) for w in range(u + 1, n)] for u in range(n)})
    variants = tuple(Variant(ReachMode.STRICT, c, POS) for c in LabelCost)
    return ConstructionClaim("clique", profile, variants, Fraction(n * (n - 1), 2),
                             "equal-label clique: strict equilibrium with the most edges")


def hypercube_ne(d: int, owner: str = "even") -> ConstructionClaim:
    """Hypercube Q_d where the edge flipping bit i carries label i+1.

    ``owner="even"``: every vertex of even Hamming weight buys all its edges,
    so a deviating buyer owns every edge at itself and the proper-purchase
    penalty keeps its labels distinct. ``owner="bit0"``: the endpoint whose
    flipped bit is 0 buys; from d = 3 on an agent can then buy a second
    1-edge next to one it was sold and drop two edges.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    n = 1 << d
    if owner == "even":
        buys = {x: [(x ^ 1 << i, i + 1) for i in range(d)] for x in range(n) if bin(x).count("1") % 2 == 0}
    elif owner == "bit0":
        buys = {x: [(x | 1 << i, i + 1) for i in range(d) if not x >> i & 1] for x in range(n)}
    else:
        raise ValueError(f"unknown ownership rule {owner!r}")
    profile = StrategyProfile.from_buys(n, buys)
    variants = (Variant(ReachMode.STRICT, LabelCost.ZERO, POS_PROPER),)
    return ConstructionClaim("hypercube", profile, variants, Fraction(d * (1 << (d - 1))),
                             "properly labeled hypercube with lifetime log2 n")


def arbitrary_low_ne(n: int) -> ConstructionClaim:
    """Small strict equilibria when labels may go below 1 (n <= 6).

    Agents A, B, C, D = 0..3 form a square labeled 1, 2, 1, 2; agent 4 hangs off
    C with a 0-edge and is reached from D by a 3-edge; agent 5 hangs off A
    with a 0-edge and is reached from B by a 3-edge.
    """
    if not 1 <= n <= 6:
        raise ValueError("small low-label equilibria are only known for 1 <= n <= 6")
    if n <= 3:
        buys = {1: {}, 2: {0: [(1, 1)]}, 3: {0: [(1, 1)], 1: [(2, 1)], 2: [(0, 1)]}}[n]
    else:
        A, B, C, D, E, F = range(6)
        buys = {A: [(B, 1)], B: [(C, 2)], C: [(D, 1)], D: [(A, 2)]}
        if n >= 5:
            buys[E] = [(C, 0)]
            buys[D].append((E, 3))
        if n >= 6:
            buys[F] = [(A, 0)]
            buys[B].append((F, 3))
    profile = StrategyProfile.from_buys(n, buys)
    expected = {1: 0, 2: 1, 3: 3}.get(n, 2 * n - 4)
    return ConstructionClaim("arbitrary-low", profile, (Variant(ReachMode.STRICT, LabelCost.ZERO),),
                             Fraction(expected), "small strict equilibria with unrestricted labels")


GENERATORS = {
    "star": star_tree,
    "grid": grid_ne,
    "outer-ring": outer_ring_ne,
    "clique": clique_ne,
    "hypercube": hypercube_ne,
    "arbitrary-low": arbitrary_low_ne,
}
