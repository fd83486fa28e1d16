"""Strategy profiles, their realization, and exact agent and social costs."""
from __future__ import annotations

import enum
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .temporal_graph import Edge, ReachMode, TemporalGraph, edge_key, reachable_set


class LabelCost(enum.Enum):
    ZERO = "zero"
    UP = "up"  # charges for every edge with a strictly higher label
    DOWN = "down"  # charges for every edge with a strictly lower label


class Penalty(enum.Enum):
    POSITIVE = "positive"
    PROPER = "proper"


_REACH_NAMES = {m.value: m for m in ReachMode}


@dataclass(frozen=True)
class Variant:
    reach: ReachMode
    label_cost: LabelCost = LabelCost.ZERO
    penalties: frozenset[Penalty] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "penalties", frozenset(self.penalties))

    @classmethod
    def parse(cls, text: str) -> Variant:
        """Parse ``"reach,labelcost[,penalty...]"``, e.g. ``"strict,zero,positive"``."""
        parts = [p.strip().lower() for p in text.split(",") if p.strip()]
        if not parts or parts[0] not in _REACH_NAMES:
            raise ValueError(f"bad variant {text!r}: first field must be strict or nonstrict")
        label_cost = LabelCost(parts[1]) if len(parts) > 1 else LabelCost.ZERO
        return cls(_REACH_NAMES[parts[0]], label_cost, frozenset(Penalty(p) for p in parts[2:]))

    def __str__(self) -> str:
        pens = sorted(p.value for p in self.penalties)
        return ",".join([self.reach.value, self.label_cost.value, *pens])

    @property
    def strict(self) -> bool:
        return self.reach.strict


@dataclass(frozen=True, order=True)
class Purchase:
    target: int
    label: int


Strategy = frozenset  # frozenset[Purchase]


def strategy(*buys: tuple[int, int]) -> frozenset[Purchase]:
    return frozenset(Purchase(t, l) for t, l in buys)


@dataclass(frozen=True)
class StrategyProfile:
    n: int
    strategies: tuple[frozenset[Purchase], ...]

    def __post_init__(self):
        strategies = tuple(frozenset(s) for s in self.strategies)
        object.__setattr__(self, "strategies", strategies)
        if self.n < 1 or len(strategies) != self.n:
            raise ValueError(f"need exactly n={self.n} strategies, got {len(strategies)}")
        for u, s in enumerate(strategies):
            for p in s:
                if not 0 <= p.target < self.n:
                    raise ValueError(f"agent {u} buys towards {p.target}, outside [0, {self.n})")
                if p.target == u:
                    raise ValueError(f"agent {u} buys an edge to itself")

    @classmethod
    def empty(cls, n: int) -> StrategyProfile:
        return cls(n, (frozenset(),) * n)

    @classmethod
    def from_buys(cls, n: int, buys: Mapping[int, Iterable[tuple[int, int]]]) -> StrategyProfile:
        """Build from ``{agent: [(target, label), ...]}``; missing agents buy nothing."""
        return cls(n, tuple(strategy(*buys.get(u, ())) for u in range(n)))

    def replace(self, u: int, new: Iterable[Purchase]) -> StrategyProfile:
        s = list(self.strategies)
        s[u] = frozenset(new)
        return StrategyProfile(self.n, tuple(s))

    def purchases(self) -> Iterable[tuple[int, Purchase]]:
        for u, s in enumerate(self.strategies):
            for p in sorted(s):
                yield u, p

    def permute(self, perm: tuple[int, ...]) -> StrategyProfile:
        """Relabel agent ``u`` as ``perm[u]``."""
        s: list[frozenset[Purchase]] = [frozenset()] * self.n
        for u, strat in enumerate(self.strategies):
            s[perm[u]] = frozenset(Purchase(perm[p.target], p.label) for p in strat)
        return StrategyProfile(self.n, tuple(s))

    @property
    def edge_purchases(self) -> int:
        return sum(len(s) for s in self.strategies)


@dataclass(frozen=True)
class KPolicy:
    """The large constant K used for unreachability and penalties.

    Defaults to ``(n + 1) ** 2``; a fixed override must still be at least
    ``n + 2`` so that one more reached vertex beats any edge/label saving.
    """

    fixed: Fraction | None = None

    def __call__(self, n: int) -> Fraction:
        k = Fraction(self.fixed) if self.fixed is not None else Fraction((n + 1) ** 2)
        if k < n + 2:
            raise ValueError(f"K={k} too small for n={n}; need K >= n + 2")
        return k


@dataclass(frozen=True)
class CostBreakdown:
    edge_count: int
    label_cost: Fraction
    penalty: Fraction
    unreached: int
    K: Fraction

    @property
    def total(self) -> Fraction:
        return self.edge_count + self.label_cost + self.penalty + self.K * self.unreached

    def to_dict(self) -> dict:
        return {
            "edge_count": self.edge_count,
            "label_cost": str(self.label_cost),
            "penalty": str(self.penalty),
            "unreached": self.unreached,
            "K": str(self.K),
            "total": str(self.total),
        }


def realized_labels(strategies: Iterable[tuple[int, Iterable[Purchase]]]) -> dict[Edge, int]:
    labels: dict[Edge, int] = {}
    for u, s in strategies:
        for p in s:
            key = edge_key(u, p.target)
            old = labels.get(key)
            if old is None or p.label < old:
                labels[key] = p.label
    return labels


def realize(profile: StrategyProfile) -> TemporalGraph:
    """Union of all purchases; a pair bought more than once keeps its minimum label."""
    return TemporalGraph(profile.n, realized_labels(enumerate(profile.strategies)))


def rank_cost(sorted_labels: list[int], label: int, kind: LabelCost, n: int) -> Fraction:
    m = len(sorted_labels)
    if kind is LabelCost.ZERO or m == 0:
        return Fraction(0)
    if kind is LabelCost.UP:
        count = m - bisect_right(sorted_labels, label)
    else:
        count = bisect_left(sorted_labels, label)
    return Fraction(count, m * n)


def edge_label_cost(variant: Variant, g: TemporalGraph, e: Edge) -> Fraction:
    label = g.label(*e)
    return rank_cost(sorted(g.edges.values()), label, variant.label_cost, g.n)


def penalty_positive(strat: Iterable[Purchase], K: Fraction) -> Fraction:
    return K * sum(1 for p in strat if p.label < 1)


def penalty_proper(profile: StrategyProfile, u: int, K: Fraction) -> Fraction:
    """K per triggered condition: ``u`` reuses a label, or ``u`` buys label ``l``
    towards an agent that itself buys some edge with label ``l``."""
    own = profile.strategies[u]
    labels = [p.label for p in own]
    reused = len(labels) != len(set(labels))
    echoed = any(any(q.label == p.label for q in profile.strategies[p.target]) for p in own)
    return K * (int(reused) + int(echoed))


def agent_cost(variant: Variant, profile: StrategyProfile, u: int, kp: KPolicy = KPolicy()) -> CostBreakdown:
    if not 0 <= u < profile.n:
        raise ValueError(f"agent {u} not in profile with n={profile.n}")
    K = kp(profile.n)
    g = realize(profile)
    own = profile.strategies[u]
    all_labels = sorted(g.edges.values())
    label_cost = sum(
        (rank_cost(all_labels, g.label(u, p.target), variant.label_cost, profile.n) for p in own),
        Fraction(0),
    )
    penalty = Fraction(0)
    if Penalty.POSITIVE in variant.penalties:
        penalty += penalty_positive(own, K)
    if Penalty.PROPER in variant.penalties:
        penalty += penalty_proper(profile, u, K)
    unreached = profile.n - len(reachable_set(g, u, variant.reach))
    return CostBreakdown(len(own), label_cost, penalty, unreached, K)


def social_cost(variant: Variant, profile: StrategyProfile, kp: KPolicy = KPolicy()) -> Fraction:
    return sum((agent_cost(variant, profile, u, kp).total for u in range(profile.n)), Fraction(0))


def random_profile(n: int, rng: random.Random, max_label: int = 3, p_buy: float = 0.4,
                   min_label: int = 1) -> StrategyProfile:
    """Each agent independently buys towards each other agent with probability ``p_buy``."""
    buys = {
        u: [(v, rng.randint(min_label, max_label)) for v in range(n) if v != u and rng.random() < p_buy]
        for u in range(n)
    }
    return StrategyProfile.from_buys(n, buys)
