"""Bounded-exhaustive best responses, Nash verification, dynamics and optima.

Search space for agent ``u``: at most one purchase per target, at most
``edge_cap`` purchases, labels drawn from ``candidate_labels``. The window is
the range of labels bought by the other agents, padded on both sides by the
cap. Any deviation can be remapped order-preservingly into that window without
changing reachability, penalties or rank-based label costs, so the window loses
nothing.

The default cap is ``max(|S_u|, 1)`` for an agent that reaches everyone without
a penalty: any strategy with more purchases already costs at least
``|S_u| + 1``, which exceeds the incumbent because total label cost stays below
one. An agent that misses someone or pays a penalty gets the full cap ``n - 1``
so that buying a direct edge to everybody (cost below ``n < K``) is always in
the search space.
"""
from __future__ import annotations

import enum
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .game import (
    KPolicy,
    LabelCost,
    Penalty,
    Purchase,
    StrategyProfile,
    Variant,
    CostBreakdown,
    rank_cost,
    realized_labels,
    social_cost,
)
from .temporal_graph import Edge, ReachMode, all_reach_masks, edge_key, label_groups, sweep_mask

log = logging.getLogger(__name__)

HARD_LIMIT_ENV = "TEMPO_NCG_HARD_LIMIT"
BRUTE_FORCE_MAX_N = 5
SCAN_MAX_N = 4


class BudgetExceeded(RuntimeError):
    def __init__(self, enumerated: int, limit: int, agent: int | None = None):
        self.enumerated, self.limit, self.agent = enumerated, limit, agent
        who = "" if agent is None else f" for agent {agent}"
        super().__init__(f"enumerated more than {limit} candidates{who}")


class GuardError(ValueError):
    """Raised when an exhaustive routine is asked for a size it refuses to truncate."""


def _default_hard_limit() -> int:
    return int(os.environ.get(HARD_LIMIT_ENV, 2_000_000))


@dataclass(frozen=True)
class SearchBounds:
    max_edges: int | None = None  # None: per-agent default, see module docstring
    label_window_pad: int | None = None  # None: same as the agent's edge cap
    hard_node_limit: int = field(default_factory=_default_hard_limit)

    def __post_init__(self):
        if self.max_edges is not None and self.max_edges < 1:
            raise ValueError("max_edges must be at least 1")
        if self.max_edges is not None and self.label_window_pad is not None \
                and self.label_window_pad < self.max_edges:
            raise ValueError("label_window_pad must be at least max_edges")
        if self.hard_node_limit < 1:
            raise ValueError("hard_node_limit must be positive")

    def to_dict(self) -> dict:
        return {"max_edges": self.max_edges, "label_window_pad": self.label_window_pad,
                "hard_node_limit": self.hard_node_limit}


class Verdict(enum.Enum):
    NASH_CERTIFIED = "NashCertified"
    DEVIATION_FOUND = "DeviationFound"
    BUDGET_EXCEEDED = "BudgetExceeded"


@dataclass(frozen=True)
class Deviation:
    agent: int
    strategy: frozenset[Purchase]
    old_cost: Fraction
    new_cost: Fraction

    def to_dict(self) -> dict:
        return {
            "agent": self.agent,
            "buys": [{"to": p.target, "label": p.label} for p in sorted(self.strategy)],
            "old_cost": str(self.old_cost),
            "new_cost": str(self.new_cost),
        }


@dataclass(frozen=True)
class EquilibriumReport:
    verdict: Verdict
    witness: Deviation | None
    bounds_used: SearchBounds

    def __post_init__(self):
        if self.verdict is Verdict.DEVIATION_FOUND:
            assert self.witness is not None and self.witness.new_cost < self.witness.old_cost

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.NASH_CERTIFIED

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "bounds": self.bounds_used.to_dict(),
        }


class _Evaluator:
    """Cost of agent ``u`` under replacement strategies, everyone else fixed."""

    def __init__(self, variant: Variant, profile: StrategyProfile, u: int, kp: KPolicy):
        self.variant, self.profile, self.u = variant, profile, u
        self.n = profile.n
        self.K = kp(profile.n)
        others = [(v, s) for v, s in enumerate(profile.strategies) if v != u]
        self.rest = realized_labels(others)
        self.other_labels = sorted({p.label for _, s in others for p in s})
        self.bought_labels = [frozenset(p.label for p in s) for s in profile.strategies]
        self.positive = Penalty.POSITIVE in variant.penalties
        self.proper = Penalty.PROPER in variant.penalties
        self.strict = variant.strict
        self.label_kind = variant.label_cost

    def components(self, pairs: Sequence[tuple[int, int]]) -> tuple[int, Fraction, int, int]:
        """(edge count, label cost, penalty count, unreached) for purchases ``pairs``."""
        u = self.u
        labels = dict(self.rest)
        for t, l in pairs:
            key = (u, t) if u < t else (t, u)
            old = labels.get(key)
            if old is None or l < old:
                labels[key] = l
        unreached = self.n - bin(sweep_mask(label_groups(labels), u, self.strict)).count("1")
        penalties = 0
        if self.positive:
            penalties += sum(1 for _, l in pairs if l < 1)
        if self.proper:
            own = [l for _, l in pairs]
            penalties += len(own) != len(set(own))
            penalties += any(l in self.bought_labels[t] for t, l in pairs)
        label_cost = Fraction(0)
        if self.label_kind is not LabelCost.ZERO and pairs:
            ordered = sorted(labels.values())
            label_cost = sum(
                (rank_cost(ordered, labels[(u, t) if u < t else (t, u)], self.label_kind, self.n)
                 for t, _ in pairs),
                Fraction(0),
            )
        return len(pairs), label_cost, penalties, unreached

    def cost(self, pairs: Sequence[tuple[int, int]]) -> Fraction:
        edges, label_cost, penalties, unreached = self.components(pairs)
        return edges + label_cost + self.K * (penalties + unreached)

    def breakdown(self, pairs: Sequence[tuple[int, int]]) -> CostBreakdown:
        edges, label_cost, penalties, unreached = self.components(pairs)
        return CostBreakdown(edges, label_cost, self.K * penalties, unreached, self.K)


def _pairs(strat: Iterable[Purchase]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((p.target, p.label) for p in strat))


def _to_strategy(pairs: Iterable[tuple[int, int]]) -> frozenset[Purchase]:
    return frozenset(Purchase(t, l) for t, l in pairs)


def _edge_cap(ev: _Evaluator, bounds: SearchBounds) -> int:
    if bounds.max_edges is not None:
        return bounds.max_edges
    incumbent = ev.profile.strategies[ev.u]
    _, _, penalties, unreached = ev.components(_pairs(incumbent))
    if penalties or unreached:
        return max(ev.n - 1, 1)
    return max(len(incumbent), 1)


def edge_cap(variant: Variant, profile: StrategyProfile, u: int,
             bounds: SearchBounds = SearchBounds(), kp: KPolicy = KPolicy()) -> int:
    """Maximum deviation size searched for agent ``u``."""
    return _edge_cap(_Evaluator(variant, profile, u, kp), bounds)


def _window(other_labels: list[int], pad: int, positive: bool) -> list[int]:
    lo, hi = (other_labels[0], other_labels[-1]) if other_labels else (1, 1)
    lo -= pad
    if positive:
        # Keep ``pad`` free slots above everything else even when all other
        # labels are penalized, so distinct unpenalized labels always exist.
        lo, hi = max(lo, 1), max(hi, 0)
    return list(range(lo, hi + pad + 1))


def candidate_labels(profile: StrategyProfile, u: int, bounds: SearchBounds, variant: Variant,
                     kp: KPolicy = KPolicy()) -> list[int]:
    """Labels searched for agent ``u``: others' label range padded, positive if penalized."""
    ev = _Evaluator(variant, profile, u, kp)
    pad = bounds.label_window_pad if bounds.label_window_pad is not None else _edge_cap(ev, bounds)
    return _window(ev.other_labels, pad, ev.positive)


def _search(ev: _Evaluator, bounds: SearchBounds, first_improvement: bool):
    """Minimize ``ev``'s cost over the bounded space.

    Returns ``(best_pairs, best_cost, incumbent_cost)``; ``best_pairs`` is None
    when nothing strictly beats the incumbent.
    """
    cap = _edge_cap(ev, bounds)
    pad = bounds.label_window_pad if bounds.label_window_pad is not None else cap
    window = _window(ev.other_labels, pad, ev.positive)
    incumbent = _pairs(ev.profile.strategies[ev.u])
    inc_cost = ev.cost(incumbent)
    best, best_cost = None, inc_cost

    if first_improvement:
        # Dropping a single purchase is the most common improvement; try it first.
        for i in range(len(incumbent)):
            cand = incumbent[:i] + incumbent[i + 1:]
            c = ev.cost(cand)
            if c < inc_cost:
                return cand, c, inc_cost

    targets = [w for w in range(ev.n) if w != ev.u]
    count = 0
    for k in range(min(cap, len(targets)) + 1):
        if k >= best_cost:
            break  # every k-purchase strategy costs at least k
        for chosen in combinations(targets, k):
            for labels in product(window, repeat=k):
                count += 1
                if count > bounds.hard_node_limit:
                    raise BudgetExceeded(count, bounds.hard_node_limit, ev.u)
                cand = tuple(zip(chosen, labels))
                c = ev.cost(cand)
                if c < best_cost or (c == best_cost and best is not None
                                     and len(cand) == len(best) and cand < best):
                    if cand == incumbent:
                        continue
                    best, best_cost = cand, c
                    if first_improvement:
                        return best, best_cost, inc_cost
    return best, best_cost, inc_cost


def best_response(variant: Variant, profile: StrategyProfile, u: int,
                  bounds: SearchBounds = SearchBounds(), kp: KPolicy = KPolicy()
                  ) -> tuple[frozenset[Purchase], CostBreakdown]:
    """Cost-minimizing strategy for ``u`` within ``bounds``.

    Ties go to the current strategy, then to fewer purchases, then to the
    lexicographically smallest sorted purchase list. Raises BudgetExceeded.
    """
    if not 0 <= u < profile.n:
        raise ValueError(f"agent {u} not in profile with n={profile.n}")
    ev = _Evaluator(variant, profile, u, kp)
    best, _, _ = _search(ev, bounds, first_improvement=False)
    if best is None:
        current = profile.strategies[u]
        return current, ev.breakdown(_pairs(current))
    return _to_strategy(best), ev.breakdown(best)


def find_deviation(variant: Variant, profile: StrategyProfile, u: int,
                   bounds: SearchBounds = SearchBounds(), kp: KPolicy = KPolicy()) -> Deviation | None:
    """Some strictly improving deviation of ``u`` within bounds, or None."""
    ev = _Evaluator(variant, profile, u, kp)
    best, best_cost, inc_cost = _search(ev, bounds, first_improvement=True)
    if best is None:
        return None
    return Deviation(u, _to_strategy(best), inc_cost, best_cost)


def is_nash(variant: Variant, profile: StrategyProfile, bounds: SearchBounds = SearchBounds(),
            kp: KPolicy = KPolicy()) -> EquilibriumReport:
    if bounds.max_edges is not None:
        largest = max((len(s) for s in profile.strategies), default=0)
        if bounds.max_edges < largest:
            raise ValueError(f"max_edges={bounds.max_edges} is below an incumbent strategy of size {largest}")
    budget_hit = False
    for u in range(profile.n):
        try:
            dev = find_deviation(variant, profile, u, bounds, kp)
        except BudgetExceeded as exc:
            log.info("agent %d: %s", u, exc)
            budget_hit = True
            continue
        if dev is not None:
            return EquilibriumReport(Verdict.DEVIATION_FOUND, dev, bounds)
    verdict = Verdict.BUDGET_EXCEEDED if budget_hit else Verdict.NASH_CERTIFIED
    return EquilibriumReport(verdict, None, bounds)


# ---------------------------------------------------------------------------
# best-response dynamics


@dataclass(frozen=True)
class DynamicsResult:
    status: str  # "converged" | "cycle" | "budget"
    profile: StrategyProfile
    rounds: int
    period: int | None = None

    @property
    def converged(self) -> bool:
        return self.status == "converged"


def best_response_dynamics(variant: Variant, initial: StrategyProfile, max_rounds: int = 50,
                           bounds: SearchBounds = SearchBounds(), kp: KPolicy = KPolicy(),
                           schedule: Sequence[int] | None = None) -> DynamicsResult:
    """Round-robin best responses until a round changes nothing.

    Profiles seen at round starts are remembered; a repeat means the
    deterministic dynamics cycle.
    """
    order = list(range(initial.n)) if schedule is None else list(schedule)
    profile = initial
    seen = {profile: 0}
    for rnd in range(1, max_rounds + 1):
        changed = False
        for u in order:
            try:
                strat, _ = best_response(variant, profile, u, bounds, kp)
            except BudgetExceeded:
                return DynamicsResult("budget", profile, rnd)
            if strat != profile.strategies[u]:
                profile = profile.replace(u, strat)
                changed = True
        if not changed:
            return DynamicsResult("converged", profile, rnd)
        if profile in seen:
            return DynamicsResult("cycle", profile, rnd, period=rnd - seen[profile])
        seen[profile] = rnd
    return DynamicsResult("budget", profile, max_rounds)


# ---------------------------------------------------------------------------
# social optimum and ratios


class OptimumMethod(enum.Enum):
    BRUTE_FORCE = "brute"
    FORMULA = "formula"


@dataclass(frozen=True)
class OptimumResult:
    value: Fraction
    witness: StrategyProfile | None
    method: OptimumMethod

    def to_dict(self) -> dict:
        from .io import profile_to_dict

        return {
            "value": str(self.value),
            "method": self.method.value,
            "witness": None if self.witness is None else profile_to_dict(self.witness),
        }


_SURJECTIONS: dict[int, list[tuple[int, ...]]] = {}


def dense_labelings(m: int) -> list[tuple[int, ...]]:
    """All labelings of ``m`` edges whose label set is exactly ``{1..k}`` for some k."""
    if m not in _SURJECTIONS:
        out = []
        for labels in product(range(1, m + 1), repeat=m):
            if set(labels) == set(range(1, max(labels, default=0) + 1)):
                out.append(labels)
        _SURJECTIONS[m] = out
    return _SURJECTIONS[m]


def _connected(n: int, edges: dict[Edge, int], strict: bool) -> bool:
    full = (1 << n) - 1
    return all(m == full for m in all_reach_masks(n, label_groups(edges), strict))


def _orientations(n: int, edges: dict[Edge, int], all_of_them: bool):
    items = sorted(edges.items())
    choices = product((0, 1), repeat=len(items)) if all_of_them else [(0,) * len(items)]
    for bits in choices:
        buys: dict[int, list[tuple[int, int]]] = {}
        for ((a, b), label), bit in zip(items, bits):
            buyer, target = (a, b) if bit == 0 else (b, a)
            buys.setdefault(buyer, []).append((target, label))
        yield StrategyProfile.from_buys(n, buys)


def _covers_all(n: int, subset: Sequence[Edge]) -> bool:
    seen = 0
    for a, b in subset:
        seen |= (1 << a) | (1 << b)
    return seen == (1 << n) - 1


def social_optimum(variant: Variant, n: int, method: OptimumMethod | str = OptimumMethod.BRUTE_FORCE,
                   kp: KPolicy = KPolicy()) -> OptimumResult:
    method = OptimumMethod(method)
    if n < 1:
        raise ValueError("n must be positive")
    if method is OptimumMethod.FORMULA:
        return OptimumResult(Fraction(_formula_optimum(variant, n)), None, method)
    if n > BRUTE_FORCE_MAX_N:
        raise GuardError(f"brute-force optimum refuses n={n} > {BRUTE_FORCE_MAX_N}")
    return _brute_force_optimum(variant, n, kp)


def _formula_optimum(variant: Variant, n: int) -> int:
    if Penalty.PROPER in variant.penalties and not variant.strict:
        raise ValueError("no closed-form optimum for non-strict reachability with proper purchases")
    if not variant.strict:
        return n - 1  # an equal-label spanning tree; its label cost is zero
    if variant.label_cost is not LabelCost.ZERO:
        raise ValueError("no closed-form optimum for strict reachability with a label cost")
    return {1: 0, 2: 1, 3: 3}.get(n, 2 * n - 4)


def _brute_force_optimum(variant: Variant, n: int, kp: KPolicy) -> OptimumResult:
    # Only temporally connected graphs matter: any profile leaving someone
    # unreached pays K >= (n+1)^2, more than the full clique. Duplicate
    # purchases never help, and dense labels 1..k cover every label order.
    # Orientation only changes the cost through proper-purchase penalties.
    pairs = list(combinations(range(n), 2))
    orient_all = Penalty.PROPER in variant.penalties
    best: tuple[Fraction, StrategyProfile] | None = None
    if n == 1:
        return OptimumResult(Fraction(0), StrategyProfile.empty(1), OptimumMethod.BRUTE_FORCE)
    for m in range(len(pairs) + 1):
        if best is not None and m >= best[0]:
            break
        for subset in combinations(pairs, m):
            if not _covers_all(n, subset):
                continue
            for labels in dense_labelings(m):
                edges = dict(zip(subset, labels))
                if not _connected(n, edges, variant.strict):
                    continue
                for profile in _orientations(n, edges, orient_all):
                    c = social_cost(variant, profile, kp)
                    if best is None or c < best[0]:
                        best = (c, profile)
                if best is not None and best[0] == m:
                    return OptimumResult(best[0], best[1], OptimumMethod.BRUTE_FORCE)
    assert best is not None
    return OptimumResult(best[0], best[1], OptimumMethod.BRUTE_FORCE)


def price_ratio(variant: Variant, profile: StrategyProfile, opt: OptimumResult | Fraction | int,
                kp: KPolicy = KPolicy()) -> Fraction:
    value = opt.value if isinstance(opt, OptimumResult) else Fraction(opt)
    if value <= 0:
        raise ValueError("ratio against a non-positive optimum is undefined")
    return social_cost(variant, profile, kp) / value


# ---------------------------------------------------------------------------
# exhaustive scans


def _canonical_key(edges: dict[Edge, int], perm: Sequence[int]) -> tuple:
    return tuple(sorted((edge_key(perm[a], perm[b]), l) for (a, b), l in edges.items()))


def profile_sort_key(profile: StrategyProfile) -> tuple:
    return tuple(_pairs(s) for s in profile.strategies)


def exhaustive_ne_scan(variant: Variant, n: int, bounds: SearchBounds = SearchBounds(),
                       kp: KPolicy = KPolicy()) -> list[StrategyProfile]:
    """Every canonical profile on ``n`` agents that ``is_nash`` certifies.

    Canonical: each pair bought by at most one endpoint, labels dense in 1..k.
    A doubly bought edge is never stable (the higher-label buyer drops its copy
    for free), and shifting labels order-preservingly changes nothing. Graphs
    that are not temporally connected are skipped, as some agent could then
    buy direct edges to everyone it misses. Labeled graphs are enumerated up
    to vertex relabeling and certified profiles are expanded back over all
    relabelings.
    """
    if not 1 <= n <= SCAN_MAX_N:
        raise GuardError(f"exhaustive scan refuses n={n}; supported 1..{SCAN_MAX_N}")
    perms = list(permutations(range(n)))
    pairs = list(combinations(range(n), 2))
    found: set[StrategyProfile] = set()
    for m in range(len(pairs) + 1):
        for subset in combinations(pairs, m):
            if n > 1 and not _covers_all(n, subset):
                continue
            for labels in dense_labelings(m):
                edges = dict(zip(subset, labels))
                own = tuple(sorted(edges.items()))
                if any(_canonical_key(edges, p) < own for p in perms):
                    continue
                if not _connected(n, edges, variant.strict):
                    continue
                for profile in _orientations(n, edges, all_of_them=True):
                    report = is_nash(variant, profile, bounds, kp)
                    if report.verdict is Verdict.BUDGET_EXCEEDED:
                        raise BudgetExceeded(bounds.hard_node_limit + 1, bounds.hard_node_limit)
                    if report.certified:
                        found.update(profile.permute(p) for p in perms)
    return sorted(found, key=profile_sort_key)
