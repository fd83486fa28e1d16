"""Temporal graphs: one integer time label per undirected edge.

Reachability is computed with a foremost-arrival sweep over label groups in
ascending order. In strict mode an edge of label ``L`` may only be used from a
vertex reached strictly before ``L``; in non-strict mode equal labels chain, so
each label group is closed transitively.
"""
from __future__ import annotations

import enum
from functools import cached_property
from itertools import groupby
from operator import itemgetter
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class ReachMode(enum.Enum):
    NONSTRICT = "nonstrict"
    STRICT = "strict"

    @property
    def strict(self) -> bool:
        return self is ReachMode.STRICT


def edge_key(u: int, v: int) -> Edge:
    """Normalize an undirected vertex pair to ``(min, max)``."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class TemporalGraph:
    """Immutable undirected graph on vertices ``0..n-1`` with one label per edge.

    ``edges`` may be a mapping ``{(u, v): label}`` or an iterable of
    ``(u, v, label)`` triples. Pairs are normalized so that ``u < v``.
    """

    def __init__(self, n: int, edges: Mapping[Edge, int] | Iterable[tuple[int, int, int]] = ()):
        if n < 1:
            raise ValueError(f"a temporal graph needs at least one vertex, got n={n}")
        items = edges.items() if isinstance(edges, Mapping) else (((u, v), l) for u, v, l in edges)
        normalized: dict[Edge, int] = {}
        for (u, v), label in items:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            key = edge_key(u, v)
            if key in normalized:
                raise ValueError(f"duplicate edge {key}")
            normalized[key] = int(label)
        self.n = n
        self._edges = normalized

    @property
    def edges(self) -> Mapping[Edge, int]:
        return dict(self._edges)

    def label(self, u: int, v: int) -> int:
        return self._edges[edge_key(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge_key(u, v) in self._edges

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), label in sorted(self._edges.items()):
            yield u, v, label

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TemporalGraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._edges.items())))

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, edges={dict(sorted(self._edges.items()))})"

    @cached_property
    def groups(self) -> tuple[tuple[int, tuple[Edge, ...]], ...]:
        """Edges bucketed by label, ascending."""
        return label_groups(self._edges)

    def incident(self, v: int) -> list[tuple[int, int]]:
        """``(neighbour, label)`` pairs for edges at ``v``."""
        return sorted((b if a == v else a, l) for (a, b), l in self._edges.items() if v in (a, b))

    def without_vertex_edges(self, v: int) -> TemporalGraph:
        return TemporalGraph(self.n, {e: l for e, l in self._edges.items() if v not in e})

    def subgraph(self, keep: Iterable[Edge]) -> TemporalGraph:
        return TemporalGraph(self.n, {edge_key(*e): self.label(*e) for e in keep})

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise ValueError(f"vertex {v!r} not in graph with n={self.n}")


def label_groups(edges: Mapping[Edge, int]) -> tuple[tuple[int, tuple[Edge, ...]], ...]:
    ordered = sorted(edges.items(), key=itemgetter(1))
    return tuple((label, tuple(e for e, _ in grp)) for label, grp in groupby(ordered, key=itemgetter(1)))


def sweep_mask(groups: Iterable[tuple[int, Sequence[Edge]]], source: int, strict: bool) -> int:
    """Bitmask of vertices reachable from ``source`` over the given label groups."""
    reached = 1 << source
    for _, group in groups:
        if strict:
            add = 0
            for a, b in group:
                if reached >> a & 1:
                    add |= 1 << b
                if reached >> b & 1:
                    add |= 1 << a
            reached |= add
        else:
            changed = True
            while changed:
                changed = False
                for a, b in group:
                    if (reached >> a & 1) != (reached >> b & 1):
                        reached |= (1 << a) | (1 << b)
                        changed = True
    return reached


def all_reach_masks(n: int, groups: Iterable[tuple[int, Sequence[Edge]]], strict: bool) -> list[int]:
    """For every vertex, the bitmask of sources that can reach it."""
    reach = [1 << v for v in range(n)]
    for _, group in groups:
        if strict:
            new = reach[:]
            for a, b in group:
                new[b] |= reach[a]
                new[a] |= reach[b]
            reach = new
        else:
            # Equal labels chain freely: every vertex of a connected component
            # of the group learns the union of the component's sources.
            parent = {}

            def find(x):
                while parent.setdefault(x, x) != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in group:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
            union: dict[int, int] = {}
            for x in parent:
                r = find(x)
                union[r] = union.get(r, 0) | reach[x]
            for x in parent:
                reach[x] = union[find(x)]
    return reach


def _foremost(g: TemporalGraph, v: int, strict: bool, t_min: int | None = None):
    """Earliest arrival label and parent edge of every vertex reachable from ``v``.

    Parents are chosen by lowest arrival label, then lowest parent index.
    """
    arrival: dict[int, int | None] = {v: None}
    parent: dict[int, int] = {}
    for label, group in g.groups:
        if t_min is not None and label < t_min:
            continue
        if strict:
            known = set(arrival)
            found: dict[int, int] = {}
            for a, b in group:
                for x, y in ((a, b), (b, a)):
                    if x in known and y not in arrival:
                        found[y] = min(found.get(y, x), x)
            for y, x in found.items():
                arrival[y] = label
                parent[y] = x
        else:
            while True:
                found = {}
                for a, b in group:
                    for x, y in ((a, b), (b, a)):
                        if x in arrival and y not in arrival:
                            found[y] = min(found.get(y, x), x)
                if not found:
                    break
                for y, x in found.items():
                    arrival[y] = label
                    parent[y] = x
    return arrival, parent


def reachable_set(g: TemporalGraph, v: int, mode: ReachMode) -> frozenset[int]:
    g._check_vertex(v)
    arrival, _ = _foremost(g, v, mode.strict)
    return frozenset(arrival)


def reachable_from_time(g: TemporalGraph, v: int, t: int, mode: ReachMode) -> frozenset[int]:
    """Vertices reachable from ``v`` by temporal paths whose first label is at least ``t``."""
    g._check_vertex(v)
    arrival, _ = _foremost(g, v, mode.strict, t_min=t)
    return frozenset(arrival)


def is_temporally_connected(g: TemporalGraph, mode: ReachMode) -> bool:
    full = (1 << g.n) - 1
    return all(m == full for m in all_reach_masks(g.n, g.groups, mode.strict))


def reachability_tree(g: TemporalGraph, v: int, mode: ReachMode) -> TemporalGraph:
    """Tree subgraph of ``g`` that preserves the reachable set of ``v`` exactly."""
    g._check_vertex(v)
    _, parent = _foremost(g, v, mode.strict)
    return g.subgraph((child, par) for child, par in parent.items())


def is_temporal_path(g: TemporalGraph, path: Sequence[Edge], mode: ReachMode) -> bool:
    """True if ``path`` is a walk of edges of ``g`` with monotone labels."""
    if not path:
        return True
    if not all(g.has_edge(a, b) for a, b in path):
        return False
    # The walk may start at either end of the first edge.
    for start in path[0]:
        here, last, ok = start, None, True
        for a, b in path:
            if here not in (a, b):
                ok = False
                break
            label = g.label(a, b)
            if last is not None and (label <= last if mode.strict else label < last):
                ok = False
                break
            here, last = (b if here == a else a), label
        if ok:
            return True
    return False


def lifetime(g: TemporalGraph) -> int:
    if not g._edges:
        raise ValueError("lifetime is undefined for an edgeless graph")
    return max(g._edges.values())


def is_proper(g: TemporalGraph) -> bool:
    seen: set[tuple[int, int]] = set()
    for (a, b), label in g._edges.items():
        for x in (a, b):
            if (x, label) in seen:
                return False
            seen.add((x, label))
    return True


def reach_count_via_first_edge(g: TemporalGraph, v: int, e: Edge) -> int:
    """Number of vertices ``v`` reaches by strict simple paths that start with ``e``.

    A simple path never returns to ``v``, so this is the strict reach of the
    far endpoint in ``g`` minus ``v``'s edges, starting after ``e``'s label.
    """
    g._check_vertex(v)
    a, b = edge_key(*e)
    if v not in (a, b):
        raise ValueError(f"edge {e} is not incident to vertex {v}")
    if not g.has_edge(a, b):
        raise ValueError(f"edge {e} is not in the graph")
    far = b if v == a else a
    rest = g.without_vertex_edges(v)
    return len(reachable_from_time(rest, far, g.label(a, b) + 1, ReachMode.STRICT))
