"""JSON and DOT formats for graphs, profiles and reports.

Graph:   {"n": int, "edges": [{"u": int, "v": int, "label": int}]}, u < v
Profile: {"n": int, "variant": {...} (optional),
          "strategies": [{"agent": int, "buys": [{"to": int, "label": int}]}]}
Exact rationals are rendered as "p/q" strings ("3" when integral).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .game import LabelCost, Penalty, StrategyProfile, Variant, strategy
from .temporal_graph import ReachMode, TemporalGraph


class FormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True)


def graph_to_dict(g: TemporalGraph) -> dict:
    return {"n": g.n, "edges": [{"u": u, "v": v, "label": l} for u, v, l in g]}


def graph_from_dict(data: dict) -> TemporalGraph:
    try:
        return TemporalGraph(int(data["n"]), [(int(e["u"]), int(e["v"]), int(e["label"])) for e in data["edges"]])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed graph JSON: {exc!r}") from exc


def variant_to_dict(variant: Variant) -> dict:
    return {
        "reach": variant.reach.value,
        "labelcost": variant.label_cost.value,
        "penalties": sorted(p.value for p in variant.penalties),
    }


def variant_from_dict(data: dict) -> Variant:
    try:
        return Variant(
            ReachMode(data["reach"]),
            LabelCost(data.get("labelcost", "zero")),
            frozenset(Penalty(p) for p in data.get("penalties", [])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed variant JSON: {exc!r}") from exc


def profile_to_dict(profile: StrategyProfile, variant: Variant | None = None) -> dict:
    out: dict[str, Any] = {
        "n": profile.n,
        "strategies": [
            {"agent": u, "buys": [{"to": p.target, "label": p.label} for p in sorted(s)]}
            for u, s in enumerate(profile.strategies)
        ],
    }
    if variant is not None:
        out["variant"] = variant_to_dict(variant)
    return out


def profile_from_dict(data: dict) -> tuple[StrategyProfile, Variant | None]:
    """Parse a profile; agents missing from ``strategies`` buy nothing."""
    try:
        n = int(data["n"])
        buys: dict[int, list[tuple[int, int]]] = {}
        for entry in data.get("strategies", []):
            agent = int(entry["agent"])
            if agent in buys:
                raise FormatError(f"agent {agent} listed twice")
            buys[agent] = [(int(b["to"]), int(b["label"])) for b in entry.get("buys", [])]
        if any(not 0 <= a < n for a in buys):
            raise FormatError("agent index out of range")
        profile = StrategyProfile(n, tuple(strategy(*buys.get(u, ())) for u in range(n)))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed profile JSON: {exc!r}") from exc
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    variant = variant_from_dict(data["variant"]) if data.get("variant") else None
    return profile, variant


def load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    return data


def rational(x: Fraction) -> str:
    return str(Fraction(x))


def approx(x: Fraction) -> str:
    return f"{float(x):.6g}"


def to_dot(g: TemporalGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f'  {u} -- {v} [label="{l}"];' for u, v, l in g]
    lines.append("}")
    return "\n".join(lines) + "\n"
