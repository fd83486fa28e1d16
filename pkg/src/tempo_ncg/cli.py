"""Command-line front end.

Exit codes: 0 ok / NashCertified, 1 DeviationFound (verify-ne), 2 malformed
input, 3 guard or argument violation, 4 search budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import constructions, io
from .equilibrium import (
    BudgetExceeded, GuardError, OptimumMethod, SearchBounds, Verdict, best_response,
    best_response_dynamics, exhaustive_ne_scan, is_nash, price_ratio, social_optimum,
)
from .game import StrategyProfile, Variant, agent_cost, random_profile, realize, social_cost
from .temporal_graph import ReachMode, reachable_set

EXIT_OK, EXIT_DEVIATION, EXIT_FORMAT, EXIT_GUARD, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _read_text(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_profile(args) -> tuple[StrategyProfile, Variant | None]:
    return io.profile_from_dict(io.load_json(_read_text(args.profile)))


def _variant(args, embedded: Variant | None = None) -> Variant:
    if args.variant:
        try:
            return Variant.parse(args.variant)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if embedded is not None:
        return embedded
    raise UsageError("no variant given: pass --variant or embed one in the profile JSON")


def _bounds(args) -> SearchBounds:
    kwargs = {}
    if getattr(args, "max_edges", None) is not None:
        kwargs["max_edges"] = args.max_edges
    if getattr(args, "pad", None) is not None:
        kwargs["label_window_pad"] = args.pad
    return SearchBounds(**kwargs)


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _ratio_text(x: Fraction) -> str:
    return f"{io.rational(x)} ({io.approx(x)})"


def _build(name: str, args) -> constructions.ConstructionClaim:
    size = {"grid": "k", "hypercube": "d"}.get(name, "n")
    value = getattr(args, size)
    if value is None:
        raise UsageError(f"construction {name!r} needs --{size}")
    kwargs = {}
    if name in ("star", "clique") and args.label is not None:
        kwargs["label"] = args.label
    if name == "outer-ring" and args.spokes:
        kwargs["spokes"] = args.spokes
    if name == "hypercube" and args.owner:
        kwargs["owner"] = args.owner
    return constructions.GENERATORS[name](value, **kwargs)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(args) -> int:
    claim = _build(args.name, args)
    out = io.profile_to_dict(claim.profile, claim.claimed_variants[0])
    out["claim"] = claim.manifest()
    _emit(args, io.dumps(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    profile, embedded = _load_profile(args)
    report = is_nash(_variant(args, embedded), profile, _bounds(args))
    _emit(args, io.dumps(report.to_dict()))
    return {Verdict.NASH_CERTIFIED: EXIT_OK, Verdict.DEVIATION_FOUND: EXIT_DEVIATION,
            Verdict.BUDGET_EXCEEDED: EXIT_BUDGET}[report.verdict]


def cmd_cost(args) -> int:
    profile, embedded = _load_profile(args)
    variant = _variant(args, embedded)
    agents = [dict(agent=u, **agent_cost(variant, profile, u).to_dict()) for u in range(profile.n)]
    total = social_cost(variant, profile)
    _emit(args, io.dumps({"variant": str(variant), "agents": agents, "social_cost": io.rational(total)}))
    return EXIT_OK


def cmd_reach(args) -> int:
    data = io.load_json(_read_text(args.profile))
    embedded = None
    if "edges" in data:
        g = io.graph_from_dict(data)
    else:
        profile, embedded = io.profile_from_dict(data)
        g = realize(profile)
    mode = _variant(args, embedded).reach if (args.variant or embedded) else ReachMode.STRICT
    sources = range(g.n) if args.agent is None else [args.agent]
    reach = {str(v): sorted(reachable_set(g, v, mode)) for v in sources}
    _emit(args, io.dumps({"mode": mode.value, "reachable": reach}))
    return EXIT_OK


def cmd_best_response(args) -> int:
    profile, embedded = _load_profile(args)
    strat, cost = best_response(_variant(args, embedded), profile, args.agent, _bounds(args))
    _emit(args, io.dumps({
        "agent": args.agent,
        "buys": [{"to": p.target, "label": p.label} for p in sorted(strat)],
        "cost": cost.to_dict(),
        "changed": strat != profile.strategies[args.agent],
    }))
    return EXIT_OK


def cmd_dynamics(args) -> int:
    if args.random:
        if args.seed is None or args.n is None:
            raise UsageError("random starts need --n and --seed")
        variant = _variant(args)
        initial = random_profile(args.n, random.Random(args.seed), max_label=args.max_label)
    else:
        initial, embedded = _load_profile(args)
        variant = _variant(args, embedded)
    res = best_response_dynamics(variant, initial, args.max_rounds, _bounds(args))
    _emit(args, io.dumps({
        "status": res.status,
        "rounds": res.rounds,
        "period": res.period,
        "initial": io.profile_to_dict(initial),
        "profile": io.profile_to_dict(res.profile, variant),
    }))
    return EXIT_OK


def cmd_optimum(args) -> int:
    if args.n is None:
        raise UsageError("optimum needs --n")
    res = social_optimum(_variant(args), args.n, OptimumMethod(args.method))
    _emit(args, io.dumps(res.to_dict()))
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.n is None:
        raise UsageError("scan needs --n")
    variant = _variant(args)
    found = exhaustive_ne_scan(variant, args.n, _bounds(args))
    lines = [io.dumps({"social_cost": io.rational(social_cost(variant, p)), **io.profile_to_dict(p, variant)})
             for p in found]
    _emit(args, "\n".join(lines) if lines else "")
    return EXIT_OK


def cmd_ratio(args) -> int:
    profile, embedded = _load_profile(args)
    variant = _variant(args, embedded)
    if args.opt is not None:
        opt = Fraction(args.opt)
    else:
        opt = social_optimum(variant, profile.n, OptimumMethod(args.method)).value
    _emit(args, _ratio_text(price_ratio(variant, profile, opt)))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    data = io.load_json(_read_text(args.profile))
    g = io.graph_from_dict(data) if "edges" in data else realize(io.profile_from_dict(data)[0])
    _emit(args, io.to_dot(g))
    return EXIT_OK


SWEEP_FIELDS = ["construction", "param", "n", "variant", "social_cost", "optimum", "ratio", "ratio_approx", "verdict"]


def sweep_rows(names: Sequence[str], sizes: Sequence[int], verify: bool, method: str = "formula"):
    """One row per (construction, size, claimed variant) with its ratio to the optimum."""
    for name in names:
        for size in sizes:
            try:
                claim = constructions.GENERATORS[name](size)
            except ValueError:
                continue
            for variant in claim.claimed_variants:
                cost = social_cost(variant, claim.profile)
                try:
                    opt = social_optimum(variant, claim.profile.n, OptimumMethod(method)).value
                except (ValueError, GuardError):
                    opt = None
                ratio = price_ratio(variant, claim.profile, opt) if opt else None
                verdict = is_nash(variant, claim.profile).verdict.value if verify else ""
                yield {
                    "construction": name, "param": size, "n": claim.profile.n, "variant": str(variant),
                    "social_cost": io.rational(cost), "optimum": "" if opt is None else io.rational(opt),
                    "ratio": "" if ratio is None else io.rational(ratio),
                    "ratio_approx": "" if ratio is None else io.approx(ratio), "verdict": verdict,
                }


def cmd_sweep(args) -> int:
    names = args.constructions.split(",") if args.constructions else list(constructions.GENERATORS)
    unknown = [n for n in names if n not in constructions.GENERATORS]
    if unknown:
        raise UsageError(f"unknown constructions: {', '.join(unknown)}")
    lo, _, hi = args.sizes.partition("-")
    sizes = range(int(lo), int(hi or lo) + 1)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=SWEEP_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in sweep_rows(names, sizes, args.verify, args.method):
            writer.writerow(row)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tempo-ncg", description="Temporal network creation games.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, *, profile=False, variant=False, search=False):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        if profile:
            p.add_argument("--profile", help="JSON input file (default: stdin)")
        if variant:
            p.add_argument("--variant", help="reach,labelcost[,penalties], e.g. strict,zero,positive")
        if search:
            p.add_argument("--max-edges", type=int, help="deviation size cap")
            p.add_argument("--pad", type=int, help="label window padding")
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("construct", cmd_construct, "generate an equilibrium construction")
    p.add_argument("name", choices=sorted(constructions.GENERATORS))
    for flag in ("--n", "--k", "--d", "--label"):
        p.add_argument(flag, type=int)
    p.add_argument("--spokes", choices=["flat", "staggered"])
    p.add_argument("--owner", choices=["even", "bit0"])

    add("verify-ne", cmd_verify, "check a profile for improving deviations", profile=True, variant=True, search=True)
    add("cost", cmd_cost, "per-agent cost breakdowns", profile=True, variant=True)
    p = add("reach", cmd_reach, "reachable sets of a profile or graph", profile=True, variant=True)
    p.add_argument("--agent", type=int)
    p = add("best-response", cmd_best_response, "best response of one agent", profile=True, variant=True, search=True)
    p.add_argument("--agent", type=int, required=True)

    p = add("dynamics", cmd_dynamics, "round-robin best-response dynamics", profile=True, variant=True, search=True)
    p.add_argument("--random", action="store_true", help="start from a seeded random profile")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-label", type=int, default=3)
    p.add_argument("--max-rounds", type=int, default=50)

    p = add("optimum", cmd_optimum, "social optimum", variant=True)
    p.add_argument("--n", type=int)
    p.add_argument("--method", choices=[m.value for m in OptimumMethod], default="brute")

    p = add("scan", cmd_scan, "all equilibria at tiny n, as JSON lines", variant=True, search=True)
    p.add_argument("--n", type=int)

    p = add("ratio", cmd_ratio, "social cost over optimum", profile=True, variant=True)
    p.add_argument("--opt", help="optimum value (exact rational); otherwise computed")
    p.add_argument("--method", choices=[m.value for m in OptimumMethod], default="formula")

    add("export-dot", cmd_export_dot, "Graphviz DOT of a profile or graph", profile=True)

    p = add("sweep", cmd_sweep, "CSV table of construction ratios")
    p.add_argument("--constructions", help="comma-separated names (default: all)")
    p.add_argument("--sizes", default="3-6", help="size parameter range, e.g. 3-6")
    p.add_argument("--method", choices=[m.value for m in OptimumMethod], default="formula")
    p.add_argument("--verify", action="store_true", help="also run the equilibrium check")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (io.FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GuardError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
