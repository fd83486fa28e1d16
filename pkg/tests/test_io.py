import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tempo_ncg import io
from tempo_ncg.constructions import grid_ne
from tempo_ncg.game import StrategyProfile, Variant
from tempo_ncg.temporal_graph import TemporalGraph

VARIANTS = st.builds(
    lambda r, c, p: Variant.parse(",".join([r, c, *p])),
    st.sampled_from(["strict", "nonstrict"]), st.sampled_from(["zero", "up", "down"]),
    st.lists(st.sampled_from(["positive", "proper"]), unique=True),
)


@st.composite
def profiles(draw):
    n = draw(st.integers(1, 6))
    buys = {u: [(t, draw(st.integers(-3, 9)))
                for t in draw(st.lists(st.integers(0, n - 1).filter(lambda t, u=u: t != u), unique=True))]
            for u in range(n)}
    return StrategyProfile.from_buys(n, buys)


def test_graph_round_trip():
    g = TemporalGraph(3, [(2, 0, 4), (1, 2, -1)])
    d = io.graph_to_dict(g)
    assert d == {"n": 3, "edges": [{"u": 0, "v": 2, "label": 4}, {"u": 1, "v": 2, "label": -1}]}
    assert io.graph_from_dict(d) == g


@given(profiles(), st.one_of(st.none(), VARIANTS))
def test_profile_round_trip_is_byte_identical(profile, variant):
    text = io.dumps(io.profile_to_dict(profile, variant))
    parsed, v = io.profile_from_dict(io.load_json(text))
    assert (parsed, v) == (profile, variant)
    assert io.dumps(io.profile_to_dict(parsed, v)) == text


def test_key_order_does_not_matter():
    raw = '{"strategies": [{"buys": [{"label": 2, "to": 1}], "agent": 0}, {"agent": 1, "buys": []}], "n": 2}'
    profile, variant = io.profile_from_dict(io.load_json(raw))
    assert variant is None
    assert io.dumps(io.profile_to_dict(profile)) == io.dumps(json.loads(raw))


def test_missing_agents_buy_nothing():
    profile, _ = io.profile_from_dict({"n": 3, "strategies": [{"agent": 1, "buys": [{"to": 0, "label": 1}]}]})
    assert profile.strategies[0] == frozenset() and len(profile.strategies[1]) == 1


@pytest.mark.parametrize("text", ["{", "[1, 2]", '{"n": 2}x'])
def test_invalid_json(text):
    with pytest.raises(io.FormatError):
        io.load_json(text)


@pytest.mark.parametrize("data", [
    {"strategies": []},
    {"n": 2, "strategies": [{"agent": 0, "buys": [{"to": 0, "label": 1}]}]},
    {"n": 2, "strategies": [{"agent": 5, "buys": []}]},
    {"n": 2, "strategies": [{"agent": 0}, {"agent": 0}]},
    {"n": 2, "strategies": [{"agent": 0, "buys": [{"to": 1}]}]},
    {"n": 2, "variant": {"reach": "sideways"}},
])
def test_malformed_profiles(data):
    with pytest.raises(io.FormatError):
        io.profile_from_dict(data)


def test_rationals():
    assert io.rational(Fraction(6, 4)) == "3/2"
    assert io.rational(Fraction(3)) == "3"
    assert io.approx(Fraction(37, 24)) == "1.54167"


def test_dot():
    dot = io.to_dot(TemporalGraph(3, [(0, 1, 2)]))
    assert dot == 'graph G {\n  0;\n  1;\n  2;\n  0 -- 1 [label="2"];\n}\n'


def test_grid_profile_has_variant():
    d = io.profile_to_dict(grid_ne(3).profile, Variant.parse("nonstrict,up,positive"))
    assert d["variant"] == {"reach": "nonstrict", "labelcost": "up", "penalties": ["positive"]}
