from collections import Counter
from fractions import Fraction

import pytest

from tempo_ncg.constructions import (
    GENERATORS, arbitrary_low_ne, clique_ne, grid_ne, hypercube_ne, outer_ring_ne, star_tree,
)
from tempo_ncg.equilibrium import Verdict, is_nash
from tempo_ncg.game import LabelCost, Penalty, Purchase, Variant, agent_cost, realize, social_cost
from tempo_ncg.temporal_graph import ReachMode, is_proper, is_temporally_connected, lifetime


def _check_claim(claim):
    g = realize(claim.profile)
    for variant in claim.claimed_variants:
        assert is_temporally_connected(g, variant.reach)
        if variant.label_cost is LabelCost.ZERO:
            assert social_cost(variant, claim.profile) == claim.expected_social_cost
    assert len(g) == claim.expected_social_cost


SMALL_CLAIMS = [star_tree(1), star_tree(5), star_tree(4, 3), grid_ne(3), grid_ne(4), outer_ring_ne(4),
                outer_ring_ne(7), clique_ne(2), clique_ne(5, 2), hypercube_ne(1), hypercube_ne(3),
                hypercube_ne(4), *(arbitrary_low_ne(n) for n in range(1, 7))]


@pytest.mark.parametrize("claim", SMALL_CLAIMS, ids=lambda c: f"{c.name}-{c.profile.n}")
def test_claims_are_connected_with_expected_cost(claim):
    _check_claim(claim)


class TestStar:
    def test_five(self):
        c = star_tree(5)
        assert c.profile.edge_purchases == 4 and c.expected_social_cost == 4

    def test_single_vertex(self):
        assert star_tree(1).profile.edge_purchases == 0

    def test_label_three_down(self):
        c = star_tree(4, 3)
        assert sorted(l for *_, l in realize(c.profile)) == [3, 3, 3]
        down = Variant.parse("nonstrict,down,positive")
        assert down in c.claimed_variants
        assert is_nash(down, c.profile).certified

    def test_low_label_drops_positivity(self):
        assert all(not v.penalties for v in star_tree(4, 0).claimed_variants)

    @pytest.mark.parametrize("variant", star_tree(5).claimed_variants, ids=str)
    def test_certified(self, variant):
        assert is_nash(variant, star_tree(5).profile).certified


class TestGrid:
    def test_k3_label_counts(self):
        labels = Counter(l for *_, l in realize(grid_ne(3).profile))
        assert labels == {1: 6, 2: 6}

    def test_k4_size_and_connectivity(self):
        g = realize(grid_ne(4).profile)
        assert len(g) == 24
        assert is_temporally_connected(g, ReachMode.NONSTRICT)

    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_two_edge_targets_distinct(self, k):
        p = grid_ne(k).profile
        targets = [q.target for _, q in p.purchases() if q.label == 2]
        assert len(targets) == len(set(targets)) == k * (k - 1)
        labels = Counter(l for *_, l in realize(p))
        assert labels == {1: k * (k - 1), 2: k * (k - 1)}

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            grid_ne(2)

    def test_certified_uniform(self):
        assert is_nash(Variant.parse("nonstrict,zero,positive"), grid_ne(3).profile).certified

    def test_up_has_improving_swap(self):
        # Swapping the in-group 1-edge for a 1-edge to the vertex that sold us a
        # 2-edge relabels that edge to 1 and lowers our rank cost.
        up = Variant.parse("nonstrict,up,positive")
        p = grid_ne(3).profile
        deviated = p.replace(0, [Purchase(7, 1)])
        before, after = agent_cost(up, p, 0), agent_cost(up, deviated, 0)
        assert after.unreached == 0 and after.penalty == 0
        assert (before.total, after.total) == (Fraction(19, 18), Fraction(104, 99))
        assert is_nash(up, p).verdict is Verdict.DEVIATION_FOUND


class TestOuterRing:
    def test_fig3_at_six(self):
        p = outer_ring_ne(6).profile
        assert p.strategies[0] == {Purchase(1, 6), Purchase(5, 8)}
        assert p.strategies[1] == {Purchase(2, 7)}
        assert p.strategies[2] == {Purchase(3, 6), Purchase(4, 8)}
        assert p.strategies[3] == {Purchase(0, 7)}
        assert p.strategies[4] == {Purchase(0, 1)}
        assert p.strategies[5] == {Purchase(2, 1)}

    def test_four_is_the_ring(self):
        assert len(realize(outer_ring_ne(4).profile)) == 4

    def test_eight(self):
        c = outer_ring_ne(8)
        assert len(realize(c.profile)) == 12
        assert is_nash(c.claimed_variants[0], c.profile).certified

    @pytest.mark.parametrize("n", range(4, 10))
    def test_spokes_separate_from_ring(self, n):
        p = outer_ring_ne(n).profile
        for u, q in p.purchases():
            if u >= 4:
                assert q.label < n
            elif q.target >= 4:
                assert q.label > n + 1

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_staggered_agrees_up_to_six(self, n):
        assert outer_ring_ne(n, "staggered").profile == outer_ring_ne(n).profile

    def test_staggered_fails_from_seven(self):
        variant = Variant.parse("strict,zero,positive")
        p = outer_ring_ne(7, "staggered").profile
        deviated = p.replace(2, [Purchase(0, 1), Purchase(4, 1)])
        assert agent_cost(variant, p, 2).total == 3
        assert agent_cost(variant, deviated, 2).total == 2
        assert is_nash(variant, p).verdict is Verdict.DEVIATION_FOUND

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            outer_ring_ne(3)
        with pytest.raises(ValueError):
            outer_ring_ne(6, "spiral")


class TestClique:
    def test_four(self):
        c = clique_ne(4)
        assert len(realize(c.profile)) == 6 and c.expected_social_cost == 6

    def test_two(self):
        assert list(realize(clique_ne(2).profile)) == [(0, 1, 1)]

    def test_five_down(self):
        assert is_nash(Variant.parse("strict,down,positive"), clique_ne(5).profile).certified

    def test_rejects_nonpositive_label(self):
        with pytest.raises(ValueError):
            clique_ne(4, 0)


class TestHypercube:
    def test_three(self):
        g = realize(hypercube_ne(3).profile)
        assert len(g) == 12 and lifetime(g) == 3 and is_proper(g)
        assert is_temporally_connected(g, ReachMode.STRICT)

    def test_one(self):
        assert list(realize(hypercube_ne(1).profile)) == [(0, 1, 1)]

    def test_four(self):
        g = realize(hypercube_ne(4).profile)
        assert len(g) == 32 and is_proper(g) and is_temporally_connected(g, ReachMode.STRICT)

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_every_vertex_sees_each_label_once(self, d):
        g = realize(hypercube_ne(d).profile)
        for v in range(g.n):
            assert sorted(l for _, l in g.incident(v)) == list(range(1, d + 1))

    @pytest.mark.parametrize("d", [2, 3])
    def test_ownership_does_not_change_the_graph(self, d):
        assert realize(hypercube_ne(d, "bit0").profile) == realize(hypercube_ne(d).profile)

    def test_bit0_ownership_is_not_an_equilibrium(self):
        variant = Variant.parse("strict,zero,positive,proper")
        p = hypercube_ne(3, "bit0").profile
        deviated = p.replace(1, [Purchase(5, 1)])
        assert (agent_cost(variant, p, 1).total, agent_cost(variant, deviated, 1).total) == (2, 1)
        assert is_nash(variant, p).verdict is Verdict.DEVIATION_FOUND

    @pytest.mark.parametrize("d", [2, 3])
    def test_even_ownership_certified(self, d):
        c = hypercube_ne(d)
        assert is_nash(c.claimed_variants[0], c.profile).certified


class TestArbitraryLow:
    @pytest.mark.parametrize("n,cost", [(1, 0), (2, 1), (3, 3), (4, 4), (5, 6), (6, 8)])
    def test_costs(self, n, cost):
        c = arbitrary_low_ne(n)
        assert c.expected_social_cost == cost
        assert social_cost(c.claimed_variants[0], c.profile) == cost

    def test_six_certified(self):
        c = arbitrary_low_ne(6)
        assert Penalty.POSITIVE not in c.claimed_variants[0].penalties
        assert is_nash(c.claimed_variants[0], c.profile).certified

    def test_uses_label_zero(self):
        assert min(l for *_, l in realize(arbitrary_low_ne(5).profile)) == 0

    def test_open_beyond_six(self):
        with pytest.raises(ValueError):
            arbitrary_low_ne(7)


def test_generator_table():
    assert set(GENERATORS) == {"star", "grid", "outer-ring", "clique", "hypercube", "arbitrary-low"}


def test_manifest():
    m = grid_ne(3).manifest()
    assert m["construction"] == "grid"
    assert m["expected_social_cost"] == "12"
    assert "nonstrict,zero,positive" in m["variants"]
