from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from perfdiv.divisibility import PerfectDivision, find_perfect_division, is_perfectly_divisible, verify_division
from perfdiv.equivalence import (
    SearchProvider,
    build_context,
    check_equivalence,
    divide_for_weight,
    lift_division,
    project_division,
    reduce_weight_step,
    weighted_provider,
)
from perfdiv.errors import NotDivisibleError, ProofGapError
from perfdiv.graph import (
    Graph,
    bits,
    complete_graph,
    cycle_graph,
    find_homogeneous_sets,
    mask_of,
    path_graph,
)
from perfdiv.search import max_clique_weight, ones

from conftest import graphs_up_to
from test_divisibility import grotzsch_graph
from test_search import weighted


class FixedProvider:
    """Hands out preset divisions; used to replay worked examples exactly."""

    def __init__(self, g, h, table):
        self.graph, self.weights, self.table = g, tuple(h), table

    def divide(self, subset):
        return self.table[subset]


C5 = cycle_graph(5)
H_C5 = (2, 1, 1, 1, 1)


def test_context_identity_case():
    ctx = build_context(C5, ones(5), 0)
    assert bits(ctx.clique) == [4]
    # vertex 0 moved to the end: relabelling v -> v-1, 0 -> 4
    relabel = {0: 4, 1: 0, 2: 1, 3: 2, 4: 3}
    assert {frozenset((relabel[u], relabel[v])) for u, v in C5.edges()} == {
        frozenset(e) for e in ctx.gx.edges()
    }


def test_context_weighted_c5():
    ctx = build_context(C5, H_C5, 0)
    assert ctx.gx.n == 6 and bits(ctx.clique) == [4, 5]
    assert ctx.hx == (1, 1, 1, 1, 1, 1)
    assert max_clique_weight(ctx.gx, ctx.hx)[0] == max_clique_weight(C5, H_C5)[0] == 3


def test_context_k1():
    ctx = build_context(complete_graph(1), (4,), 0)
    assert ctx.gx == complete_graph(4) and ctx.hx == (1, 1, 1, 1)


@given(weighted(max_n=7, wmax=4), st.data())
@settings(max_examples=150, deadline=None)
def test_context_invariants(gh, data):
    g, h = gh
    if g.n == 0:
        return
    x = data.draw(st.integers(0, g.n - 1))
    ctx = build_context(g, h, x)
    assert len(bits(ctx.clique)) == h[x]
    assert all(ctx.hx[v] == 1 for v in bits(ctx.clique))
    assert all(ctx.hx[new] == h[old] for old, new in ctx.record.carry.items())
    assert max_clique_weight(ctx.gx, ctx.hx)[0] == max_clique_weight(g, h)[0]
    if h[x] >= 2 and g.n >= 2:
        assert ctx.clique in find_homogeneous_sets(ctx.gx)


def test_lift_worked_example():
    ctx = build_context(C5, H_C5, 0)
    provider = FixedProvider(C5, H_C5, {C5.full: PerfectDivision(0b01111, 0b10000)})
    stats = Counter()
    d = lift_division(ctx, ctx.gx.full, provider, stats=stats)
    # survivors 1,2,3,4 -> 0,1,2,3; X = {4, 5}
    assert d == PerfectDivision(mask_of([0, 1, 2, 4, 5]), mask_of([3]))
    assert stats["lift_case_2"] == 1
    assert verify_division(ctx.gx, ctx.hx, ctx.gx.full, d)
    assert max_clique_weight(ctx.gx, ctx.hx, d.b)[0] == 1


def test_lift_disjoint_and_inside_cases():
    ctx = build_context(C5, H_C5, 0)
    provider = SearchProvider(C5, H_C5)
    stats = Counter()
    f = mask_of([0, 1, 2])  # base vertices 1, 2, 3
    d = lift_division(ctx, f, provider, stats=stats)
    own = provider.divide(mask_of([1, 2, 3]))
    assert d == PerfectDivision(ctx.push(own.a), ctx.push(own.b))
    assert lift_division(ctx, ctx.clique, provider, stats=stats) == PerfectDivision(ctx.clique, 0)
    assert stats["lift_case_0a"] == 1 and stats["lift_case_0b"] == 1


def test_lift_case_three():
    # x on the lighter side of the base division
    ctx = build_context(C5, H_C5, 0)
    provider = FixedProvider(C5, H_C5, {C5.full: PerfectDivision(0b11110, 0b00001)})
    stats = Counter()
    d = lift_division(ctx, ctx.gx.full, provider, stats=stats)
    assert stats["lift_case_3"] == 1
    assert d == PerfectDivision(mask_of([0, 1, 2, 3]), ctx.clique)


def test_literal_clique_cut_case_is_not_sound():
    # edge 0-1 plus isolated 2; lowering vertex 1 from 3 to 2 under h=(1,3,3)
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(ProofGapError):
        divide_for_weight(g, (1, 2, 3), SearchProvider(g), repair=False)
    stats = Counter()
    d = divide_for_weight(g, (1, 2, 3), SearchProvider(g), stats=stats)
    assert verify_division(g, (1, 2, 3), g.full, d)
    assert stats["lift_case_1_repair"] == 1


def test_literal_case_fails_even_on_c5():
    with pytest.raises(ProofGapError):
        divide_for_weight(C5, H_C5, SearchProvider(C5), repair=False)


def test_project_round_trip():
    ctx = build_context(C5, H_C5, 0)
    lifted = lift_division(ctx, ctx.gx.full, SearchProvider(C5, H_C5))
    d = project_division(ctx, C5.full, lifted)
    assert verify_division(C5, H_C5, C5.full, d)


def test_project_relabels_when_weight_is_one():
    ctx = build_context(C5, ones(5), 2)
    gx_div = find_perfect_division(ctx.gx, ctx.hx)
    d = project_division(ctx, C5.full, gx_div)
    back = {new: old for old, new in ctx.record.carry.items()}
    back[bits(ctx.clique)[0]] = 2
    assert d == PerfectDivision(mask_of(back[v] for v in bits(gx_div.a)), mask_of(back[v] for v in bits(gx_div.b)))


def test_project_with_clique_on_lighter_side():
    ctx = build_context(C5, H_C5, 0)
    gx_div = PerfectDivision(mask_of([0, 1, 2, 3]), ctx.clique)
    d = project_division(ctx, C5.full, gx_div)
    assert d == PerfectDivision(0b11110, 0b00001)
    assert verify_division(C5, H_C5, C5.full, d)


def test_project_without_x():
    ctx = build_context(C5, H_C5, 0)
    f = mask_of([1, 2, 3])
    gx_div = find_perfect_division(ctx.gx, ctx.hx, ctx.push(f))
    d = project_division(ctx, f, gx_div)
    assert d.ground == f and verify_division(C5, H_C5, f, d)


def test_reduce_step():
    h = (3, 1, 1, 1, 1)
    provider = SearchProvider(C5, h)
    lower = reduce_weight_step(C5, h, 0, 2, provider)
    assert lower.weights == H_C5
    assert verify_division(C5, H_C5, C5.full, lower.divide(C5.full))
    f = mask_of([1, 2, 3, 4])
    assert lower.divide(f) == provider.divide(f)
    with pytest.raises(ValueError):
        reduce_weight_step(C5, h, 0, 3, provider)
    with pytest.raises(ValueError):
        reduce_weight_step(C5, h, 0, 0, provider)


def test_divide_for_ones_is_the_unweighted_division():
    base = SearchProvider(C5)
    assert divide_for_weight(C5, ones(5), base) == base.divide(C5.full)


def test_divide_on_perfect_graph():
    g = path_graph(5)
    h = (3, 1, 2, 2, 1)
    d = divide_for_weight(g, h, SearchProvider(g))
    assert verify_division(g, h, g.full, d)
    assert verify_division(g, h, g.full, PerfectDivision(g.full, 0))


def test_divide_weighted_c5():
    stats = Counter()
    d = divide_for_weight(C5, H_C5, SearchProvider(C5), stats=stats)
    assert verify_division(C5, H_C5, C5.full, d)
    assert max_clique_weight(C5, H_C5, d.b)[0] <= 2 < 3
    assert stats["verified_reduce"] > 0 and stats["verified_project"] > 0


@given(weighted(max_n=6, wmax=3))
@settings(max_examples=60, deadline=None)
def test_every_order_and_step_mode_is_valid(gh):
    g, h = gh
    for order in ("ascending", "descending"):
        for unit in (False, True):
            d = divide_for_weight(g, h, SearchProvider(g), order=order, unit_steps=unit)
            assert verify_division(g, h, g.full, d)


def test_provider_chain_answers_all_subsets():
    h = (3, 2, 1, 2, 3)
    provider = weighted_provider(C5, h, SearchProvider(C5))
    for s in range(32):
        assert verify_division(C5, h, s, provider.divide(s))


def test_unweighted_failure_surfaces_subset():
    g = grotzsch_graph()
    with pytest.raises(NotDivisibleError) as info:
        SearchProvider(g).divide(g.full)
    assert info.value.subset == g.full


def test_check_equivalence_examples():
    rep = check_equivalence(C5, 2)
    assert rep.divisible and not rep.violations
    assert rep.weights_checked == 32 and rep.subsets_checked == 32 * 32
    rep = check_equivalence(path_graph(4), 3)
    assert not rep.violations and rep.weights_checked == 81
    rep = check_equivalence(grotzsch_graph(), 2)
    assert not rep.divisible and rep.records[0]["status"] == "not_divisible"


def test_check_equivalence_sampled_unit_steps():
    rep = check_equivalence(cycle_graph(6), 3, "sampled", seed=11, samples=5, unit_steps=True)
    assert rep.weights_checked == 5 and not rep.violations


def test_weight_reduction_can_break_divisibility():
    # Grötzsch is divisible with vertex 9 doubled but not for all-ones, and
    # its clique substitution at 9 contains the all-ones graph as gx - {11}.
    g = grotzsch_graph()
    h = (1,) * 9 + (2, 1)
    assert is_perfectly_divisible(g, h).divisible
    assert not is_perfectly_divisible(g).divisible
    ctx = build_context(g, h, 9)
    verdict = is_perfectly_divisible(ctx.gx, ctx.hx)
    assert not verdict.divisible and verdict.witness == ctx.gx.full & ~(1 << 11)
    assert is_perfectly_divisible(g, (2, 2, 2, 1, 1, 2, 2, 2, 1, 2, 1)).divisible
    # the constructive route still finds a division of the whole graph for h
    d = divide_for_weight(g, h, SearchProvider(g))
    assert verify_division(g, h, g.full, d)


@pytest.mark.slow
def test_equivalence_sweep_up_to_6():
    for g in graphs_up_to(5):
        rep = check_equivalence(g, 3)
        assert not rep.violations, (g, rep.violations[:1])
    for g in graphs_up_to(6)[52:]:
        rep = check_equivalence(g, 3, "sampled", seed=g.edge_count(), samples=10)
        assert not rep.violations, (g, rep.violations[:1])
