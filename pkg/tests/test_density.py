import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperramsey.core import ColoredHypergraph, Complex, TotalColor, all_indices
from hyperramsey.density import (
    RegularityWitness,
    chain_rule_product,
    check_regularity,
    clamped_interval,
    default_rho,
    discrepancy,
    edge_densities,
    exceptional_edges,
    is_subdivision,
    palette_bound,
    relative_density,
)
from hyperramsey.errors import EmptyFrame, ShapeMismatch
from hyperramsey.generate import random_pattern

from helpers import V, pair_pattern, rand_ambient, single_color
from oracles import naive_probability, naive_relative_density, naive_total_color


def four_by_four():
    """Vertex colors aaab / xxyy, pair (i, j) colored p iff 3 divides i + j."""
    c0, c1 = "aaab", "xxyy"
    pal = {(0,): ("a", "b"), (1,): ("x", "y"), (0, 1): ("p", "q")}

    def f(e):
        if len(e) == 1:
            return (c0 if e[0].cls == 0 else c1)[e[0].local]
        return "p" if (e[0].local + e[1].local) % 3 == 0 else "q"

    return ColoredHypergraph.from_function([4, 4], 2, pal, f)


def test_single_palette_density_is_one():
    G = single_color([2, 3], 2)
    for e in G.edges():
        assert relative_density(G, G.total_color(e)) == 1


def test_vertex_density_is_class_fraction():
    G = four_by_four()
    assert relative_density(G, TotalColor((((0,), "a"),))) == Fraction(3, 4)
    assert relative_density(G, TotalColor((((1,), "y"),))) == Fraction(1, 2)


def test_unrealized_frame_raises():
    G = four_by_four()
    tc = TotalColor((((0,), "zz"), ((1,), "x"), ((0, 1), "p")))
    with pytest.raises(EmptyFrame):
        relative_density(G, tc)


@given(st.integers(0, 10**6))
def test_densities_normalize_and_match_naive(seed):
    rng = random.Random(seed)
    G = rand_ambient(seed, sizes=tuple(rng.randint(1, 3) for _ in range(3)), k=rng.randint(1, 3), palettes=(2, 2, 2))
    for I in G.indices():
        by_frame = {}
        for tc in G.total_color_counts(I):
            d = relative_density(G, tc)
            by_frame[tc.frame] = by_frame.get(tc.frame, 0) + d
        assert all(s == 1 for s in by_frame.values())
    for e in G.edges():
        assert relative_density(G, G.total_color(e)) == naive_relative_density(G, naive_total_color(G, e))


def test_chain_rule_trivial_cases():
    G = four_by_four()
    assert chain_rule_product(Complex.from_visible([1, 1], 2, {}), G) == 1
    S = Complex.from_visible([1, 0], 2, {(V(0),): "a"})
    assert chain_rule_product(S, G) == Fraction(3, 4)
    assert discrepancy(S, G) == 0
    assert discrepancy(Complex.from_visible([2, 1], 2, {}), G) == 0


def test_discrepancy_of_cherry_on_four_by_four():
    G = four_by_four()
    cherry = Complex.from_visible(
        [1, 2], 2,
        {(V(0),): "a", (V(1, 0),): "x", (V(1, 1),): "x", (V(0), V(1, 0)): "p", (V(0), V(1, 1)): "p"},
    )
    # hand count: u in {0, 2} each has exactly one x-partner colored p, so 2 of 64 maps
    assert naive_probability(cherry, G) == Fraction(1, 32)
    assert chain_rule_product(cherry, G) == Fraction(1, 48)  # 3/4 * (1/2)^2 * (1/3)^2
    assert discrepancy(cherry, G) == Fraction(1, 96)


def test_one_vertex_per_class_pattern_has_zero_discrepancy():
    G = four_by_four()
    assert discrepancy(pair_pattern("a", "x", "p"), G) == 0


def test_clamped_interval():
    assert clamped_interval(Fraction(1, 2), Fraction(1)) == (0, 1)
    assert clamped_interval(Fraction(1, 2), Fraction(1, 8)) == (Fraction(3, 8), Fraction(5, 8))


def test_regularity_single_color_passes():
    G = single_color([2, 2], 2)
    rep = check_regularity(G, RegularityWitness.constant(0, Fraction(1, 100), h=2))
    assert rep.passed and rep.minimal_uniform_delta == 0
    assert all(d == 1 for d, _ in rep.densities.values())


def test_regularity_with_unit_delta_passes_by_clamping():
    G = rand_ambient(5, sizes=(2, 2), palettes=(2, 2))
    rep = check_regularity(G, RegularityWitness.constant(1, 1))
    assert rep.condition_i and rep.condition_ii and not rep.truncated


def test_regularity_perturbed_pair_fails_condition_i():
    base = single_color([2, 2], 2)
    pal = {I: (0, 1) if len(I) == 2 else (0,) for I in all_indices(2, 2)}
    G = ColoredHypergraph.from_function(
        [2, 2], 2, pal, lambda e: 1 if e == (V(0, 0), V(1, 0)) else 0
    )
    assert check_regularity(base, RegularityWitness.constant(0, 1, h=2)).condition_i
    rep = check_regularity(G, RegularityWitness.constant(0, 1, h=2))
    assert not rep.condition_i
    worst = rep.failures[0]
    assert not worst.lower <= worst.probability <= worst.upper
    assert worst.pattern.visible_edges()
    assert rep.minimal_uniform_delta > 0


def test_regularity_budget_truncates():
    G = rand_ambient(1, sizes=(2, 2), palettes=(2, 2))
    rep = check_regularity(G, RegularityWitness.constant(1, 1, h=2), pattern_budget=5)
    assert rep.truncated and rep.patterns_checked == 5 and not rep.passed


def test_subdivision_examples():
    G = rand_ambient(2, sizes=(3, 3), palettes=(2, 2))
    assert is_subdivision(G, G)
    split_pal = dict(G.palettes)
    split_pal[(0,)] = (0, 1, 2)
    split = ColoredHypergraph.from_function(
        [3, 3], 2, split_pal, lambda e: 2 if e == (V(0, 0),) and G.color(e) == 1 else G.color(e)
    )
    assert is_subdivision(split, G)
    merged_pal = dict(G.palettes)
    merged_pal[(1,)] = (0,)
    merged = ColoredHypergraph.from_function([3, 3], 2, merged_pal, lambda e: 0 if len(e) == 1 and e[0].cls == 1 else G.color(e))
    assert is_subdivision(merged, G) == (len({G.color((V(1, l),)) for l in range(3)}) == 1)
    with pytest.raises(ShapeMismatch):
        is_subdivision(single_color([3], 2), G)


def test_exceptional_examples():
    G = single_color([2, 2, 2], 2)
    witness = RegularityWitness.constant(0, Fraction(1, 10))
    rep = exceptional_edges(G, lambda level: Fraction(1, 2), witness, Fraction(1, 10))
    assert rep.edges == {}
    rep = exceptional_edges(G, {1: Fraction(2), 2: Fraction(2)}, witness, Fraction(1, 10))
    assert len(rep.edges) == sum(1 for _ in G.edges())
    assert all(why == {"density"} for why in rep.edges.values())


def test_default_rho_and_palette_bound():
    G = rand_ambient(0, sizes=(2, 2), palettes=(1, 3))
    assert palette_bound(G, 1) == 3 and palette_bound(G, 2) == 3
    rho = default_rho(Fraction(1, 10), G)
    assert rho(1) == Fraction(1, 30)


@given(st.integers(0, 10**6))
def test_exceptional_fraction_bound(seed):
    rng = random.Random(seed)
    G = rand_ambient(seed, sizes=(3, 3, 2), palettes=(2, 3))
    alpha = Fraction(rng.randint(1, 20), 100)
    deltas = {}
    for I in G.indices():
        for tc in G.total_color_counts(I):
            deltas[tc] = Fraction(rng.randint(0, 10), 10)
    witness = RegularityWitness(deltas, lambda s, b: Fraction(1, 2))
    rep = exceptional_edges(G, default_rho(alpha, G), witness, alpha)
    for I, ok in rep.condition_ii.items():
        if ok:
            assert rep.within_bound(I)


@given(st.integers(0, 10**6))
def test_edge_densities_product_is_chain_rule(seed):
    rng = random.Random(seed)
    G = rand_ambient(seed, sizes=(2, 2, 2), palettes=(2, 2))
    S = random_pattern(G, [1, 1, 1], rng)
    try:
        dens = edge_densities(S, G)
    except EmptyFrame:
        return
    prod = Fraction(1)
    for d in dens.values():
        prod *= d
    assert prod == chain_rule_product(S, G)
