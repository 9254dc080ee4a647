import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hyperramsey.core import ColoredHypergraph, Complex, Vertex
from hyperramsey.embedding import (
    PartitionwiseMap,
    conditional_extension_probability,
    count_embeddings,
    embedding_probability,
    embeds,
    find_embedding,
    injective_embedding_probability,
    iter_embeddings,
    union_map,
)
from hyperramsey.errors import (
    BaseNotEmbedded,
    DomainOverlap,
    InvalidStructure,
    MissingAssignment,
    NotInducedRestriction,
    UnmappedColor,
)
from hyperramsey.generate import random_pattern

from helpers import V, pair_pattern, rand_ambient, single_color
from oracles import naive_embeds, naive_probability


def vertex_colored(colors):
    """One class whose vertices carry the given colors."""
    pal = {(0,): tuple(sorted(set(colors)))}
    return ColoredHypergraph([len(colors)], 1, pal, {(V(0, i),): c for i, c in enumerate(colors)})


def test_partitionwise_map_checks_classes():
    with pytest.raises(InvalidStructure):
        PartitionwiseMap({V(0): V(1)})
    phi = PartitionwiseMap({V(0): V(0, 3), V(1, 1): V(1, 3)})
    assert phi.is_injective()
    assert not PartitionwiseMap({V(0): V(0, 1), V(0, 1): V(0, 1)}).is_injective()
    assert phi.image((V(0), V(1, 1))) == (V(0, 3), V(1, 3))


def test_union_map():
    phi = PartitionwiseMap({V(0): V(0, 1)})
    assert union_map(phi, {}) == phi
    both = union_map(phi, {V(1): V(1, 2)})
    assert dict(both) == {V(0): V(0, 1), V(1): V(1, 2)}
    with pytest.raises(DomainOverlap):
        union_map(phi, {V(0): V(0, 0)})


def test_embeds_basic():
    G = vertex_colored(["a", "b"])
    empty = Complex.from_visible([1], 1, {})
    assert embeds(empty, {V(0): V(0, 1)}, G)
    S = Complex.from_visible([1], 1, {(V(0),): "a"})
    assert embeds(S, {V(0): V(0, 0)}, G)
    assert not embeds(S, {V(0): V(0, 1)}, G)
    with pytest.raises(MissingAssignment):
        embeds(S, {}, G)


def test_unmapped_color():
    G = vertex_colored(["a"])
    S = Complex.from_visible([1], 1, {(V(0),): "z"})
    with pytest.raises(UnmappedColor):
        embedding_probability(S, G)
    assert embedding_probability(S, G, color_map={"z": "a"}) == 1


def test_probability_examples():
    G = vertex_colored(["a", "b", "a", "a"])
    assert embedding_probability(Complex.from_visible([2], 1, {}), G) == 1
    assert embedding_probability(Complex.from_visible([1], 1, {(V(0),): "a"}), G) == Fraction(3, 4)


def test_injective_examples():
    G = rand_ambient(3)
    S = pair_pattern(0, 0, 1)
    assert injective_embedding_probability(S, G) == embedding_probability(S, G)
    two = Complex.from_visible([2], 1, {})
    assert injective_embedding_probability(two, single_color([5], 1)) == Fraction(4, 5)


def test_conditional_extension_examples():
    G = rand_ambient(8)
    small = Complex.from_visible([1, 0], 2, {(V(0),): 0})
    phi = {V(0): V(0, 0)}
    assert conditional_extension_probability(small, small, phi, G) == 1
    isolated = Complex.from_visible([1, 1], 2, {(V(0),): 0})
    assert conditional_extension_probability(isolated, small, phi, G) == 1
    big = pair_pattern(0, 0, 1)
    direct = sum(1 for l in G.vertex_sets[1] if G.color((V(0, 0), V(1, l))) == 1)
    assert conditional_extension_probability(big, small, phi, G) == Fraction(direct, 3)


def test_conditional_extension_errors():
    G = vertex_colored(["a", "b"])
    small = Complex.from_visible([1], 1, {(V(0),): "a"})
    with pytest.raises(BaseNotEmbedded):
        conditional_extension_probability(small, small, {V(0): V(0, 1)}, G)
    other = Complex.from_visible([1], 1, {(V(0),): "b"})
    with pytest.raises(NotInducedRestriction):
        conditional_extension_probability(other, small, {V(0): V(0, 0)}, G)


def _instance(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 3)
    k = rng.randint(1, r)
    G = rand_ambient(seed, sizes=tuple(rng.randint(1, 3) for _ in range(r)), k=k, palettes=(2,) * k)
    S = random_pattern(G, [rng.randint(0, 2) for _ in range(r)], rng)
    return G, S


@given(st.integers(0, 10**6))
def test_memoized_count_matches_naive(seed):
    G, S = _instance(seed)
    assert embedding_probability(S, G) == naive_probability(S, G)
    assert injective_embedding_probability(S, G) == naive_probability(S, G, injective=True)


@given(st.integers(0, 10**6))
def test_iterated_embeddings_embed_and_match_count(seed):
    G, S = _instance(seed)
    found = list(iter_embeddings(S, G))
    assert len(found) == count_embeddings(S, G)
    assert all(naive_embeds(S, G, phi) for phi in found)
    first = find_embedding(S, G)
    assert (first is None) == (not found)


@given(st.integers(0, 10**6))
def test_fixed_counts_sum_to_total(seed):
    G, S = _instance(seed)
    verts = S.vertices()
    if not verts:
        return
    v = verts[0]
    total = sum(count_embeddings(S, G, fixed={v: Vertex(v.cls, l)}) for l in G.vertex_sets[v.cls])
    assert total == count_embeddings(S, G)
