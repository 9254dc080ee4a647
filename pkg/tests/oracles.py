"""Brute-force reference implementations.

These deliberately avoid the library's search code: they enumerate every map,
every edge or every coloring and compare directly against raw color lookups.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from hyperramsey.core import Vertex
from hyperramsey.ramsey import ColoringAssignment


def all_partitionwise_maps(S, G):
    verts = S.vertices()
    choices = [[Vertex(v.cls, l) for l in G.vertex_sets[v.cls]] for v in verts]
    for image in itertools.product(*choices):
        yield dict(zip(verts, image))


def naive_embeds(S, G, phi, color_map=None):
    for e, c in S.visible_edges().items():
        want = color_map[c] if color_map else c
        if G.color(tuple(phi[v] for v in e)) != want:
            return False
    return True


def naive_probability(S, G, injective=False, fixed=None):
    fixed = fixed or {}
    hits = total = 0
    for phi in all_partitionwise_maps(S, G):
        if any(phi[w] != x for w, x in fixed.items()):
            continue
        total += 1
        if injective and len(set(phi.values())) != len(phi):
            continue
        hits += naive_embeds(S, G, phi)
    return Fraction(hits, total)


def naive_map_count(S, G) -> int:
    n = 1
    for v in S.vertices():
        n *= len(G.vertex_sets[v.cls])
    return n


def naive_total_color(G, e):
    subs = [sub for s in range(1, len(e) + 1) for sub in itertools.combinations(e, s)]
    return tuple((tuple(v.cls for v in sub), G.color(sub)) for sub in subs)


def naive_relative_density(G, entries):
    """``entries`` as produced by :func:`naive_total_color` for some edge."""
    I = entries[-1][0]
    frame = entries[:-1]
    num = den = 0
    for e in itertools.product(*[[Vertex(c, l) for l in G.vertex_sets[c]] for c in I]):
        tc = naive_total_color(G, e)
        if tc[:-1] == frame:
            den += 1
            num += tc == entries
    return Fraction(num, den)


def naive_mono_copy_exists(H, col, c) -> bool:
    for image in itertools.permutations(range(col.n), H.n):
        if all(col.color(sorted(image[v] for v in e)) == c for e in H.edges):
            return True
    return False


def brute_force_good_exists(n, H, b) -> bool:
    """Try every b-coloring of the k-subsets of [n]."""
    m = comb(n, H.k)
    for colors in itertools.product(range(b), repeat=m):
        col = ColoringAssignment(n, H.k, b, colors)
        if not any(naive_mono_copy_exists(H, col, c) for c in range(b)):
            return True
    return False


def naive_is_subdivision(G_star, G) -> bool:
    for e in G.edges():
        if len(e) == G.k and G_star.color(e) != G.color(e):
            return False
    for e1, e2 in itertools.combinations(list(G.edges()), 2):
        if len(e1) < G.k and [v.cls for v in e1] == [v.cls for v in e2]:
            if G_star.color(e1) == G_star.color(e2) and G.color(e1) != G.color(e2):
                return False
    return True
