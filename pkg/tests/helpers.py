"""Instance builders shared by the test modules."""

from __future__ import annotations

import random

from hyperramsey.core import ColoredHypergraph, Complex, Vertex, all_indices
from hyperramsey.generate import ExperimentConfig, random_instance
from hyperramsey.ramsey import ColoringAssignment


def V(c, l=0):
    return Vertex(c, l)


def single_color(sizes, k, color=0) -> ColoredHypergraph:
    palettes = {I: (color,) for I in all_indices(len(sizes), k)}
    return ColoredHypergraph.from_function(sizes, k, palettes, lambda e: color)


def rand_ambient(seed, sizes=(3, 3, 3), k=2, palettes=(1, 2)) -> ColoredHypergraph:
    cfg = ExperimentConfig(seed=seed, class_sizes=sizes, k=k, palette_sizes=palettes)
    return random_instance(cfg, random.Random(seed))


def pentagon() -> ColoringAssignment:
    """Cycle edges of K_5 get color 0, chords color 1."""
    return ColoringAssignment.from_function(5, 2, 2, lambda e: 0 if (e[1] - e[0]) in (1, 4) else 1)


def pair_pattern(cu=0, cv=0, cp=1) -> Complex:
    """Two visible vertices in classes 0 and 1 joined by a visible pair."""
    return Complex.from_visible([1, 1], 2, {(V(0),): cu, (V(1),): cv, (V(0), V(1)): cp})
