"""Seeded random instances."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import ColoredHypergraph, Complex, Vertex, all_indices, sub_edges
from .errors import InvalidStructure
from .ramsey import ColoringAssignment, partition_ambient


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a seeded experiment run depends on.

    ``palette_sizes[s-1]`` is the palette size for indices of size ``s``.
    """

    seed: int = 0
    class_sizes: tuple = (3, 3, 3)
    k: int = 2
    palette_sizes: tuple = (1, 2)
    samples: int = 100
    eta: tuple = (Fraction(9, 10), Fraction(9, 10))
    rho: tuple = (Fraction(1, 100), Fraction(1, 100))
    delta: int = 2
    vertex_cap: int = 5
    pattern_budget: int = 2_000
    node_budget: int = 1_000_000

    def __post_init__(self):
        object.__setattr__(self, "class_sizes", tuple(self.class_sizes))
        object.__setattr__(self, "palette_sizes", tuple(self.palette_sizes))
        object.__setattr__(self, "eta", tuple(Fraction(x) for x in self.eta))
        object.__setattr__(self, "rho", tuple(Fraction(x) for x in self.rho))
        if self.samples < 0:
            raise InvalidStructure("samples must be nonnegative")
        for name in ("vertex_cap", "pattern_budget", "node_budget", "k", "delta"):
            if getattr(self, name) <= 0:
                raise InvalidStructure(f"{name} must be positive")
        if len(self.palette_sizes) < min(self.k, len(self.class_sizes)):
            raise InvalidStructure("need a palette size for every edge size")
        if any(p < 1 for p in self.palette_sizes):
            raise InvalidStructure("palette sizes must be positive")
        if any(n < 1 for n in self.class_sizes):
            raise InvalidStructure("class sizes must be positive")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "class_sizes": list(self.class_sizes),
            "k": self.k,
            "palette_sizes": list(self.palette_sizes),
            "samples": self.samples,
            "eta": [str(x) for x in self.eta],
            "rho": [str(x) for x in self.rho],
            "delta": self.delta,
            "vertex_cap": self.vertex_cap,
            "pattern_budget": self.pattern_budget,
            "node_budget": self.node_budget,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        for key in ("eta", "rho"):
            if key in d:
                d[key] = tuple(Fraction(x) for x in d[key])
        return cls(**d)


def integer_palettes(r: int, k: int, palette_sizes) -> dict:
    return {I: tuple(range(palette_sizes[len(I) - 1])) for I in all_indices(r, k)}


def random_instance(config: ExperimentConfig, rng: random.Random | None = None) -> ColoredHypergraph:
    """Every edge gets an independent uniform color from its palette."""
    rng = rng or random.Random(config.seed)
    palettes = integer_palettes(len(config.class_sizes), config.k, config.palette_sizes)
    return ColoredHypergraph.from_function(
        config.class_sizes, config.k, palettes, lambda e: rng.randrange(len(palettes[tuple(v.cls for v in e)]))
    )


def sample_rng(config: ExperimentConfig, i: int) -> random.Random:
    """Independent stream for sample ``i``; string seeds hash deterministically."""
    return random.Random(f"{config.seed}:{i}")


def random_coloring(n: int, k: int, b: int, rng: random.Random) -> ColoringAssignment:
    return ColoringAssignment.from_function(n, k, b, lambda e: rng.randrange(b))


def toy_ambient(m: int = 6, N: int = 4, k: int = 2, b: int = 2, seed: int = 0) -> ColoredHypergraph:
    """Random b-coloring of the complete k-uniform hypergraph on ``m*N`` vertices, cut into classes."""
    return partition_ambient(random_coloring(m * N, k, b, random.Random(seed)), m, N)


def full_pattern(r: int, k: int, color=0) -> Complex:
    """One vertex per class, every edge visible and colored ``color``."""
    top = tuple(Vertex(c, 0) for c in range(r))
    vis = {e: color for e in sub_edges(top) if len(e) <= k}
    return Complex.from_visible([1] * r, k, vis)


def random_pattern(G: ColoredHypergraph, sizes, rng: random.Random, p_visible=Fraction(2, 3)) -> Complex:
    """A random complex with ``sizes[c]`` vertices in class ``c`` and ambient colors.

    An edge can only be visible when all of its proper sub-edges are.
    """
    vsets = [range(s) for s in sizes]
    vis: dict = {}
    for I in all_indices(len(sizes), G.k):
        for locs in itertools.product(*[vsets[c] for c in I]):
            e = tuple(Vertex(c, l) for c, l in zip(I, locs))
            if all(sub in vis for sub in sub_edges(e, proper=True)) and rng.random() < p_visible:
                vis[e] = rng.choice(G.palettes[I])
    return Complex.from_visible(vsets, G.k, vis)
