"""Relative densities and regularity diagnostics, including subdivision and exceptional-edge checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping

from .core import (
    ColoredHypergraph,
    Complex,
    TotalColor,
    Vertex,
    all_indices,
    edge_index,
    sub_edges,
)
from .embedding import _target, embedding_probability
from .errors import EmptyFrame, ShapeMismatch


def relative_density(G: ColoredHypergraph, c: TotalColor) -> Fraction:
    """Fraction of index-I edges with top color ``c.top`` among those with frame ``c.frame``."""
    I = c.index
    frames = G.frame_counts(I)
    denom = frames.get(c.frame, 0)
    if denom == 0:
        raise EmptyFrame(f"no index-{list(I)} edge realizes frame {c.frame!r}", frame=c.frame)
    return Fraction(G.total_color_counts(I).get(c, 0), denom)


def pattern_total_color(S: Complex, e, G: ColoredHypergraph, color_map=None) -> TotalColor:
    """``S<e>`` written in the ambient's colors."""
    return TotalColor(tuple((edge_index(s), _target(S, G, s, color_map)) for s in sub_edges(e)))


def edge_densities(S: Complex, G: ColoredHypergraph, color_map=None) -> dict:
    """Visible edge of ``S`` -> relative density of its total color in ``G``."""
    out = {}
    for e in S.visible_edges():
        tc = pattern_total_color(S, e, G, color_map)
        try:
            out[e] = relative_density(G, tc)
        except EmptyFrame as exc:
            raise EmptyFrame(str(exc), frame=exc.frame, edge=e) from None
    return out


def chain_rule_product(S: Complex, G: ColoredHypergraph, color_map=None) -> Fraction:
    prod = Fraction(1)
    for d in edge_densities(S, G, color_map).values():
        prod *= d
    return prod


def discrepancy(S: Complex, G: ColoredHypergraph, color_map=None) -> Fraction:
    return embedding_probability(S, G, color_map) - chain_rule_product(S, G, color_map)


def clamped_interval(a: Fraction, b: Fraction) -> tuple:
    """The interval ``a ±̇ b``: ``[max(0, a-b), min(1, a+b)]``."""
    return max(Fraction(0), a - b), min(Fraction(1), a + b)


def palette_bound(G: ColoredHypergraph, level: int) -> int:
    """``b*_level``: the largest palette among indices of size at least ``level``."""
    return max((len(G.palettes[I]) for I in G.indices() if len(I) >= level), default=0)


@dataclass
class RegularityWitness:
    """A delta function on total colors plus the epsilon it must average under.

    ``delta`` may be a mapping (missing total colors count as 0) or a callable.
    ``epsilon`` is called as ``epsilon(level, b_star)``.
    """

    delta: Mapping | Callable
    epsilon: Callable[[int, int], Fraction]
    h: int = 1

    def delta_of(self, tc: TotalColor) -> Fraction:
        if callable(self.delta):
            return Fraction(self.delta(tc))
        return Fraction(self.delta.get(tc, 0))

    @classmethod
    def constant(cls, delta, epsilon, h=1) -> "RegularityWitness":
        delta, epsilon = Fraction(delta), Fraction(epsilon)
        return cls(lambda tc: delta, lambda s, b: epsilon, h)


@dataclass
class PatternFailure:
    pattern: Complex
    probability: Fraction
    lower: Fraction
    upper: Fraction


@dataclass
class DensityReport:
    densities: dict = field(default_factory=dict)  # TotalColor -> (density, delta)
    index_means: dict = field(default_factory=dict)  # index -> (mean delta, epsilon, ok)
    patterns_checked: int = 0
    patterns_undefined: int = 0
    truncated: bool = False
    failures: list = field(default_factory=list)
    minimal_uniform_delta: Fraction = Fraction(0)

    @property
    def condition_i(self) -> bool:
        return not self.failures

    @property
    def condition_ii(self) -> bool:
        return all(ok for _, _, ok in self.index_means.values())

    @property
    def passed(self) -> bool:
        return self.condition_i and self.condition_ii and not self.truncated


def _grid_edges(r: int, k: int, h: int) -> list:
    """Every edge of the complete r-partite structure with h vertices per class."""
    out = []
    for I in all_indices(r, k):
        out.extend(itertools.product(*[[Vertex(c, l) for l in range(h)] for c in I]))
    return out


def enumerate_patterns(G: ColoredHypergraph, h: int) -> Iterator[Complex]:
    """Complexes with ``h`` vertices per class whose visible colors are ambient colors.

    Edges are decided in canonical order; an edge may only be visible when all of
    its proper sub-edges are. The all-invisible complex comes first.
    """
    edges = _grid_edges(G.r, G.k, h)
    vsets = [range(h)] * G.r
    choice = {}

    def rec(i):
        if i == len(edges):
            yield Complex.from_visible(vsets, G.k, dict(choice))
            return
        e = edges[i]
        yield from rec(i + 1)
        if all(s in choice for s in sub_edges(e, proper=True)):
            for c in G.palettes[edge_index(e)]:
                choice[e] = c
                yield from rec(i + 1)
            del choice[e]

    yield from rec(0)


def _interval_product(dens, deltas):
    lo, hi = Fraction(1), Fraction(1)
    for d, t in zip(dens, deltas):
        a, b = clamped_interval(d, t)
        lo *= a
        hi *= b
    return lo, hi


def _minimal_uniform_delta(p, dens, bits=20) -> Fraction:
    """Smallest dyadic ``t`` (resolution 2**-bits) with ``p`` inside the product of ``d ±̇ t``."""
    def fits(t):
        lo, hi = _interval_product(dens, [t] * len(dens))
        return lo <= p <= hi

    if fits(Fraction(0)):
        return Fraction(0)
    lo, hi = 0, 1 << bits
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(Fraction(mid, 1 << bits)):
            hi = mid
        else:
            lo = mid
    return Fraction(hi, 1 << bits)


def check_regularity(G: ColoredHypergraph, witness: RegularityWitness, pattern_budget: int = 10_000) -> DensityReport:
    """Check both regularity conditions of ``witness`` on ``G``.

    Condition (ii) is checked exactly on every index. Condition (i) is checked on
    enumerated patterns until ``pattern_budget`` of them have been examined;
    ``report.truncated`` says whether enumeration stopped early. Patterns whose
    frame colors never occur in ``G`` have no defined density product and are
    counted in ``patterns_undefined`` instead.
    """
    rep = DensityReport()
    for I in G.indices():
        for tc in G.total_color_counts(I):
            rep.densities[tc] = (relative_density(G, tc), witness.delta_of(tc))
        n = G.num_edges(I)
        if n == 0:
            continue
        total = sum(witness.delta_of(tc) * cnt for tc, cnt in G.total_color_counts(I).items())
        eps = Fraction(witness.epsilon(len(I), palette_bound(G, len(I))))
        mean = Fraction(total, n)
        rep.index_means[I] = (mean, eps, mean <= eps)

    worst = Fraction(0)
    for S in enumerate_patterns(G, witness.h):
        if rep.patterns_checked >= pattern_budget:
            rep.truncated = True
            break
        rep.patterns_checked += 1
        try:
            dens_map = edge_densities(S, G)
        except EmptyFrame:
            rep.patterns_undefined += 1
            continue
        tcs = [pattern_total_color(S, e, G) for e in dens_map]
        dens = list(dens_map.values())
        p = embedding_probability(S, G)
        lo, hi = _interval_product(dens, [witness.delta_of(tc) for tc in tcs])
        if not lo <= p <= hi:
            rep.failures.append(PatternFailure(S, p, lo, hi))
        worst = max(worst, _minimal_uniform_delta(p, dens))
    rep.minimal_uniform_delta = worst
    return rep


def is_subdivision(G_star: ColoredHypergraph, G: ColoredHypergraph) -> bool:
    """Top-size colors agree edgewise and lower-size color classes of ``G_star`` refine ``G``'s."""
    if (G_star.vertex_sets, G_star.k) != (G.vertex_sets, G.k):
        raise ShapeMismatch("a subdivision must live on the same classes with the same bound")
    for I in G.indices():
        if len(I) == G.k:
            if any(G_star.color(e) != G.color(e) for e in G.edges(I)):
                return False
            continue
        seen = {}
        for e in G.edges(I):
            c_star, c = G_star.color(e), G.color(e)
            if seen.setdefault(c_star, c) != c:
                return False
    return True


@dataclass
class ExceptionalReport:
    edges: dict = field(default_factory=dict)  # edge -> set of {"density", "delta"}
    fractions: dict = field(default_factory=dict)  # index -> exceptional fraction
    bounds: dict = field(default_factory=dict)  # index -> rho_i * b_i* + alpha
    condition_ii: dict = field(default_factory=dict)  # index -> witness passes (ii) there

    def within_bound(self, I) -> bool:
        return self.fractions[I] <= self.bounds[I]

    @property
    def all_within_bound(self) -> bool:
        return all(self.within_bound(I) for I in self.fractions)


def default_rho(alpha, G_star: ColoredHypergraph) -> Callable[[int], Fraction]:
    """``rho_i = alpha / b*_i`` for the palettes of ``G_star``."""
    alpha = Fraction(alpha)
    return lambda level: alpha / palette_bound(G_star, level)


def exceptional_edges(G_star: ColoredHypergraph, rho, witness: RegularityWitness, alpha) -> ExceptionalReport:
    """Flag edges of low density or high delta.

    ``rho`` maps a level to its threshold: a mapping, a sequence indexed from
    level 1, or a callable.
    """
    alpha = Fraction(alpha)
    rep = ExceptionalReport()
    for I in G_star.indices():
        n = G_star.num_edges(I)
        if n == 0:
            continue
        level = len(I)
        b_star = palette_bound(G_star, level)
        rho_i = Fraction(_call_rho(rho, level, b_star))
        eps = Fraction(witness.epsilon(level, b_star))
        flagged = 0
        delta_total = Fraction(0)
        for e in G_star.edges(I):
            tc = G_star.total_color(e)
            why = set()
            if relative_density(G_star, tc) < rho_i:
                why.add("density")
            dt = witness.delta_of(tc)
            delta_total += dt
            if dt > eps / alpha:
                why.add("delta")
            if why:
                rep.edges[e] = why
                flagged += 1
        rep.fractions[I] = Fraction(flagged, n)
        rep.bounds[I] = rho_i * b_star + alpha
        rep.condition_ii[I] = delta_total / n <= eps
    return rep


def _call_rho(rho, level, b_star):
    if isinstance(rho, Mapping):
        return rho[level]
    if isinstance(rho, (list, tuple)):
        return rho[level - 1]
    return rho(level)

