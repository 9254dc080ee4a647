"""Partitionwise maps and exact embedding probabilities.

All probabilities are over uniformly random partitionwise maps and are
returned as :class:`fractions.Fraction`. Counting walks the pattern vertices in
canonical order (class, then local label) and memoizes on the images of the
already-placed vertices that still share a visible edge with an unplaced one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .core import ColoredHypergraph, Complex, Vertex, edge_index
from .errors import (
    BaseNotEmbedded,
    DomainOverlap,
    EmptyAmbientClass,
    InvalidStructure,
    MissingAssignment,
    NotInducedRestriction,
    ShapeMismatch,
    UnmappedColor,
)


class PartitionwiseMap(Mapping):
    """Class-preserving map from pattern vertices to ambient vertices."""

    __slots__ = ("_map",)

    def __init__(self, assignments=()):
        m = {}
        for w, x in dict(assignments).items():
            w, x = Vertex(*w), Vertex(*x)
            if w.cls != x.cls:
                raise InvalidStructure(f"{w} and its image {x} lie in different classes")
            m[w] = x
        self._map = m

    def __getitem__(self, w):
        return self._map[w]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def __repr__(self):
        body = ", ".join(f"{w}->{x}" for w, x in sorted(self._map.items()))
        return f"PartitionwiseMap({body})"

    def is_injective(self) -> bool:
        return len(set(self._map.values())) == len(self._map)

    def image(self, e) -> tuple:
        return tuple(self._map[v] for v in e)


def union_map(phi: Mapping, psi: Mapping) -> PartitionwiseMap:
    overlap = set(phi) & set(psi)
    if overlap:
        raise DomainOverlap(f"domains overlap on {sorted(overlap)}")
    return PartitionwiseMap({**phi, **psi})


def _target(S: Complex, G: ColoredHypergraph, e, color_map) -> object:
    c = S.color(e)
    I = edge_index(e)
    if color_map is not None:
        if c not in color_map:
            raise UnmappedColor(f"pattern color {c!r} has no counterpart")
        c = color_map[c]
    if c not in G.palettes.get(I, ()):
        raise UnmappedColor(f"color {c!r} is not an index-{list(I)} color of the ambient")
    return c


def _check_shape(S: Complex, G: ColoredHypergraph) -> None:
    for v in S.vertices():
        if v.cls >= G.r:
            raise ShapeMismatch(f"pattern vertex {v} has no ambient class")
    if S.bound() > G.k:
        raise ShapeMismatch(f"pattern has visible edges larger than the ambient bound {G.k}")


def embeds(S: Complex, phi: Mapping, G: ColoredHypergraph, color_map: Mapping | None = None) -> bool:
    """Whether every visible edge of ``S`` has the same color as its image under ``phi``."""
    _check_shape(S, G)
    for v in S.vertices():
        if v not in phi:
            raise MissingAssignment(f"no image for {v}")
    for e in S.visible_edges():
        want = _target(S, G, e, color_map)
        if G.color(tuple(Vertex(*phi[v]) for v in e)) != want:
            return False
    return True


class _Plan:
    """Precomputed search order for counting or listing embeddings."""

    def __init__(self, S, G, fixed=None, injective=False, color_map=None):
        _check_shape(S, G)
        fixed = {Vertex(*w): Vertex(*x) for w, x in (fixed or {}).items()}
        for w, x in fixed.items():
            if not S.has_vertex(w):
                raise InvalidStructure(f"{w} is not a pattern vertex")
            if w.cls != x.cls or not G.has_vertex(x):
                raise InvalidStructure(f"{w} -> {x} is not a valid partitionwise assignment")
        self.G = G
        self.fixed = fixed
        self.injective = injective
        self.free = [v for v in S.vertices() if v not in fixed]
        pos = {v: i for i, v in enumerate(self.free)}
        for v in self.free:
            if not G.vertex_sets[v.cls]:
                raise EmptyAmbientClass(f"ambient class {v.cls} is empty")
        self.cands = [[Vertex(v.cls, l) for l in G.vertex_sets[v.cls]] for v in self.free]
        n = len(self.free)
        self.checks = [[] for _ in range(n)]
        self.base_checks = []
        last_use = [-1] * n
        for e in S.visible_edges():
            want = _target(S, G, e, color_map)
            slots = tuple((True, pos[v]) if v in pos else (False, fixed[v]) for v in e)
            frees = [p for is_free, p in slots if is_free]
            if not frees:
                self.base_checks.append((slots, want))
                continue
            t = max(frees)
            self.checks[t].append((slots, want))
            for p in frees:
                last_use[p] = max(last_use[p], t)
        # frontier[t]: placed positions whose images still matter from step t on
        self.frontier = [tuple(p for p in range(t) if last_use[p] >= t) for t in range(n + 1)]
        self.same_class_before = [
            tuple(p for p in range(t) if self.free[p].cls == self.free[t].cls) for t in range(n)
        ]
        self.fixed_used = {}
        for x in fixed.values():
            self.fixed_used.setdefault(x.cls, set()).add(x)
        self.denominator = 1
        for v in self.free:
            self.denominator *= len(G.vertex_sets[v.cls])

    def base_ok(self) -> bool:
        G = self.G
        if self.injective and len(set(self.fixed.values())) != len(self.fixed):
            return False
        return all(G.color(tuple(x for _, x in slots)) == want for slots, want in self.base_checks)

    def _ok(self, t, images) -> bool:
        G = self.G
        for slots, want in self.checks[t]:
            img = tuple(images[p] if is_free else p for is_free, p in slots)
            if G.color(img) != want:
                return False
        return True

    def count(self) -> int:
        if not self.base_ok():
            return 0
        n = len(self.free)
        images = [None] * n
        memo = {}
        injective = self.injective

        def rec(t):
            if t == n:
                return 1
            key = (t, tuple(images[p] for p in self.frontier[t]))
            if injective:
                key += (tuple(sorted(images[p] for p in self.same_class_before[t])),)
            hit = memo.get(key)
            if hit is not None:
                return hit
            total = 0
            blocked = set()
            if injective:
                blocked = self.fixed_used.get(self.free[t].cls, set()) | {
                    images[p] for p in self.same_class_before[t]
                }
            for w in self.cands[t]:
                if w in blocked:
                    continue
                images[t] = w
                if self._ok(t, images):
                    total += rec(t + 1)
            images[t] = None
            memo[key] = total
            return total

        return rec(0)

    def iterate(self) -> Iterator[dict]:
        if not self.base_ok():
            return
        n = len(self.free)
        images = [None] * n
        injective = self.injective

        def rec(t):
            if t == n:
                yield {**self.fixed, **dict(zip(self.free, images))}
                return
            blocked = set()
            if injective:
                blocked = self.fixed_used.get(self.free[t].cls, set()) | {
                    images[p] for p in self.same_class_before[t]
                }
            for w in self.cands[t]:
                if w in blocked:
                    continue
                images[t] = w
                if self._ok(t, images):
                    yield from rec(t + 1)
            images[t] = None

        yield from rec(0)


def count_embeddings(S, G, fixed=None, injective=False, color_map=None) -> int:
    """Number of assignments of the non-fixed vertices of ``S`` that embed ``S``."""
    return _Plan(S, G, fixed, injective, color_map).count()


def iter_embeddings(S, G, fixed=None, injective=False, color_map=None) -> Iterator[PartitionwiseMap]:
    for m in _Plan(S, G, fixed, injective, color_map).iterate():
        yield PartitionwiseMap(m)


def find_embedding(S, G, fixed=None, injective=False, color_map=None) -> PartitionwiseMap | None:
    """First embedding in canonical order, by backtracking."""
    return next(iter_embeddings(S, G, fixed, injective, color_map), None)


def embedding_probability(S: Complex, G: ColoredHypergraph, color_map=None) -> Fraction:
    plan = _Plan(S, G, color_map=color_map)
    return Fraction(plan.count(), plan.denominator)


def injective_embedding_probability(B: Complex, G: ColoredHypergraph, color_map=None) -> Fraction:
    plan = _Plan(B, G, injective=True, color_map=color_map)
    return Fraction(plan.count(), plan.denominator)


def check_induced(B_small: Complex, B_big: Complex) -> None:
    """Raise unless ``B_small`` is ``B_big`` induced on ``V(B_small)``."""
    verts = set(B_small.vertices())
    if not all(B_big.has_vertex(v) for v in verts):
        raise NotInducedRestriction("vertex set is not contained in the larger complex")
    expected = {e: c for e, c in B_big.visible_edges().items() if all(v in verts for v in e)}
    if expected != B_small.visible_edges():
        raise NotInducedRestriction("visible edges differ from the induced restriction")


def conditional_extension_probability(
    B_big: Complex, B_small: Complex, phi: Mapping, G: ColoredHypergraph, color_map=None
) -> Fraction:
    """Probability that a random extension of ``phi`` to ``V(B_big)`` embeds ``B_big``."""
    check_induced(B_small, B_big)
    for v in B_small.vertices():
        if v not in phi:
            raise MissingAssignment(f"no image for {v}")
    fixed = {v: phi[v] for v in B_small.vertices()}
    if not embeds(B_small, fixed, G, color_map):
        raise BaseNotEmbedded("the base map does not embed the smaller complex")
    plan = _Plan(B_big, G, fixed=fixed, color_map=color_map)
    return Fraction(plan.count(), plan.denominator)

