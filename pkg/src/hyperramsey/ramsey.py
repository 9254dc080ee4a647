"""Small Ramsey numbers of uniform hypergraphs by exhaustive backtracking.

Edges of the complete k-uniform hypergraph on ``[n]`` are handled in colex
order. Every copy of the target hypergraph is indexed by the colex rank of its
last edge, so assigning a color to edge ``t`` only has to look at copies that
become complete at ``t``.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .core import ColoredHypergraph, Vertex, all_indices
from .errors import BudgetExceeded, InvalidStructure, ShapeMismatch

BLACK = "black"
THREADS_ENV = "HYPERRAMSEY_THREADS"


def colex_key(e: Sequence[int]) -> tuple:
    return tuple(reversed(e))


def colex_edges(n: int, k: int) -> list:
    """All k-subsets of ``range(n)`` as sorted tuples, in colex order."""
    return sorted(itertools.combinations(range(n), k), key=colex_key)


def colex_rank(e: Sequence[int]) -> int:
    return sum(comb(a, i + 1) for i, a in enumerate(sorted(e)))


@dataclass(frozen=True)
class UniformHypergraph:
    n: int
    k: int
    edges: frozenset

    def __post_init__(self):
        edges = frozenset(tuple(sorted(e)) for e in self.edges)
        for e in edges:
            if len(set(e)) != self.k:
                raise InvalidStructure(f"edge {e} does not have {self.k} distinct vertices")
            if not all(0 <= v < self.n for v in e):
                raise InvalidStructure(f"edge {e} leaves the vertex range [0, {self.n})")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def single_edge(cls, k: int) -> "UniformHypergraph":
        return cls(k, k, {tuple(range(k))})

    @classmethod
    def path(cls, n: int, k: int = 2) -> "UniformHypergraph":
        """Tight path: consecutive windows of ``k`` vertices out of ``n``."""
        return cls(n, k, {tuple(range(i, i + k)) for i in range(n - k + 1)})

    @classmethod
    def cycle(cls, n: int, k: int = 2) -> "UniformHypergraph":
        return cls(n, k, {tuple(sorted((i + j) % n for j in range(k))) for i in range(n)})

    @classmethod
    def complete(cls, n: int, k: int) -> "UniformHypergraph":
        return cls(n, k, set(itertools.combinations(range(n), k)))

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=colex_key)

    def neighbors(self, v: int) -> set:
        return {w for e in self.edges if v in e for w in e if w != v}

    def degree(self, v: int) -> int:
        """Number of vertices sharing an edge with ``v``."""
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def is_subhypergraph_of(self, other: "UniformHypergraph") -> bool:
        return self.k == other.k and self.n <= other.n and self.edges <= other.edges


@dataclass(frozen=True)
class ColoringAssignment:
    """Colors of the k-subsets of ``[n]`` listed in colex order (``None`` = unassigned)."""

    n: int
    k: int
    b: int
    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != comb(self.n, self.k):
            raise InvalidStructure(f"expected {comb(self.n, self.k)} colors, got {len(self.colors)}")
        if any(c is not None and not 0 <= c < self.b for c in self.colors):
            raise InvalidStructure(f"colors must lie in range({self.b})")

    @classmethod
    def constant(cls, n: int, k: int, b: int, c: int = 0) -> "ColoringAssignment":
        return cls(n, k, b, (c,) * comb(n, k))

    @classmethod
    def from_function(cls, n, k, b, fn) -> "ColoringAssignment":
        return cls(n, k, b, tuple(fn(e) for e in colex_edges(n, k)))

    def is_total(self) -> bool:
        return None not in self.colors

    def color(self, e: Iterable[int]) -> int | None:
        return self.colors[colex_rank(e)]

    def items(self):
        return zip(colex_edges(self.n, self.k), self.colors)


def _vertex_order(H: UniformHypergraph) -> list:
    """Highest degree first, then repeatedly the vertex with most placed neighbours."""
    verts = [v for v in range(H.n) if any(v in e for e in H.edges)]
    if not verts:
        return []
    nbrs = {v: H.neighbors(v) for v in verts}
    order = [max(verts, key=lambda v: (len(nbrs[v]), -v))]
    rest = set(verts) - set(order)
    while rest:
        placed = set(order)
        nxt = max(rest, key=lambda v: (len(nbrs[v] & placed), len(nbrs[v]), -v))
        order.append(nxt)
        rest.remove(nxt)
    return order


def find_monochromatic_copy(H: UniformHypergraph, col: ColoringAssignment, c: int) -> dict | None:
    """An injection of the non-isolated vertices of ``H`` sending every edge to a ``c``-colored edge."""
    if H.k != col.k:
        raise ShapeMismatch(f"uniformities differ: {H.k} vs {col.k}")
    if not col.is_total():
        raise InvalidStructure("coloring is partial")
    if H.n > col.n:
        return None
    order = _vertex_order(H)
    pos = {v: i for i, v in enumerate(order)}
    # edges of H checked at the step where their last vertex is placed
    checks = [[] for _ in order]
    for e in H.edges:
        checks[max(pos[v] for v in e)].append(e)
    img: dict = {}
    used: set = set()

    def ok(step):
        return all(col.color(sorted(img[v] for v in e)) == c for e in checks[step])

    def rec(step):
        if step == len(order):
            return True
        v = order[step]
        for x in range(col.n):
            if x in used:
                continue
            img[v] = x
            used.add(x)
            if ok(step) and rec(step + 1):
                return True
            used.discard(x)
            del img[v]
        return False

    return dict(img) if rec(0) else None


def has_monochromatic_copy(H, col) -> bool:
    return any(find_monochromatic_copy(H, col, c) is not None for c in range(col.b))


def copies_by_last_edge(n: int, H: UniformHypergraph) -> list:
    """For each colex rank ``t``, the edge-rank sets of copies of ``H`` in ``K_n`` whose last edge is ``t``."""
    by_last = [[] for _ in range(comb(n, H.k))]
    edges = list(H.edges)
    if not edges:
        return by_last
    support = sorted({v for e in edges for v in e})
    seen = set()
    for image in itertools.permutations(range(n), len(support)):
        f = dict(zip(support, image))
        ranks = frozenset(colex_rank([f[v] for v in e]) for e in edges)
        if ranks not in seen:
            seen.add(ranks)
            t = max(ranks)
            by_last[t].append(tuple(sorted(ranks - {t})))
    return by_last


class _Search:
    def __init__(self, n, H, b, break_symmetry, node_budget):
        self.n, self.H, self.b = n, H, b
        self.m = comb(n, H.k)
        self.by_last = copies_by_last_edge(n, H)
        self.break_symmetry = break_symmetry
        self.node_budget = node_budget
        self.nodes = 0

    def _allowed(self, t, colors, top):
        limit = min(self.b, top + 2) if self.break_symmetry else self.b
        for c in range(limit):
            if all(any(colors[s] != c for s in rest) for rest in self.by_last[t]):
                yield c

    def run(self, prefix=()) -> tuple | None:
        colors = list(prefix) + [None] * (self.m - len(prefix))
        for t in range(len(prefix)):
            c = colors[t]
            if any(all(colors[s] == c for s in rest) for rest in self.by_last[t]):
                return None
        top = max(prefix, default=-1)

        def rec(t, top):
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                raise BudgetExceeded(f"node budget {self.node_budget} exhausted at n = {self.n}")
            if t == self.m:
                return True
            for c in self._allowed(t, colors, top):
                colors[t] = c
                if rec(t + 1, max(top, c)):
                    return True
            colors[t] = None
            return False

        return tuple(colors) if rec(len(prefix), top) else None

    def prefixes(self, depth):
        """Symmetry-reduced colorings of the first ``depth`` edges, in search order."""
        out = []

        def rec(t, colors, top):
            if t == depth:
                out.append(tuple(colors))
                return
            limit = min(self.b, top + 2) if self.break_symmetry else self.b
            for c in range(limit):
                rec(t + 1, colors + [c], max(top, c))

        rec(0, [], -1)
        return out


def _run_subtree(args):
    n, H, b, break_symmetry, node_budget, prefix = args
    s = _Search(n, H, b, break_symmetry, node_budget)
    try:
        return s.run(prefix), s.nodes, False
    except BudgetExceeded:
        return None, s.nodes, True


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass
class SearchOutcome:
    coloring: ColoringAssignment | None
    nodes: int


def search_good_coloring(n, H, b, break_symmetry=True, node_budget=None, workers=None) -> SearchOutcome:
    """Backtracking search; ``coloring`` is ``None`` when the search space is exhausted.

    With ``workers > 1`` the first few edges are enumerated up front and each
    subtree is searched in its own process. The witness reported is the one from
    the lowest-indexed successful subtree, so the answer does not depend on
    scheduling. The node budget then applies per subtree.
    """
    if n < H.n or not H.edges:
        return SearchOutcome(ColoringAssignment.constant(n, H.k, b), 0)
    workers = default_workers() if workers is None else workers
    search = _Search(n, H, b, break_symmetry, node_budget)
    if workers <= 1 or search.m < 4:
        colors = search.run()
        return SearchOutcome(None if colors is None else ColoringAssignment(n, H.k, b, colors), search.nodes)
    depth = min(search.m - 1, 6)
    jobs = [(n, H, b, break_symmetry, node_budget, p) for p in search.prefixes(depth)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_run_subtree, jobs))
    nodes = sum(r[1] for r in results)
    for colors, _, _ in results:
        if colors is not None:
            return SearchOutcome(ColoringAssignment(n, H.k, b, colors), nodes)
    if any(r[2] for r in results):
        raise BudgetExceeded(f"node budget {node_budget} exhausted in a subtree at n = {n}")
    return SearchOutcome(None, nodes)


def exists_good_coloring(n, H, b, break_symmetry=True, node_budget=None, workers=None) -> ColoringAssignment | None:
    """A b-coloring of ``K_n^(k)`` with no monochromatic copy of ``H``, or ``None``."""
    return search_good_coloring(n, H, b, break_symmetry, node_budget, workers).coloring


@dataclass
class RamseyResult:
    value: int | None
    bracket: tuple
    witness: ColoringAssignment | None
    certificate: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "bracket": list(self.bracket),
            "witness": None if self.witness is None else list(self.witness.colors),
            "certificate": dict(self.certificate),
        }


def ramsey_number(H: UniformHypergraph, b: int, n_max: int, node_budget=None, workers=None) -> RamseyResult:
    """Least ``n <= n_max`` for which every b-coloring of ``K_n^(k)`` has a monochromatic ``H``.

    The result carries a good coloring at ``n - 1`` (verified) and the number of
    search nodes spent exhausting ``n``.
    """
    witness = None
    for n in range(1, n_max + 1):
        try:
            out = search_good_coloring(n, H, b, node_budget=node_budget, workers=workers)
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), bracket=(n, None)) from None
        if out.coloring is None:
            if witness is not None and has_monochromatic_copy(H, witness):
                raise AssertionError("search returned a coloring containing a monochromatic copy")
            cert = {"n": n, "nodes": out.nodes, "edges": comb(n, H.k), "symmetry_breaking": True}
            return RamseyResult(n, (n, n), witness, cert)
        witness = out.coloring
    raise BudgetExceeded(f"every n <= {n_max} admits a good coloring", bracket=(n_max + 1, None))


def partition_ambient(coloring: ColoringAssignment, m: int, N: int) -> ColoredHypergraph:
    """Cut ``[m*N]`` into ``m`` consecutive classes of size ``N``.

    Edges meeting a class twice are dropped, edges of size below ``k`` get the
    single color ``"black"`` and partitionwise k-edges keep their colors.
    """
    if coloring.n != m * N:
        raise ShapeMismatch(f"{coloring.n} vertices cannot be split into {m} classes of {N}")
    k = coloring.k
    palettes = {I: (tuple(range(coloring.b)) if len(I) == k else (BLACK,)) for I in all_indices(m, k)}

    def color(e):
        if len(e) < k:
            return BLACK
        return coloring.color([v.cls * N + v.local for v in e])

    return ColoredHypergraph.from_function([N] * m, k, palettes, color)


def ambient_vertex(v: Vertex, N: int) -> int:
    return v.cls * N + v.local
