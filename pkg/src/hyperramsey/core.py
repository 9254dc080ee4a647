"""Colored r-partite hypergraphs and the complexes and blowups built on them.

Vertices are ``(class, local)`` pairs. An edge is a tuple of vertices sorted by
class with at most one vertex per class; its *index* is the tuple of classes it
touches. Every object here is treated as immutable once built.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import DegreeCapExceeded, IndexNotContained, InvalidStructure

Color = Hashable
Index = tuple


class Vertex(NamedTuple):
    cls: int
    local: int

    def __repr__(self):
        return f"({self.cls},{self.local})"


Edge = tuple


class _Invisible:
    """Reserved color label marking an edge invisible; never a palette color of an ambient."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INVISIBLE"

    def __reduce__(self):
        return "INVISIBLE"


INVISIBLE = _Invisible()


def make_edge(vertices: Iterable) -> Edge:
    """Normalize an iterable of ``(class, local)`` pairs into a canonical edge."""
    vs = sorted(Vertex(int(c), int(l)) for c, l in vertices)
    if not vs:
        raise InvalidStructure("an edge needs at least one vertex")
    for a, b in zip(vs, vs[1:]):
        if a.cls == b.cls:
            raise InvalidStructure(f"edge {vs} has two vertices in class {a.cls}")
    return tuple(vs)


def edge_index(e: Edge) -> Index:
    return tuple(v.cls for v in e)


def subindices(index: Sequence[int], proper: bool = False) -> list[Index]:
    """Nonempty subsets of ``index`` ordered by size, then lexicographically."""
    index = tuple(sorted(index))
    top = len(index) - 1 if proper else len(index)
    return [J for s in range(1, top + 1) for J in itertools.combinations(index, s)]


def all_indices(r: int, k: int) -> list[Index]:
    return [I for s in range(1, min(k, r) + 1) for I in itertools.combinations(range(r), s)]


def restrict_edge(e: Edge, J: Iterable[int]) -> Edge:
    """The sub-edge of ``e`` touching exactly the classes in ``J``."""
    J = set(J)
    if not J:
        raise IndexNotContained("cannot restrict an edge to the empty index")
    sub = tuple(v for v in e if v.cls in J)
    if len(sub) != len(J):
        raise IndexNotContained(f"index {sorted(J)} is not contained in {edge_index(e)}")
    return sub


def sub_edges(e: Edge, proper: bool = False) -> list[Edge]:
    """All nonempty sub-edges of ``e`` in canonical order."""
    top = len(e) - 1 if proper else len(e)
    return [c for s in range(1, top + 1) for c in itertools.combinations(e, s)]


def edge_sort_key(e: Edge):
    return (len(e), edge_index(e), tuple(v.local for v in e))


@dataclass(frozen=True)
class TotalColor:
    """Colors of every nonempty sub-edge of an edge, in canonical subset order.

    The last entry belongs to the edge itself; everything before it is the
    frame color.
    """

    entries: tuple

    @property
    def index(self) -> Index:
        return self.entries[-1][0]

    @property
    def top(self) -> Color:
        return self.entries[-1][1]

    @property
    def frame(self) -> tuple:
        return self.entries[:-1]

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        body = ", ".join(f"{list(J)}:{c!r}" for J, c in self.entries)
        return f"TotalColor({body})"


def _normalize_index(I) -> Index:
    I = tuple(sorted(int(c) for c in I))
    if not I or len(set(I)) != len(I):
        raise InvalidStructure(f"bad index {I!r}")
    return I


class ColoredHypergraph:
    """A k-bound colored r-partite hypergraph with a total coloring.

    ``classes`` lists, per class, either a vertex count or an iterable of local
    vertex labels. Colors are looked up in ``colors`` first and fall back to the
    per-index ``default``; every index without a default must be colored
    explicitly on all of its edges.
    """

    def __init__(
        self,
        classes: Sequence,
        k: int,
        palettes: Mapping,
        colors: Mapping | None = None,
        default: Mapping | None = None,
        caps: Sequence[int] | None = None,
    ):
        if k < 1:
            raise InvalidStructure("k must be positive")
        if not classes:
            raise InvalidStructure("need at least one vertex class")
        vsets = []
        for c in classes:
            locs = range(c) if isinstance(c, int) else c
            locs = tuple(sorted(set(int(x) for x in locs)))
            if locs and locs[0] < 0:
                raise InvalidStructure("local vertex labels must be nonnegative")
            vsets.append(locs)
        self.vertex_sets: tuple = tuple(vsets)
        self._vertex_lookup = [frozenset(s) for s in vsets]
        self.k = k
        self.caps = tuple(caps) if caps is not None else None

        pal = {_normalize_index(I): tuple(cs) for I, cs in palettes.items()}
        for I in all_indices(self.r, k):
            if I not in pal:
                raise InvalidStructure(f"index {list(I)} has no palette")
        for I, cs in pal.items():
            if I[-1] >= self.r or len(I) > k:
                raise InvalidStructure(f"palette for impossible index {list(I)}")
            if not cs or len(set(cs)) != len(cs):
                raise InvalidStructure(f"palette of {list(I)} must be nonempty and distinct")
            if self.caps is not None and len(cs) > self.caps[len(I) - 1]:
                raise InvalidStructure(
                    f"palette of {list(I)} has {len(cs)} colors, cap is {self.caps[len(I) - 1]}"
                )
        self.palettes: dict = pal
        self._palette_sets = {I: frozenset(cs) for I, cs in pal.items()}

        self._default = {}
        for I, c in (default or {}).items():
            I = _normalize_index(I)
            if c not in self._palette_sets.get(I, ()):
                raise InvalidStructure(f"default color {c!r} not in palette of {list(I)}")
            self._default[I] = c

        self._colors = {}
        explicit = Counter()
        for e, c in (colors or {}).items():
            e = e if _is_canonical(e) else make_edge(e)
            self.check_edge(e)
            I = edge_index(e)
            if c not in self._palette_sets[I]:
                raise InvalidStructure(f"color {c!r} of edge {e} not in palette of {list(I)}")
            self._colors[e] = c
            explicit[I] += 1
        for I in all_indices(self.r, k):
            if I not in self._default and explicit[I] != self.num_edges(I):
                raise InvalidStructure(f"coloring of index {list(I)} is not total")
        self._tc_cache: dict = {}

    @classmethod
    def from_function(cls, class_sizes, k, palettes, fn: Callable[[Edge], Color], caps=None):
        """Build an ambient hypergraph by evaluating ``fn`` on every edge."""
        shell = ColoredHypergraph(class_sizes, k, palettes, default={I: cs[0] for I, cs in palettes.items()})
        colors = {e: fn(e) for e in shell.edges()}
        return cls(class_sizes, k, palettes, colors=colors, caps=caps)

    @property
    def r(self) -> int:
        return len(self.vertex_sets)

    @property
    def class_sizes(self) -> tuple:
        return tuple(len(s) for s in self.vertex_sets)

    def vertices(self) -> list:
        return [Vertex(c, l) for c, locs in enumerate(self.vertex_sets) for l in locs]

    def has_vertex(self, v) -> bool:
        return 0 <= v[0] < self.r and v[1] in self._vertex_lookup[v[0]]

    def check_edge(self, e: Edge) -> None:
        if len(e) > self.k:
            raise InvalidStructure(f"edge {e} exceeds the size bound {self.k}")
        for v in e:
            if not self.has_vertex(v):
                raise InvalidStructure(f"vertex {v} is not in the hypergraph")

    def indices(self) -> list:
        return all_indices(self.r, self.k)

    def palette(self, I) -> tuple:
        return self.palettes[tuple(I)]

    def num_edges(self, I) -> int:
        n = 1
        for c in I:
            n *= len(self.vertex_sets[c])
        return n

    def edges(self, I=None) -> Iterator[Edge]:
        """Edges of index ``I`` (or of every index) in canonical order."""
        if I is None:
            for J in self.indices():
                yield from self.edges(J)
            return
        pools = [[Vertex(c, l) for l in self.vertex_sets[c]] for c in I]
        yield from itertools.product(*pools)

    def color(self, e: Edge) -> Color:
        try:
            return self._colors[e]
        except KeyError:
            return self._default[tuple(v[0] for v in e)]

    def explicit_colors(self) -> dict:
        return dict(self._colors)

    def defaults(self) -> dict:
        return dict(self._default)

    def total_color(self, e: Edge) -> TotalColor:
        e = e if _is_canonical(e) else make_edge(e)
        self.check_edge(e)
        return TotalColor(tuple((edge_index(s), self.color(s)) for s in sub_edges(e)))

    def frame_color(self, e: Edge) -> tuple:
        return self.total_color(e).frame

    def _counts(self, I):
        I = tuple(I)
        hit = self._tc_cache.get(I)
        if hit is None:
            totals = Counter()
            for e in self.edges(I):
                totals[TotalColor(tuple((edge_index(s), self.color(s)) for s in sub_edges(e)))] += 1
            frames = Counter()
            for tc, n in totals.items():
                frames[tc.frame] += n
            hit = self._tc_cache[I] = (totals, frames)
        return hit

    def total_color_counts(self, I) -> Counter:
        """Number of index-``I`` edges realizing each total color."""
        return self._counts(I)[0]

    def frame_counts(self, I) -> Counter:
        return self._counts(I)[1]

    def __eq__(self, other):
        if not isinstance(other, ColoredHypergraph) or isinstance(other, Complex) != isinstance(self, Complex):
            return NotImplemented
        if (self.vertex_sets, self.k) != (other.vertex_sets, other.k):
            return False
        return all(self.color(e) == other.color(e) for e in self.edges())

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(classes={list(self.class_sizes)}, k={self.k})"


def _is_canonical(e) -> bool:
    return isinstance(e, tuple) and all(isinstance(v, Vertex) for v in e) and all(
        a.cls < b.cls for a, b in zip(e, e[1:])
    ) and len(e) > 0


class Complex(ColoredHypergraph):
    """A colored hypergraph with at most one designated invisible color per index.

    Downward closure of invisibility is not enforced at construction; use
    :func:`check_complex`. The operations in this module only ever build
    closed complexes.
    """

    def __init__(self, classes, k, palettes, colors=None, default=None, invisible=None, caps=None):
        super().__init__(classes, k, palettes, colors, default, caps)
        inv = {}
        for I, c in (invisible or {}).items():
            I = _normalize_index(I)
            if c not in self._palette_sets.get(I, ()):
                raise InvalidStructure(f"invisible color {c!r} not in palette of {list(I)}")
            inv[I] = c
        self.invisible: dict = inv
        self._visible = None

    @classmethod
    def from_visible(cls, classes, k: int, visible: Mapping, caps=None) -> "Complex":
        """Complex whose only visible edges are the keys of ``visible``."""
        r = len(classes)
        vis = {}
        for e, c in visible.items():
            e = e if _is_canonical(e) else make_edge(e)
            if c is INVISIBLE:
                continue
            vis[e] = c
        used = {I: [INVISIBLE] for I in all_indices(r, k)}
        for e in sorted(vis, key=edge_sort_key):
            I = edge_index(e)
            if I not in used:
                raise InvalidStructure(f"edge {e} does not fit {r} classes with bound {k}")
            if vis[e] not in used[I]:
                used[I].append(vis[e])
        inv = {I: INVISIBLE for I in used}
        return cls(classes, k, used, colors=vis, default=inv, invisible=inv, caps=caps)

    def is_visible(self, e: Edge) -> bool:
        c = self.color(e)
        return c != self.invisible.get(edge_index(e), INVISIBLE)

    def visible_edges(self) -> dict:
        """Visible edges mapped to their colors, in canonical order."""
        if self._visible is None:
            vis = {}
            for I in self.indices():
                inv = self.invisible.get(I, INVISIBLE)
                if self._default.get(I, inv) != inv:
                    for e in self.edges(I):
                        c = self.color(e)
                        if c != inv:
                            vis[e] = c
            for e, c in self._colors.items():
                if c != self.invisible.get(edge_index(e), INVISIBLE):
                    vis[e] = c
            self._visible = {e: vis[e] for e in sorted(vis, key=edge_sort_key)}
        return self._visible

    def visible_of_size(self, s: int) -> dict:
        return {e: c for e, c in self.visible_edges().items() if len(e) == s}

    def bound(self) -> int:
        """Largest size of a visible edge (0 when nothing is visible)."""
        return max((len(e) for e in self.visible_edges()), default=0)

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.vertex_sets, self.k, self.visible_edges()) == (
            other.vertex_sets,
            other.k,
            other.visible_edges(),
        )

    __hash__ = None


def _rebuild(S: Complex, vertex_sets, visible: Mapping, r: int | None = None) -> Complex:
    """A complex keeping ``S``'s palettes and invisible labels with new visible edges."""
    r = len(vertex_sets) if r is None else r
    palettes, inv = {}, {}
    for I in all_indices(r, S.k):
        label = S.invisible.get(I, INVISIBLE)
        base = S.palettes.get(I, ())
        palettes[I] = base if label in base else (label, *base)
        inv[I] = label
    for e, c in visible.items():
        I = edge_index(e)
        if c not in palettes[I]:
            palettes[I] = (*palettes[I], c)
    return Complex(vertex_sets, S.k, palettes, colors=dict(visible), default=inv, invisible=inv)


def check_complex(S: Complex) -> list:
    """Pairs ``(e, e_star)`` where ``e`` is invisible but its super-edge ``e_star`` is visible."""
    out = []
    for big in S.visible_edges():
        for small in sub_edges(big, proper=True):
            if not S.is_visible(small):
                out.append((small, big))
    return out


def induced_subcomplex(S: Complex, U: Iterable) -> Complex:
    """Restriction of ``S`` to the vertex set ``U``; vertex labels are kept."""
    U = {Vertex(*v) for v in U}
    for v in U:
        if not S.has_vertex(v):
            raise InvalidStructure(f"vertex {v} is not in the complex")
    vsets = [tuple(l for l in locs if Vertex(c, l) in U) for c, locs in enumerate(S.vertex_sets)]
    vis = {e: c for e, c in S.visible_edges().items() if all(v in U for v in e)}
    return _rebuild(S, vsets, vis)


def delete_vertex(S: Complex, u) -> Complex:
    u = Vertex(*u)
    return induced_subcomplex(S, [v for v in S.vertices() if v != u])


def truncate(B: Complex, i: int) -> Complex:
    """Make every edge of size greater than ``i`` invisible."""
    if not 0 <= i <= B.k:
        raise InvalidStructure(f"truncation level {i} outside [0, {B.k}]")
    vis = {e: c for e, c in B.visible_edges().items() if len(e) <= i}
    return _rebuild(B, B.vertex_sets, vis)


def max_degree(B: Complex) -> int:
    deg = Counter()
    for e in B.visible_of_size(2):
        deg[e[0]] += 1
        deg[e[1]] += 1
    return max(deg.values(), default=0)


def pair_adjacency(B: Complex) -> dict:
    adj = {v: set() for v in B.vertices()}
    for a, b in B.visible_of_size(2):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def visible_incidence(B: Complex, size: int) -> Counter:
    """Per vertex, how many visible edges of the given size contain it."""
    cnt = Counter({v: 0 for v in B.vertices()})
    for e in B.visible_of_size(size):
        for v in e:
            cnt[v] += 1
    return cnt


def graph_distances(B: Complex, u) -> dict:
    """Distances from ``u`` in the visible pair graph; unreachable vertices are absent."""
    u = Vertex(*u)
    adj = pair_adjacency(B)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def neighborhood_complex(B: Complex, u, A: Iterable[int]) -> Complex:
    u = Vertex(*u)
    if not B.has_vertex(u):
        raise InvalidStructure(f"vertex {u} is not in the complex")
    A = set(A)
    dist = graph_distances(B, u)
    return induced_subcomplex(B, [v for v, d in dist.items() if d in A])


def relabel_classes(S: Complex, class_map: Mapping[int, int], r: int) -> Complex:
    """Move class ``c`` of ``S`` to class ``class_map[c]`` of an ``r``-class complex."""
    if len(set(class_map.values())) != len(class_map) or any(not 0 <= t < r for t in class_map.values()):
        raise InvalidStructure("class map must be injective into range(r)")
    vsets = [()] * r
    for c, locs in enumerate(S.vertex_sets):
        if locs:
            vsets[class_map[c]] = locs
    vis = {}
    for e, col in S.visible_edges().items():
        vis[make_edge((class_map[v.cls], v.local) for v in e)] = col
    return Complex.from_visible(vsets, S.k, vis)


@dataclass(frozen=True)
class BlowupSpec:
    """Replace every pattern vertex ``v`` by ``multiplicity[v]`` copies (default 1)."""

    pattern: Complex
    multiplicity: Mapping = field(default_factory=dict)
    degree_cap: int | None = None

    def __post_init__(self):
        for v, m in self.multiplicity.items():
            if m < 1:
                raise InvalidStructure(f"multiplicity of {v} must be positive")
            if not self.pattern.has_vertex(v):
                raise InvalidStructure(f"{v} is not a pattern vertex")

    def mult(self, v) -> int:
        return self.multiplicity.get(Vertex(*v), 1)

    def copies(self) -> dict:
        """Pattern vertex -> list of its copies, numbered consecutively per class."""
        out = {}
        for c, locs in enumerate(self.pattern.vertex_sets):
            nxt = 0
            for l in locs:
                m = self.mult((c, l))
                out[Vertex(c, l)] = [Vertex(c, nxt + j) for j in range(m)]
                nxt += m
        return out

    def projection(self) -> dict:
        return {w: v for v, ws in self.copies().items() for w in ws}


def build_blowup(spec: BlowupSpec) -> Complex:
    """The full blowup: an edge over copies is visible iff its projection is."""
    S = spec.pattern
    copies = spec.copies()
    vsets = []
    for c, locs in enumerate(S.vertex_sets):
        vsets.append(range(sum(spec.mult((c, l)) for l in locs)))
    vis = {}
    # Copies of one pattern vertex share a class, so no edge can contain two of them.
    for e, col in S.visible_edges().items():
        for combo in itertools.product(*(copies[v] for v in e)):
            vis[combo] = col
    B = _rebuild(S, [tuple(x) for x in vsets], vis)
    if spec.degree_cap is not None:
        d = max_degree(B)
        if d > spec.degree_cap:
            raise DegreeCapExceeded(f"blowup has maximum degree {d} > {spec.degree_cap}")
    return B


def k_edge_degree_bound(B: Complex) -> int:
    """``C(Delta(B), k-1)``, the bound on visible size-k edges through any vertex."""
    return comb(max_degree(B), B.k - 1)


def tc_set(G: ColoredHypergraph, s: int) -> set:
    if not 1 <= s <= G.k:
        raise InvalidStructure(f"size {s} outside [1, {G.k}]")
    out = set()
    for I in G.indices():
        if len(I) == s:
            out.update(G.total_color_counts(I))
    return out


def total_color(G: ColoredHypergraph, e) -> TotalColor:
    return G.total_color(e)
