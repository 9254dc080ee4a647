"""Toy-scale replay of the argument that finds a monochromatic blowup.

Given a regularized coloring ``G_star`` of an m-partite ambient and a bounded
degree k-uniform hypergraph ``B``, the replay

1. flags exceptional edges of ``G_star``,
2. picks one representative per class with no exceptional induced edge,
3. finds ``Delta + 1`` representatives whose k-edges share one color,
4. turns ``B`` into a colored blowup of the complex on those representatives,
5. searches for an injective embedding of that blowup into ``G_star``.

Randomness comes only from ``random.Random(seed)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .core import ColoredHypergraph, Complex, Vertex, sub_edges
from .density import ExceptionalReport, RegularityWitness, default_rho, exceptional_edges
from .embedding import embeds, find_embedding
from .ramsey import ColoringAssignment, UniformHypergraph, colex_edges, find_monochromatic_copy

STAGES = ("NoCleanTuple", "NoMonochromaticClique", "NoEmbedding")


def greedy_partition(B: UniformHypergraph) -> list:
    """Class of each vertex: a proper coloring of the pair graph in vertex order.

    Greedy never needs more than ``max_degree + 1`` classes, and every edge of
    ``B`` ends up with its vertices in distinct classes.
    """
    part = []
    for v in range(B.n):
        taken = {part[w] for w in B.neighbors(v) if w < v}
        part.append(next(c for c in itertools.count() if c not in taken))
    return part


def cascade_warnings(m: int, r: int, k: int, b_k: int, alpha) -> list:
    """Warnings for parameter orderings the argument needs but cannot enforce."""
    alpha = Fraction(alpha)
    out = []
    if not r <= m:
        out.append(f"r = {r} representatives requested from only m = {m} classes")
    if not max(r, k, b_k) <= m:
        out.append(f"m = {m} is not at least r, k and b_k ({r}, {k}, {b_k})")
    expected = sum(comb(m, i) for i in range(1, k + 1)) * 2 * alpha
    if not expected < 1:
        out.append(f"expected exceptional induced edges {expected} is not below 1; alpha is too large for m")
    return out


@dataclass
class PipelineReport:
    success: bool
    stage: str | None
    exceptional: ExceptionalReport
    tuple_: tuple | None = None
    representatives: tuple | None = None
    color: object = None
    pattern: Complex | None = None
    blowup: Complex | None = None
    parts: list | None = None
    embedding: dict | None = None
    tuple_source: str | None = None
    warnings: list = field(default_factory=list)


def _clean(G, exc, chosen) -> bool:
    """No induced edge on the representatives chosen so far (last one included) is exceptional."""
    last = len(chosen) - 1
    verts = [Vertex(c, l) for c, l in enumerate(chosen)]
    for size in range(1, min(G.k, len(verts)) + 1):
        for rest in itertools.combinations(verts[:last], size - 1):
            if (*rest, verts[last]) in exc:
                return False
    return True


def find_clean_tuple(G: ColoredHypergraph, exc: dict, rng: random.Random, restarts: int = 100) -> tuple:
    """Random restarts, then exhaustive search in lexicographic order.

    Returns ``(tuple, source)`` with source ``"random"`` or ``"exhaustive"``, or
    ``(None, None)``.
    """
    for _ in range(restarts):
        cand = tuple(rng.choice(locs) for locs in G.vertex_sets)
        if all(_clean(G, exc, cand[: i + 1]) for i in range(len(cand))):
            return cand, "random"

    chosen: list = []

    def rec(c):
        if c == G.r:
            return True
        for loc in G.vertex_sets[c]:
            chosen.append(loc)
            if _clean(G, exc, chosen) and rec(c + 1):
                return True
            chosen.pop()
        return False

    return (tuple(chosen), "exhaustive") if rec(0) else (None, None)


def blowup_complex(B: UniformHypergraph, parts, classes, S: Complex, color) -> tuple:
    """The colored blowup: k-edges of ``B`` get ``color``, their sub-edges copy ``S``.

    ``classes[j]`` is the ambient class hosting part ``j``. Vertex ``v`` of ``B``
    becomes ``Vertex(classes[parts[v]], position of v within its part)``.
    Returns the complex and the vertex map.
    """
    seen: dict = {}
    vmap = {}
    for v in range(B.n):
        c = classes[parts[v]]
        vmap[v] = Vertex(c, seen.setdefault(c, 0))
        seen[c] += 1
    s_vertex = {v.cls: v for v in S.vertices()}
    vis = {}
    for e in B.edges:
        top = tuple(sorted(vmap[v] for v in e))
        for sub in sub_edges(top):
            if len(sub) == B.k:
                vis[sub] = color
            else:
                vis[sub] = S.color(tuple(s_vertex[v.cls] for v in sub))
    vsets = [range(seen.get(c, 0)) for c in range(S.r)]
    return Complex.from_visible(vsets, S.k, vis), vmap


def pipeline_demo(
    G_star: ColoredHypergraph,
    witness: RegularityWitness,
    B: UniformHypergraph,
    alpha,
    seed: int,
    restarts: int = 100,
) -> PipelineReport:
    """Replay the five stages; the report names the first stage that failed."""
    rng = random.Random(seed)
    alpha = Fraction(alpha)
    k = G_star.k
    delta = B.max_degree()
    r = delta + 1
    exc = exceptional_edges(G_star, default_rho(alpha, G_star), witness, alpha)
    top_colors = list(dict.fromkeys(c for I in G_star.indices() if len(I) == k for c in G_star.palettes[I]))
    b_k = max(len(top_colors), 1)
    rep = PipelineReport(False, None, exc, warnings=cascade_warnings(G_star.r, r, k, b_k, alpha))

    tup, source = find_clean_tuple(G_star, exc.edges, rng, restarts)
    if tup is None:
        rep.stage = "NoCleanTuple"
        return rep
    rep.tuple_, rep.tuple_source = tup, source

    m = G_star.r
    reduced = ColoringAssignment(
        m,
        k,
        b_k,
        tuple(
            top_colors.index(G_star.color(tuple(Vertex(c, tup[c]) for c in e)))
            for e in colex_edges(m, k)
        ),
    )
    clique = UniformHypergraph.complete(r, k)
    found = None
    for c in range(b_k):
        copy = find_monochromatic_copy(clique, reduced, c)
        if copy is not None:
            found = (c, tuple(sorted(copy.values())))
            break
    if found is None:
        rep.stage = "NoMonochromaticClique"
        return rep
    c_idx, reps = found
    if len(reps) < r:
        # complete(r, k) with r < k has no edges; any r classes will do
        reps = tuple(range(r))
    rep.representatives = reps
    color = top_colors[c_idx] if top_colors else None
    rep.color = color

    S_vis = {}
    rep_vertices = [Vertex(c, tup[c]) for c in reps]
    for size in range(1, k + 1):
        for e in itertools.combinations(rep_vertices, size):
            S_vis[e] = G_star.color(e)
    vsets = [[tup[c]] if c in reps else [] for c in range(m)]
    S = Complex.from_visible(vsets, k, S_vis)
    rep.pattern = S

    parts = greedy_partition(B)
    rep.parts = parts
    blow, vmap = blowup_complex(B, parts, reps, _as_local_pattern(S), color)
    rep.blowup = blow
    phi = find_embedding(blow, G_star, injective=True)
    if phi is None:
        rep.stage = "NoEmbedding"
        return rep
    rep.embedding = {v: phi[vmap[v]] for v in range(B.n)}
    rep.success = True
    return rep


def _as_local_pattern(S: Complex) -> Complex:
    """Same complex with each representative relabelled to local 0."""
    vis = {tuple(Vertex(v.cls, 0) for v in e): col for e, col in S.visible_edges().items()}
    vsets = [[0] if locs else [] for locs in S.vertex_sets]
    return Complex.from_visible(vsets, S.k, vis)


def verify_pipeline_embedding(G_star: ColoredHypergraph, B: UniformHypergraph, report: PipelineReport) -> bool:
    """Independent check: injective, class-respecting, every k-edge of ``B`` lands on ``report.color``."""
    emb = report.embedding
    if emb is None or len(set(emb.values())) != len(emb):
        return False
    for e in B.edges:
        img = tuple(sorted(emb[v] for v in e))
        if len({x.cls for x in img}) != len(img):
            return False
        if G_star.color(img) != report.color:
            return False
    return embeds(report.blowup, {v: emb[u] for u, v in _blowup_vertex_map(B, report).items()}, G_star)


def _blowup_vertex_map(B, report) -> dict:
    seen: dict = {}
    out = {}
    for v in range(B.n):
        c = report.representatives[report.parts[v]]
        out[v] = Vertex(c, seen.setdefault(c, 0))
        seen[c] += 1
    return out
