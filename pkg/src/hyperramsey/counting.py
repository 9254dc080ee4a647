"""Exact verifiers for the blowup counting lemma and its supporting estimates.

The eta/rho profile is always an input. Nothing here tries to derive eta; the
functions evaluate both sides of the relevant inequalities exactly on a given
instance and report what held.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple

from .core import BlowupSpec, ColoredHypergraph, Complex, Vertex, _rebuild, build_blowup, delete_vertex, max_degree
from .density import edge_densities
from .embedding import (
    _Plan,
    check_induced,
    conditional_extension_probability,
    count_embeddings,
    find_embedding,
    iter_embeddings,
)
from .errors import ClassTooSmall, InvalidStructure, NoEmbeddingOfBase, ZeroDensityDivisor

BETA_CONSTANT = Fraction(81, 10)


@dataclass(frozen=True)
class EtaProfile:
    """Per-size eta and rho values, both nondecreasing in the edge size."""

    eta: tuple
    rho: tuple

    def __post_init__(self):
        eta = tuple(Fraction(x) for x in self.eta)
        rho = tuple(Fraction(x) for x in self.rho)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "rho", rho)
        if len(eta) != len(rho) or not eta:
            raise InvalidStructure("eta and rho need one entry per edge size")
        if any(not 0 < x < 1 for x in eta):
            raise InvalidStructure("eta values must lie in (0, 1)")
        if any(not 0 < x <= 1 for x in rho):
            raise InvalidStructure("rho values must lie in (0, 1]")
        if list(eta) != sorted(eta) or list(rho) != sorted(rho):
            raise InvalidStructure("eta and rho must be nondecreasing")

    @property
    def k(self) -> int:
        return len(self.eta)

    def eta_at(self, size: int) -> Fraction:
        return self.eta[size - 1]

    def rho_at(self, size: int) -> Fraction:
        return self.rho[size - 1]

    def with_eta(self, eta) -> "EtaProfile":
        return EtaProfile(tuple(eta), self.rho)


def integer_root(n: int, q: int) -> int:
    """``floor(n ** (1/q))`` for a nonnegative integer ``n``."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + q - 1) // q)
    while True:
        y = ((q - 1) * x + n // x ** (q - 1)) // q
        if y >= x:
            break
        x = y
    while x ** q > n:
        x -= 1
    while (x + 1) ** q <= n:
        x += 1
    return x


def power_bounds(x: Fraction, exponent: Fraction, bits: int = 64) -> tuple:
    """Rationals ``lo <= x**exponent <= hi`` with ``hi - lo <= 2**-bits``.

    ``lo == hi`` exactly when the power is a dyadic rational at that resolution.
    """
    x, exponent = Fraction(x), Fraction(exponent)
    if x < 0 or exponent <= 0:
        raise ValueError("need x >= 0 and a positive exponent")
    p, q = exponent.numerator, exponent.denominator
    y = x ** p
    scaled = y * (1 << (bits * q))
    n = scaled.numerator // scaled.denominator
    root = integer_root(n, q)
    lo = Fraction(root, 1 << bits)
    exact = root ** q == n and scaled.denominator == 1
    return lo, lo if exact else lo + Fraction(1, 1 << bits)


def automorphisms(S: Complex) -> list:
    """Class-preserving vertex permutations that map visible edges to equally colored ones."""
    vis = S.visible_edges()
    per_class = [list(itertools.permutations(locs)) for locs in S.vertex_sets]
    out = []
    for choice in itertools.product(*per_class):
        sigma = {}
        for c, (locs, img) in enumerate(zip(S.vertex_sets, choice)):
            for a, b in zip(locs, img):
                sigma[Vertex(c, a)] = Vertex(c, b)
        if all(vis.get(tuple(sigma[v] for v in e)) == col for e, col in vis.items()):
            out.append(sigma)
    return out


class TestBlowup(NamedTuple):
    multiplicity: tuple
    spec: BlowupSpec
    complex: Complex


def _neighbors(S: Complex) -> dict:
    adj = {v: set() for v in S.vertices()}
    for a, b in S.visible_of_size(2):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def enumerate_test_blowups(S: Complex, delta: int, vertex_cap: int) -> Iterator[TestBlowup]:
    """Full blowups of ``S`` with maximum degree at most ``2*delta`` and few vertices.

    The vertex limit is ``min(2 * delta**(2k), vertex_cap)``. Multiplicity vectors
    are listed by total size, then lexicographically in vertex order, keeping one
    representative per orbit of the color-preserving automorphisms of ``S``.
    """
    verts = S.vertices()
    n = len(verts)
    limit = min(2 * delta ** (2 * S.k), vertex_cap)
    if limit < n:
        return
    adj = _neighbors(S)
    idx = {v: i for i, v in enumerate(verts)}
    nbr_idx = [[idx[w] for w in sorted(adj[v])] for v in verts]
    auts = [[idx[sig[v]] for v in verts] for sig in automorphisms(S)]

    def ok_degree(m):
        return all(sum(m[j] for j in nbr_idx[i]) <= 2 * delta for i in range(n))

    def canonical(m):
        return all(m <= tuple(m[a[i]] for i in range(n)) for a in auts)

    def compositions(total, parts):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(1, total - parts + 2):
            for rest in compositions(total - first, parts - 1):
                yield (first, *rest)

    for total in range(n, limit + 1):
        for m in compositions(total, n):
            if ok_degree(m) and canonical(m):
                spec = BlowupSpec(S, dict(zip(verts, m)))
                yield TestBlowup(m, spec, build_blowup(spec))


def product_interval(S: Complex, G: ColoredHypergraph, profile: EtaProfile, color_map=None) -> tuple:
    """Bounds ``prod min(1,(1+eta)d)`` and ``prod max(0,(1-eta)d)`` over visible edges, plus ``prod d``."""
    lo, hi, mid = Fraction(1), Fraction(1), Fraction(1)
    for e, d in edge_densities(S, G, color_map).items():
        eta = profile.eta_at(len(e))
        lo *= max(Fraction(0), (1 - eta) * d)
        hi *= min(Fraction(1), (1 + eta) * d)
        mid *= d
    return lo, hi, mid


@dataclass
class IntervalCheck:
    multiplicity: tuple
    probability: Fraction
    lower: Fraction
    upper: Fraction
    product: Fraction

    @property
    def ok(self) -> bool:
        return self.lower <= self.probability <= self.upper

    @property
    def ratio(self) -> Fraction | None:
        return self.probability / self.product if self.product else None


def interval_check(S: Complex, G, profile: EtaProfile, color_map=None, multiplicity=()) -> IntervalCheck:
    lo, hi, mid = product_interval(S, G, profile, color_map)
    plan = _Plan(S, G, color_map=color_map)
    return IntervalCheck(tuple(multiplicity), Fraction(plan.count(), plan.denominator), lo, hi, mid)


@dataclass
class BlowupCountReport:
    """Outcome of checking embedding probabilities of test blowups against their product intervals."""

    passed: bool
    checked: list = field(default_factory=list)
    failure: IntervalCheck | None = None
    worst_ratio: Fraction | None = None
    worst_multiplicity: tuple | None = None


def check_blowup_counts(S: Complex, G, profile: EtaProfile, delta: int, vertex_cap: int, color_map=None) -> BlowupCountReport:
    """Every test blowup ``S'`` must satisfy ``P[S' -> G]`` in ``prod (1 ±̇ eta) d``.

    Stops at the first violation. ``worst_ratio`` is the ratio ``P / prod d``
    farthest from 1 among the blowups examined.
    """
    rep = BlowupCountReport(passed=True)
    worst = None
    for tb in enumerate_test_blowups(S, delta, vertex_cap):
        chk = interval_check(tb.complex, G, profile, color_map, tb.multiplicity)
        rep.checked.append(chk)
        ratio = chk.ratio
        if ratio is not None and (worst is None or abs(ratio - 1) > worst):
            worst = abs(ratio - 1)
            rep.worst_ratio = ratio
            rep.worst_multiplicity = tb.multiplicity
        if not chk.ok:
            rep.passed = False
            rep.failure = chk
            break
    return rep


@dataclass
class DensityFloorReport:
    passed: bool
    densities: dict
    offending: list


def check_density_floor(S: Complex, G, profile: EtaProfile, color_map=None) -> DensityFloorReport:
    """Each visible edge of ``S`` must have density strictly above ``rho`` of its size."""
    dens = edge_densities(S, G, color_map)
    bad = [e for e, d in dens.items() if not d > profile.rho_at(len(e))]
    return DensityFloorReport(not bad, dens, bad)


def extension_error(phi: Mapping, B_small: Complex, B_big: Complex, G, color_map=None) -> Fraction:
    """Squared relative deviation of the extension probability from its density product."""
    p = conditional_extension_probability(B_big, B_small, phi, G, color_map)
    return _squared_deviation(p, _new_edge_product(B_small, B_big, G, color_map))


def _new_edge_product(B_small, B_big, G, color_map) -> Fraction:
    old = B_small.visible_edges()
    prod = Fraction(1)
    for e, d in edge_densities(B_big, G, color_map).items():
        if e not in old:
            prod *= d
    if prod == 0:
        raise ZeroDensityDivisor("a new visible edge has density zero")
    return prod


def _squared_deviation(p: Fraction, prod: Fraction) -> Fraction:
    return (p / prod - 1) ** 2


def split_complex(B_small: Complex, B_big: Complex) -> tuple:
    """Duplicate ``V(B_big) - V(B_small)``; edges meeting both copies are invisible.

    Returns the split complex and the map from original new vertices to copies.
    """
    check_induced(B_small, B_big)
    base = set(B_small.vertices())
    new = [v for v in B_big.vertices() if v not in base]
    copy = {}
    vsets = [list(locs) for locs in B_big.vertex_sets]
    for c, locs in enumerate(B_big.vertex_sets):
        nxt = (max(locs) + 1) if locs else 0
        for v in new:
            if v.cls == c:
                copy[v] = Vertex(c, nxt)
                vsets[c].append(nxt)
                nxt += 1
    vis = {}
    for e, col in B_big.visible_edges().items():
        vis[e] = col
        if any(v in copy for v in e):
            vis[tuple(copy.get(v, v) for v in e)] = col
    return _rebuild(B_big, [tuple(s) for s in vsets], vis), copy


def beta_bound(level: int, delta: int, k: int, profile: EtaProfile) -> Fraction:
    """``8.1 * 2**(delta**(2k)) * eta_level`` with ``delta`` raised to at least 2."""
    d = max(delta, 2)
    return BETA_CONSTANT * (1 << (d ** (2 * k))) * profile.eta_at(level)


@dataclass
class ExtensionStats:
    mean: Fraction
    beta: Fraction
    level: int
    base_embeddings: int
    split_check: IntervalCheck

    @property
    def within(self) -> bool:
        return self.mean <= self.beta


def mean_extension_error(B_small: Complex, B_big: Complex, G, profile: EtaProfile, delta: int, color_map=None) -> ExtensionStats:
    """Average extension error over the maps that embed ``B_small``, with its beta bound.

    ``split_check`` records whether the split complex used to bound the second
    moment satisfies its own product interval.
    """
    check_induced(B_small, B_big)
    k = profile.k
    d = max(delta, 2)
    if len(B_big.vertices()) > d ** (2 * k):
        raise InvalidStructure(f"{len(B_big.vertices())} vertices exceed delta**(2k) = {d ** (2 * k)}")
    level = max(B_big.bound(), 1)
    prod = _new_edge_product(B_small, B_big, G, color_map)
    total, count = Fraction(0), 0
    for phi in iter_embeddings(B_small, G, color_map=color_map):
        p = Fraction(
            count_embeddings(B_big, G, fixed=phi, color_map=color_map),
            _Plan(B_big, G, fixed=phi, color_map=color_map).denominator,
        )
        total += _squared_deviation(p, prod)
        count += 1
    if count == 0:
        raise NoEmbeddingOfBase("no partitionwise map embeds the base complex")
    B_star, _ = split_complex(B_small, B_big)
    return ExtensionStats(
        total / count,
        beta_bound(level, delta, k, profile),
        level,
        count,
        interval_check(B_star, G, profile, color_map),
    )


def mean_extension_error_by_moments(B_small: Complex, B_big: Complex, G, color_map=None) -> Fraction:
    """Same mean as :func:`mean_extension_error`, computed from three embedding counts.

    With ``X`` the extension probability and ``D`` the density product,
    ``E[X | base] = P[B_big]/P[B_small]`` and ``E[X^2 | base] = P[split]/P[B_small]``.
    """
    prod = _new_edge_product(B_small, B_big, G, color_map)
    B_star, _ = split_complex(B_small, B_big)

    def prob(S):
        plan = _Plan(S, G, color_map=color_map)
        return Fraction(plan.count(), plan.denominator)

    p_small = prob(B_small)
    if p_small == 0:
        raise NoEmbeddingOfBase("no partitionwise map embeds the base complex")
    ex = prob(B_big) / p_small
    ex2 = prob(B_star) / p_small
    return (ex2 - 2 * prod * ex + prod * prod) / (prod * prod)


@dataclass
class LemmaReport:
    blowup_counts: BlowupCountReport | None
    density_floor: DensityFloorReport
    lhs: Fraction
    rhs: Fraction
    rhs_lower: Fraction
    product: Fraction
    holds: bool
    eta_threshold: Fraction

    @property
    def hypotheses_hold(self) -> bool:
        return self.density_floor.passed and (self.blowup_counts is None or self.blowup_counts.passed)


def _projection(B: Complex, S: Complex, projection, color_map=None):
    if projection is not None:
        return projection
    phi = find_embedding(B, S)
    if phi is None:
        raise InvalidStructure("B does not embed in S, so it is not a blowup of S")
    return phi


def verify_counting_inequality(
    B: Complex,
    u,
    S: Complex,
    G: ColoredHypergraph,
    profile: EtaProfile,
    delta: int,
    vertex_cap: int,
    projection: Mapping | None = None,
    exponent=Fraction(1, 4),
    check_hypotheses: bool = True,
    color_map=None,
) -> LemmaReport:
    """Compare the conditional one-vertex extension probability with its lower bound.

    The left side is ``P[B -> G] / P[B - u -> G]``. The right side uses a rational
    lower bound on ``eta_k ** exponent``, so it is rounded up and a reported
    ``holds`` is never an artifact of rounding. ``eta_threshold`` is the
    smallest ``eta_k`` for which the inequality would hold on this instance.
    """
    u = Vertex(*u)
    if not B.has_vertex(u):
        raise InvalidStructure(f"{u} is not a vertex of B")
    if max_degree(B) > delta:
        raise InvalidStructure(f"B has maximum degree {max_degree(B)} > {delta}")
    _projection(B, S, projection)
    blow = check_blowup_counts(S, G, profile, delta, vertex_cap, color_map) if check_hypotheses else None
    floor = check_density_floor(S, G, profile, color_map)

    n_all = count_embeddings(B, G, color_map=color_map)
    n_rest = count_embeddings(delete_vertex(B, u), G, color_map=color_map)
    if n_rest == 0:
        raise NoEmbeddingOfBase("no map embeds B with the vertex removed")
    lhs = Fraction(n_all, n_rest * len(G.vertex_sets[u.cls]))
    prod = Fraction(1)
    for e, d in edge_densities(B, G, color_map).items():
        if u in e:
            prod *= d
    root_lo, root_hi = power_bounds(profile.eta_at(G.k), Fraction(exponent))
    rhs = (1 - root_lo) * prod
    rhs_lower = (1 - root_hi) * prod
    threshold = _eta_threshold(lhs, prod, Fraction(exponent))
    return LemmaReport(blow, floor, lhs, rhs, rhs_lower, prod, lhs >= rhs, threshold)


def _eta_threshold(lhs, prod, exponent):
    # holds iff eta**exponent >= 1 - lhs/prod; exact when 1/exponent is an integer
    if prod == 0 or lhs >= prod:
        return Fraction(0)
    if exponent.numerator != 1:
        return None
    return (1 - lhs / prod) ** exponent.denominator


@dataclass
class InjectiveBoundReport:
    blowup_counts: BlowupCountReport | None
    density_floor: DensityFloorReport
    probability: Fraction
    bound: Fraction
    holds: bool
    witness: object

    @property
    def positive(self) -> bool:
        return self.bound > 0

    @property
    def hypotheses_hold(self) -> bool:
        return self.density_floor.passed and (self.blowup_counts is None or self.blowup_counts.passed)


def verify_injective_bound(
    B: Complex,
    S: Complex,
    G: ColoredHypergraph,
    profile: EtaProfile,
    delta: int,
    vertex_cap: int,
    projection: Mapping | None = None,
    exponent=Fraction(1, 4),
    check_hypotheses: bool = True,
    color_map=None,
) -> InjectiveBoundReport:
    """Injective embedding probability against ``(1 - eta_k**e)**|V(B)| * prod d``.

    Requires ``|V_i(B)| < eta_1 * |class i|`` in every class. When the
    probability is positive a witness injection is found by backtracking.
    """
    for c, locs in enumerate(B.vertex_sets):
        if locs and not len(locs) < profile.eta_at(1) * len(G.vertex_sets[c]):
            raise ClassTooSmall(
                f"class {c}: {len(locs)} pattern vertices, need fewer than eta_1 * {len(G.vertex_sets[c])}"
            )
    _projection(B, S, projection)
    blow = check_blowup_counts(S, G, profile, delta, vertex_cap, color_map) if check_hypotheses else None
    floor = check_density_floor(S, G, profile, color_map)
    plan = _Plan(B, G, injective=True, color_map=color_map)
    p = Fraction(plan.count(), plan.denominator)
    root_lo, _ = power_bounds(profile.eta_at(G.k), Fraction(exponent))
    bound = (1 - root_lo) ** len(B.vertices())
    for d in edge_densities(B, G, color_map).values():
        bound *= d
    witness = find_embedding(B, G, injective=True, color_map=color_map) if p > 0 else None
    return InjectiveBoundReport(blow, floor, p, bound, p >= bound, witness)
