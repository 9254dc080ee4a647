"""Seeded experiment runs over random uniform colorings."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .core import BlowupSpec, Vertex, build_blowup, max_degree
from .counting import EtaProfile, verify_counting_inequality
from .density import relative_density
from .documents import jsonable
from .embedding import embedding_probability
from .errors import HyperRamseyError
from .generate import ExperimentConfig, full_pattern, random_instance, sample_rng


def normalization_ok(G) -> bool:
    """Densities of the total colors sharing a realized frame sum to exactly 1."""
    for I in G.indices():
        sums: dict = {}
        for tc in G.total_color_counts(I):
            sums[tc.frame] = sums.get(tc.frame, 0) + relative_density(G, tc)
        if any(s != 1 for s in sums.values()):
            return False
    return True


def ensemble_product(config: ExperimentConfig) -> Fraction:
    """Expected embedding probability of the full one-vertex-per-class pattern."""
    S = full_pattern(len(config.class_sizes), config.k)
    prod = Fraction(1)
    for e in S.visible_edges():
        prod /= config.palette_sizes[len(e) - 1]
    return prod


def _lemma_instance(config: ExperimentConfig):
    S = full_pattern(len(config.class_sizes), config.k)
    B = build_blowup(BlowupSpec(S, {Vertex(0, 0): 2}))
    return S, B, Vertex(0, 1)


def run_experiment(config: ExperimentConfig) -> dict:
    """Aggregate exact per-sample checks into a report of fractions and counts."""
    S, B, u = _lemma_instance(config)
    profile = EtaProfile(config.eta, config.rho)
    delta = max(config.delta, max_degree(B))
    probs, errors = [], []
    normalized = 0
    lemma = {"hypotheses_passed": 0, "holds": 0, "max_eta_threshold": None, "min_ratio": None}
    for i in range(config.samples):
        G = random_instance(config, sample_rng(config, i))
        normalized += normalization_ok(G)
        probs.append(embedding_probability(S, G))
        try:
            rep = verify_counting_inequality(B, u, S, G, profile, delta, config.vertex_cap)
        except HyperRamseyError as exc:
            errors.append({"sample": i, "error": type(exc).__name__, "message": str(exc)})
            continue
        if not rep.hypotheses_hold:
            continue
        lemma["hypotheses_passed"] += 1
        lemma["holds"] += rep.holds
        t = rep.eta_threshold
        if t is not None and (lemma["max_eta_threshold"] is None or t > lemma["max_eta_threshold"]):
            lemma["max_eta_threshold"] = t
        if rep.product:
            ratio = rep.lhs / rep.product
            if lemma["min_ratio"] is None or ratio < lemma["min_ratio"]:
                lemma["min_ratio"] = ratio

    n = len(probs)
    report = {"config": config.to_dict(), "samples": n, "errors": errors}
    if n == 0:
        return report
    mean = sum(probs, Fraction(0)) / n
    var = sum((p - mean) ** 2 for p in probs) / (n - 1) if n > 1 else Fraction(0)
    target = ensemble_product(config)
    report.update(
        {
            "normalization_pass": Fraction(normalized, n),
            "chain_rule": {
                "mean": mean,
                "ensemble_product": target,
                "sample_variance": var,
                "within_3se": (mean - target) ** 2 * n <= 9 * var,
                "max_discrepancy": max(abs(p - target) for p in probs),
            },
            "counting_lemma": lemma,
        }
    )
    return report


def _approx(x: Fraction, digits: int = 6) -> str:
    """Decimal rendering for human-readable output only."""
    x = Fraction(x)
    scaled = round(abs(x) * 10**digits)
    sign = "-" if x < 0 else ""
    return f"{sign}{scaled // 10**digits}.{scaled % 10**digits:0{digits}d}"


def format_report(report: dict) -> str:
    lines = [f"samples: {report['samples']}"]
    if report["samples"]:
        cr = report["chain_rule"]
        se = Fraction(isqrt(int(cr["sample_variance"] * 10**12 / report["samples"])), 10**6)
        lines += [
            f"normalization pass rate: {_approx(report['normalization_pass'])}",
            f"chain rule: mean {_approx(cr['mean'])} vs product {_approx(cr['ensemble_product'])}"
            f" (se {_approx(se)}, within 3 se: {cr['within_3se']})",
            f"chain rule max |P - product|: {_approx(cr['max_discrepancy'])}",
        ]
        lm = report["counting_lemma"]
        thr = lm["max_eta_threshold"]
        lines += [
            f"counting lemma: hypotheses passed {lm['hypotheses_passed']}, inequality held {lm['holds']}",
            f"largest eta_k needed: {'n/a' if thr is None else _approx(thr)}",
        ]
    lines.append(f"errors: {len(report['errors'])}")
    return "\n".join(lines) + "\n"


def report_json(report: dict):
    return jsonable(report)
