"""Command-line entry point.

Exit codes: 0 success or the property holds, 1 the property fails, 2 usage or
input error, 3 a search budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .core import Vertex
from .counting import EtaProfile, mean_extension_error, verify_counting_inequality, verify_injective_bound
from .density import RegularityWitness, check_regularity, edge_densities, is_subdivision
from .documents import Document, fraction_str, jsonable, read_document, serialize_document
from .embedding import embedding_probability, injective_embedding_probability
from .errors import BudgetExceeded, HyperRamseyError
from .experiment import format_report, run_experiment
from .generate import ExperimentConfig, random_instance, toy_ambient
from .pipeline import pipeline_demo, verify_pipeline_embedding
from .ramsey import UniformHypergraph, ramsey_number

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _fractions(text: str) -> tuple:
    try:
        return tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated fractions, got {text!r}") from None


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _vertex(text: str) -> Vertex:
    c, l = _ints(text)
    return Vertex(c, l)


def _load(path, kind):
    doc = read_document(path)
    if doc.kind != kind and not (kind == "hypergraph" and doc.kind == "complex"):
        raise HyperRamseyError(f"{path}: expected a {kind} document, got {doc.kind}")
    return doc.payload


def _profile(args) -> EtaProfile:
    if args.eta is None or args.rho is None:
        raise HyperRamseyError("--eta and --rho are required")
    return EtaProfile(args.eta, args.rho)


def _target_graph(args) -> UniformHypergraph:
    if getattr(args, "target", None):
        return _load(args.target, "uniform")
    maker = {
        "edge": lambda: UniformHypergraph.single_edge(args.uniformity),
        "path": lambda: UniformHypergraph.path(args.order, args.uniformity),
        "cycle": lambda: UniformHypergraph.cycle(args.order, args.uniformity),
        "complete": lambda: UniformHypergraph.complete(args.order, args.uniformity),
    }
    return maker[args.graph]()


# -- subcommands: each returns (exit code, report dict, text) -----------------


def cmd_ramsey(args):
    H = _load(args.input, "uniform") if args.input else _target_graph(args)
    res = ramsey_number(H, args.colors, args.n_max, node_budget=args.budget, workers=args.workers)
    return EXIT_OK, res.to_dict(), f"R = {res.value}\n"


def cmd_embed_prob(args):
    G, S = _load(args.input, "hypergraph"), _load(args.pattern, "complex")
    p = injective_embedding_probability(S, G) if args.injective else embedding_probability(S, G)
    return EXIT_OK, {"probability": p, "injective": args.injective}, fraction_str(p) + "\n"


def cmd_density(args):
    G, S = _load(args.input, "hypergraph"), _load(args.pattern, "complex")
    dens = edge_densities(S, G)
    prod = Fraction(1)
    for d in dens.values():
        prod *= d
    p = embedding_probability(S, G)
    rows = [{"edge": list(e), "density": d} for e, d in dens.items()]
    text = "".join(f"{list(e)} {fraction_str(d)}\n" for e, d in dens.items())
    text += f"product {fraction_str(prod)}\nprobability {fraction_str(p)}\ndiscrepancy {fraction_str(p - prod)}\n"
    return EXIT_OK, {"densities": rows, "product": prod, "probability": p, "discrepancy": p - prod}, text


def cmd_check_regular(args):
    G = _load(args.input, "hypergraph")
    witness = RegularityWitness.constant(args.delta_value, args.epsilon, args.h)
    rep = check_regularity(G, witness, pattern_budget=args.budget or 10_000)
    out = {
        "condition_i": rep.condition_i,
        "condition_ii": rep.condition_ii,
        "patterns_checked": rep.patterns_checked,
        "patterns_undefined": rep.patterns_undefined,
        "truncated": rep.truncated,
        "failures": len(rep.failures),
        "minimal_uniform_delta": rep.minimal_uniform_delta,
    }
    code = EXIT_BUDGET if rep.truncated and rep.condition_i and rep.condition_ii else (EXIT_OK if rep.passed else EXIT_FAIL)
    text = "".join(f"{key}: {jsonable(v)}\n" for key, v in out.items())
    return code, out, text


def cmd_check_subdivision(args):
    ok = is_subdivision(_load(args.input, "hypergraph"), _load(args.coarse, "hypergraph"))
    return (EXIT_OK if ok else EXIT_FAIL), {"subdivision": ok}, f"subdivision: {ok}\n"


def cmd_verify_lemma(args):
    G, S, B = _load(args.input, "hypergraph"), _load(args.pattern, "complex"), _load(args.blowup, "complex")
    rep = verify_counting_inequality(B, args.vertex, S, G, _profile(args), args.max_degree, args.cap)
    out = {
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "product": rep.product,
        "holds": rep.holds,
        "hypotheses_hold": rep.hypotheses_hold,
        "eta_threshold": rep.eta_threshold,
    }
    text = "".join(f"{key}: {jsonable(v)}\n" for key, v in out.items())
    return (EXIT_OK if rep.holds else EXIT_FAIL), out, text


def cmd_verify_corollary(args):
    G, S, B = _load(args.input, "hypergraph"), _load(args.pattern, "complex"), _load(args.blowup, "complex")
    rep = verify_injective_bound(B, S, G, _profile(args), args.max_degree, args.cap)
    out = {
        "probability": rep.probability,
        "bound": rep.bound,
        "holds": rep.holds,
        "hypotheses_hold": rep.hypotheses_hold,
        "witness": None if rep.witness is None else {str(w): x for w, x in sorted(rep.witness.items())},
    }
    text = "".join(f"{key}: {jsonable(v)}\n" for key, v in out.items())
    return (EXIT_OK if rep.holds else EXIT_FAIL), out, text


def cmd_beta_stats(args):
    G = _load(args.input, "hypergraph")
    small, big = _load(args.base, "complex"), _load(args.extended, "complex")
    st = mean_extension_error(small, big, G, _profile(args), args.max_degree)
    out = {
        "mean": st.mean,
        "beta": st.beta,
        "level": st.level,
        "within": st.within,
        "base_embeddings": st.base_embeddings,
        "split_in_interval": st.split_check.ok,
    }
    text = "".join(f"{key}: {jsonable(v)}\n" for key, v in out.items())
    return (EXIT_OK if st.within else EXIT_FAIL), out, text


def cmd_pipeline_demo(args):
    G = _load(args.input, "hypergraph") if args.input else toy_ambient(seed=args.seed)
    B = _target_graph(args)
    witness = RegularityWitness.constant(args.delta_value, args.epsilon)
    rep = pipeline_demo(G, witness, B, args.alpha, args.seed)
    verified = rep.success and verify_pipeline_embedding(G, B, rep)
    out = {
        "success": rep.success,
        "stage": rep.stage,
        "tuple": rep.tuple_,
        "representatives": rep.representatives,
        "color": rep.color,
        "embedding": None if rep.embedding is None else {str(v): x for v, x in rep.embedding.items()},
        "verified": verified,
        "warnings": rep.warnings,
    }
    text = "".join(f"{key}: {jsonable(v)}\n" for key, v in out.items())
    return (EXIT_OK if verified else EXIT_FAIL), out, text


def cmd_gen(args):
    cfg = ExperimentConfig(seed=args.seed, class_sizes=args.classes, k=args.k, palette_sizes=args.palettes)
    G = random_instance(cfg)
    return EXIT_OK, None, serialize_document(Document("hypergraph", G))


def cmd_experiment(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = ExperimentConfig.from_dict(json.load(fh))
    else:
        kw = {"seed": args.seed, "class_sizes": args.classes, "k": args.k, "palette_sizes": args.palettes}
        kw["samples"] = args.samples
        if args.eta is not None:
            kw["eta"] = args.eta
        if args.rho is not None:
            kw["rho"] = args.rho
        cfg = ExperimentConfig(**kw)
    report = run_experiment(cfg)
    return EXIT_OK, report, format_report(report)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input document")
    common.add_argument("--output", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="node or pattern budget")
    common.add_argument("--eta", type=_fractions, help="eta per edge size, e.g. 1/2,1/2")
    common.add_argument("--rho", type=_fractions, help="rho per edge size")
    common.add_argument("--alpha", type=Fraction, default=Fraction(1, 100))
    common.add_argument("--json", action="store_true", help="emit a report document")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--graph", choices=("edge", "path", "cycle", "complete"), default="path")
    target.add_argument("--order", type=int, default=3)
    target.add_argument("--uniformity", type=int, default=2)

    lemma = argparse.ArgumentParser(add_help=False)
    lemma.add_argument("--pattern", required=True, help="pattern complex S")
    lemma.add_argument("--blowup", required=True, help="blowup complex B")
    lemma.add_argument("--max-degree", type=int, required=True)
    lemma.add_argument("--cap", type=int, default=6, help="vertex cap for test blowups")

    witness = argparse.ArgumentParser(add_help=False)
    witness.add_argument("--delta-value", type=Fraction, default=Fraction(0))
    witness.add_argument("--epsilon", type=Fraction, default=Fraction(1, 1000))

    parser = argparse.ArgumentParser(
        prog="hyperramsey", description="Exact tools for colored partite hypergraphs and small Ramsey numbers."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ramsey", parents=[common, target], help="small Ramsey numbers")
    p.add_argument("--colors", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("embed-prob", parents=[common], help="exact embedding probability")
    p.add_argument("--pattern", required=True)
    p.add_argument("--injective", action="store_true")
    p.set_defaults(func=cmd_embed_prob)

    p = sub.add_parser("density", parents=[common], help="relative densities of a pattern")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("check-regular", parents=[common, witness], help="check a constant regularity witness")
    p.add_argument("--h", type=int, default=1)
    p.set_defaults(func=cmd_check_regular)

    p = sub.add_parser("check-subdivision", parents=[common], help="is --input a subdivision of --coarse")
    p.add_argument("--coarse", required=True)
    p.set_defaults(func=cmd_check_subdivision)

    p = sub.add_parser("verify-lemma", parents=[common, lemma], help="one-vertex counting inequality")
    p.add_argument("--vertex", type=_vertex, required=True, help="removed vertex as class,local")
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("verify-corollary", parents=[common, lemma], help="injective embedding bound")
    p.set_defaults(func=cmd_verify_corollary)

    p = sub.add_parser("beta-stats", parents=[common], help="mean extension error against its bound")
    p.add_argument("--base", required=True)
    p.add_argument("--extended", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_beta_stats)

    p = sub.add_parser("pipeline-demo", parents=[common, target, witness], help="replay the blowup search")
    p.add_argument("--target", help="uniform hypergraph document for B")
    p.set_defaults(func=cmd_pipeline_demo)

    p = sub.add_parser("gen", parents=[common], help="random uniform coloring")
    p.add_argument("--classes", type=_ints, default=(3, 3, 3))
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--palettes", type=_ints, default=(1, 2))
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", parents=[common], help="seeded experiment over random colorings")
    p.add_argument("--config", help="JSON experiment config")
    p.add_argument("--classes", type=_ints, default=(3, 3, 3))
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--palettes", type=_ints, default=(1, 2))
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, report, text = args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc} (bracket {list(exc.bracket)})", file=sys.stderr)
        return EXIT_BUDGET
    except (HyperRamseyError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json and report is not None:
        text = serialize_document(Document("report", jsonable(report)))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
