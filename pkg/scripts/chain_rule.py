"""Sample mean of exact embedding probabilities against the ensemble product."""

import argparse
from fractions import Fraction

from hyperramsey.embedding import embedding_probability
from hyperramsey.generate import ExperimentConfig, full_pattern, random_instance, sample_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--classes", default="2,2,2")
    ap.add_argument("--palettes", default="2,2")
    args = ap.parse_args()
    sizes = tuple(int(x) for x in args.classes.split(","))
    pals = tuple(int(x) for x in args.palettes.split(","))
    cfg = ExperimentConfig(seed=args.seed, class_sizes=sizes, k=len(pals), palette_sizes=pals, samples=args.samples)
    S = full_pattern(len(sizes), cfg.k)
    target = Fraction(1)
    for e in S.visible_edges():
        target /= pals[len(e) - 1]
    probs = [embedding_probability(S, random_instance(cfg, sample_rng(cfg, i))) for i in range(cfg.samples)]
    n = len(probs)
    mean = sum(probs, Fraction(0)) / n
    var = sum((p - mean) ** 2 for p in probs) / (n - 1)
    z = float((mean - target) / (var / n) ** 0.5) if var else 0.0
    print(f"samples {n}, mean {float(mean):.6f}, product {target} = {float(target):.6f}, z = {z:+.2f}")


if __name__ == "__main__":
    main()
