"""Counting-inequality statistics over seeded random colorings.

For each instance the smallest eta_k that would make the inequality hold is
computed exactly; the table shows how that threshold is distributed.
"""

import argparse
from fractions import Fraction

from hyperramsey.core import BlowupSpec, Vertex, build_blowup
from hyperramsey.counting import EtaProfile, verify_counting_inequality
from hyperramsey.errors import NoEmbeddingOfBase
from hyperramsey.generate import ExperimentConfig, full_pattern, random_instance, sample_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--eta", type=Fraction, default=Fraction(1, 2))
    ap.add_argument("--class-size", type=int, default=3)
    args = ap.parse_args()
    cfg = ExperimentConfig(seed=args.seed, class_sizes=(args.class_size,) * 3, samples=args.samples)
    S = full_pattern(3, 2)
    B = build_blowup(BlowupSpec(S, {Vertex(0, 0): 2}))
    profile = EtaProfile((args.eta, args.eta), (Fraction(1, 100),) * 2)
    passed = held = no_base = 0
    thresholds = []
    for i in range(cfg.samples):
        G = random_instance(cfg, sample_rng(cfg, i))
        try:
            rep = verify_counting_inequality(B, Vertex(0, 1), S, G, profile, 3, 5)
        except NoEmbeddingOfBase:
            no_base += 1
            continue
        if rep.hypotheses_hold:
            passed += 1
            held += rep.holds
            thresholds.append(rep.eta_threshold)
    print(f"instances {cfg.samples}, base not embeddable {no_base}, hypotheses passed {passed}, inequality held {held}")
    if thresholds:
        thresholds.sort()
        for q in (0.5, 0.9, 1.0):
            t = thresholds[min(len(thresholds) - 1, int(q * len(thresholds)))]
            print(f"  eta_k needed, {int(q * 100)}th percentile: {float(t):.4f}")


if __name__ == "__main__":
    main()
