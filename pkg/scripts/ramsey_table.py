"""Print small two-color Ramsey numbers with search effort and wall time."""

import argparse
import time

from hyperramsey.ramsey import UniformHypergraph, ramsey_number

TARGETS = {
    "edge(2)": UniformHypergraph.single_edge(2),
    "edge(3)": UniformHypergraph.single_edge(3),
    "edge(4)": UniformHypergraph.single_edge(4),
    "P3": UniformHypergraph.path(3),
    "P4": UniformHypergraph.path(4),
    "C4": UniformHypergraph.cycle(4),
    "K3": UniformHypergraph.complete(3, 2),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--colors", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    print(f"{'H':<8} {'R':>3} {'nodes':>9} {'seconds':>8}")
    for name, H in TARGETS.items():
        t0 = time.perf_counter()
        res = ramsey_number(H, args.colors, args.n_max, workers=args.workers)
        dt = time.perf_counter() - t0
        print(f"{name:<8} {res.value:>3} {res.certificate['nodes']:>9} {dt:>8.3f}")


if __name__ == "__main__":
    main()
