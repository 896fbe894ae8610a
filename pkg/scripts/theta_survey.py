"""Survey exact thickness and maximum colour counts at desk scale.

Two experiments in one:

  * exhaustive: every connected isomorphism class on n <= --max-n vertices,
    tabulating how many are interval colourable, the largest t seen against
    the (3/2)n - 2 bound, and the worst thickness;
  * pipeline: decompose_theta part counts on random graphs as n grows, next
    to the ceil(log2 n) layer bound (the constructive upper-bound route).

Usage: python scripts/theta_survey.py [--max-n 5] [--pipeline-sizes 32,64,128]
"""

import argparse
import itertools
import random
import sys
from collections import defaultdict

from ilab import Graph, decompose_theta, exact_thickness, max_colours, verify


def connected_classes(n):
    pairs = list(itertools.combinations(range(n), 2))
    seen = {}
    for bits in range(1 << len(pairs)):
        edges = tuple(p for k, p in enumerate(pairs) if bits >> k & 1)
        adj = defaultdict(set)
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        stack, comp = [0], {0}
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        if len(comp) != n:
            continue
        key = min(
            tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
            for p in itertools.permutations(range(n))
        )
        seen.setdefault(key, edges)
    return sorted(seen.values())


def survey_exact(max_n):
    print(f"{'n':>2} {'classes':>8} {'colourable':>10} {'max t':>6} "
          f"{'bound':>6} {'worst theta':>11}")
    for n in range(2, max_n + 1):
        classes = connected_classes(n)
        colourable = 0
        best_t = 0
        worst_theta = 0
        for edges in classes:
            g = Graph(n, edges)
            result = max_colours(g)
            if result is not None:
                colourable += 1
                best_t = max(best_t, result[0])
            theta = exact_thickness(g, k_max=4).theta
            worst_theta = max(worst_theta, theta)
        bound = 1.5 * n - 2
        print(f"{n:>2} {len(classes):>8} {colourable:>10} {best_t:>6} "
              f"{bound:>6.1f} {worst_theta:>11}")


def survey_pipeline(sizes, density, seeds):
    import math

    print(f"\n{'n':>4} {'m':>6} {'parts':>6} {'layers':>7} "
          f"{'log2 bound':>10} {'verified':>8}")
    for n in sizes:
        for seed in range(seeds):
            rng = random.Random(seed)
            edges = tuple(
                (i, j)
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < density
            )
            g = Graph(n, edges)
            report = decompose_theta(g)
            ok = all(verify(c).interval for c in report.part_colourings())
            print(f"{n:>4} {g.edge_count:>6} {report.part_count:>6} "
                  f"{len(report.layers):>7} {math.ceil(math.log2(n)):>10} "
                  f"{'yes' if ok else 'NO':>8}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--pipeline-sizes", default="32,64,128,256")
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args(argv)
    survey_exact(args.max_n)
    sizes = [int(s) for s in args.pipeline_sizes.split(",") if s]
    survey_pipeline(sizes, args.density, args.seeds)
    return 0


if __name__ == "__main__":
    sys.exit(main())
