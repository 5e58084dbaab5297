"""Exhaustive structure checks on small distributive lattices.

For each size, counts the linearly indecomposable lattices without doubly
reducible elements and reports their widths and block shapes.
"""

import argparse
from collections import Counter

from latkit.core import enumerate_distributive
from latkit.gj import theorem2_decompose
from latkit.predicates import doubly_reducible, linear_decomposition, width


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=12)
    args = ap.parse_args()
    for n in range(2, args.max_size + 1):
        shapes = Counter()
        for L in enumerate_distributive(n):
            if doubly_reducible(L) or not linear_decomposition(L).indecomposable:
                continue
            tags = theorem2_decompose(L).tags
            shapes[(width(L)[0], tuple(tags))] += 1
        print(n, dict(shapes))


if __name__ == "__main__":
    main()
