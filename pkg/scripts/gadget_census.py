"""Tally gadget classes over every enumerated lattice up to a given size."""

import argparse
from collections import Counter

from latkit.core import enumerate_lattices
from latkit.gj import GADGET_CLASSES, gadget_census
from latkit.predicates import is_distributive


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=7)
    ap.add_argument("--distributive", action="store_true", help="only distributive lattices")
    args = ap.parse_args()
    total = Counter()
    lattices = 0
    for n in range(1, args.max_size + 1):
        for L in enumerate_lattices(n):
            if args.distributive and not is_distributive(L):
                continue
            lattices += 1
            total.update(gadget_census(L))
    print(f"{lattices} lattices")
    for name in GADGET_CLASSES:
        print(f"  {name:11s} {total[name]}")


if __name__ == "__main__":
    main()
