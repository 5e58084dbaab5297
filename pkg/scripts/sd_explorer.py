"""Separated-class counts for a relatively free lattice, by term depth."""

import argparse
import time

from latkit.core import enumerate_lattices
from latkit.terms import explore_relatively_free, in_variety, variety_identities


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--variety", default="sd2v")
    ap.add_argument("--generators", type=int, default=3)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--probe-size", type=int, default=6)
    args = ap.parse_args()
    ids = variety_identities(args.variety)
    probes = [L for n in range(1, args.probe_size + 1) for L in enumerate_lattices(n) if in_variety(L, ids)]
    start = time.perf_counter()
    res = explore_relatively_free(ids, args.generators, args.depth, probes)
    print(f"variety={args.variety} probes={len(probes)} coordinates={res.coordinates}")
    for d, c in enumerate(res.counts):
        print(f"  depth {d}: {c}")
    print(f"({time.perf_counter() - start:.2f}s)")


if __name__ == "__main__":
    main()
