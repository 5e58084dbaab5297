"""One-shot structural report used by the ``analyze`` command."""

from __future__ import annotations

from .core import FiniteLattice
from .doubling import is_bounded
from .gj import classify_block, decide_free_embeddable, gadget_census
from .predicates import (
    doubly_reducible,
    is_distributive,
    is_modular,
    is_semidistributive_join,
    is_semidistributive_meet,
    linear_decomposition,
    whitman,
    width,
)
from .terms import sd_level


def block_tags(L: FiniteLattice) -> list[str]:
    """Tag of every block of the finest linear decomposition; blocks that
    are not singleton, cube or 2 x chain are tagged ``other``."""
    tags = []
    for block in linear_decomposition(L).blocks:
        B = L.restrict(sorted(block))
        tagged = classify_block(B) if is_distributive(B) else None
        tags.append(tagged.label() if tagged else "other")
    return tags


def analyze(L: FiniteLattice) -> dict:
    """Deterministic report; every field except the element names is
    invariant under isomorphism."""
    w, _ = width(L)
    verdict = decide_free_embeddable(L)
    report = {
        "size": L.n,
        "width": w,
        "height": max(L.height()),
        "distributive": is_distributive(L).holds,
        "modular": is_modular(L).holds,
        "semidistributive_meet": is_semidistributive_meet(L).holds,
        "semidistributive_join": is_semidistributive_join(L).holds,
        "sd_level": sd_level(L),
        "whitman": whitman(L).holds,
        "doubly_reducible": sorted(L.names[x] for x in doubly_reducible(L)),
        "blocks": block_tags(L),
        "block_sizes": linear_decomposition(L).sizes(),
        "gadgets": gadget_census(L),
        "bounded": is_bounded(L).holds,
        "free_embeddable": verdict.verdict,
        "reason": verdict.reason,
    }
    return report
