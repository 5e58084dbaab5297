"""Collapse FD(3) in three steps and print each quotient's size and shape."""

from latkit.congruence import congruence_join, principal_congruence, quotient
from latkit.constructors import boolean, free_distributive
from latkit.core import is_isomorphic
from latkit.predicates import doubly_reducible


def main() -> None:
    F = free_distributive(3)
    e = F.element
    z = e("(a^b) v (a^c) v (b^c)")
    steps = [
        ("z ~ (a^b) v (a^c)", (z, e("(a^b) v (a^c)"))),
        ("z ~ (a^c) v (b^c)", (z, e("(a^c) v (b^c)"))),
        ("b v (a^c) ~ b", (e("b v (a^c)"), e("b"))),
    ]
    theta = None
    for label, pair in steps:
        step = principal_congruence(F, *pair)
        theta = step if theta is None else congruence_join(theta, step)
        Q, _ = quotient(F, theta)
        dr = [Q.names[x] for x in sorted(doubly_reducible(Q))]
        print(f"{label:22s} classes={len(theta):2d} doubly_reducible={dr}")
    print("last quotient is the cube:", is_isomorphic(Q, boolean(3)) is not None)


if __name__ == "__main__":
    main()
