"""Slow, obviously-correct reference implementations used to cross-check
the library.  Each oracle works from the order relation or from scalar
evaluation, never from the routine it is compared against."""

from __future__ import annotations

from itertools import combinations, permutations, product


def leq_matrix(L):
    return [[L.leq(x, y) for y in range(L.n)] for x in range(L.n)]


# ---------------------------------------------------------------------------
# lattice enumeration over naturally labelled orders


def _transitive(rel, m):
    for a in range(m):
        for b in range(m):
            if rel[a][b]:
                for c in range(m):
                    if rel[b][c] and not rel[a][c]:
                        return False
    return True


def _has_bounds(le, n):
    """Every pair has a least upper bound (enough for a finite bounded poset)."""
    for x in range(n):
        for y in range(x + 1, n):
            ub = [z for z in range(n) if le[x][z] and le[y][z]]
            least = [z for z in ub if all(le[z][w] for w in ub)]
            if len(least) != 1:
                return False
    return True


def naive_lattice_classes(n: int) -> tuple[int, int]:
    """Count lattices of size ``n`` up to isomorphism, and the distributive ones.

    Bottom is 0, top is ``n - 1``; the middle ``m = n - 2`` elements carry
    any order compatible with their labels.  Canonical form: the least
    relation bitmask over all relabellings of the middle.
    """
    if n <= 2:
        return 1, 1
    m = n - 2
    pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
    seen = {}
    for choice in range(1 << len(pairs)):
        rel = [[a == b for b in range(m)] for a in range(m)]
        for k, (a, b) in enumerate(pairs):
            if choice >> k & 1:
                rel[a][b] = True
        if not _transitive(rel, m):
            continue
        le = [[False] * n for _ in range(n)]
        for x in range(n):
            le[0][x] = True
            le[x][n - 1] = True
            le[x][x] = True
        for a in range(m):
            for b in range(m):
                if rel[a][b]:
                    le[a + 1][b + 1] = True
        if not _has_bounds(le, n):
            continue
        key = min(
            tuple(rel[perm[a]][perm[b]] for a in range(m) for b in range(m))
            for perm in permutations(range(m))
        )
        seen.setdefault(key, le)
    return len(seen), sum(1 for le in seen.values() if naive_distributive(le, n))


def _lub(le, n, x, y):
    ub = [z for z in range(n) if le[x][z] and le[y][z]]
    return next(z for z in ub if all(le[z][w] for w in ub))


def _glb(le, n, x, y):
    lb = [z for z in range(n) if le[z][x] and le[z][y]]
    return next(z for z in lb if all(le[w][z] for w in lb))


def naive_distributive(le, n) -> bool:
    for x, y, z in product(range(n), repeat=3):
        if _glb(le, n, x, _lub(le, n, y, z)) != _lub(le, n, _glb(le, n, x, y), _glb(le, n, x, z)):
            return False
    return True


# ---------------------------------------------------------------------------
# width and linear decomposition


def brute_width(L) -> int:
    best = 0
    for r in range(1, L.n + 1):
        found = False
        for S in combinations(range(L.n), r):
            if all(not L.leq(a, b) and not L.leq(b, a) for a, b in combinations(S, 2)):
                found = True
                break
        if not found:
            break
        best = r
    return best


def brute_linear_blocks(L) -> list[int]:
    """Block sizes from every cut: a proper nonempty subset lying entirely
    below its complement, with a greatest element below and a least above
    (so both sides are lattices)."""
    cuts = []
    for r in range(1, L.n):
        for S in combinations(range(L.n), r):
            s = set(S)
            rest = [y for y in range(L.n) if y not in s]
            top = [t for t in S if all(L.leq(x, t) for x in S)]
            bot = [b for b in rest if all(L.leq(b, y) for y in rest)]
            if top and bot and all(L.leq(x, y) for x in S for y in rest):
                cuts.append(r)
    sizes, prev = [], 0
    for c in sorted(cuts) + [L.n]:
        sizes.append(c - prev)
        prev = c
    return sizes


# ---------------------------------------------------------------------------
# join dependency via minimal join covers


def _join_all(L, xs):
    out = None
    for x in xs:
        out = x if out is None else L.join(out, x)
    return out


def brute_dependency(L) -> dict[int, set[int]]:
    """``p D q`` iff ``q`` belongs to a minimal nontrivial join cover of ``p``."""
    J = [x for x in range(L.n) if len(L.lower_covers[x]) == 1]
    subsets = [S for r in range(1, L.n + 1) for S in combinations(range(L.n), r)]
    rel = {}
    for p in J:
        covers = [S for S in subsets
                  if L.leq(p, _join_all(L, S)) and not any(L.leq(p, a) for a in S)]

        def refines(A, B):
            return all(any(L.leq(a, b) for b in B) for a in A)

        minimal = [A for A in covers if all(set(A) <= set(B) for B in covers if refines(B, A))]
        rel[p] = {q for A in minimal for q in A}
    return rel


def has_cycle(rel: dict[int, set[int]]) -> bool:
    nodes = list(rel)
    reach = {v: set(rel[v]) for v in nodes}
    changed = True
    while changed:
        changed = False
        for v in nodes:
            extra = set().union(*(reach.get(w, set()) for w in reach[v])) - reach[v]
            if extra:
                reach[v] |= extra
                changed = True
    return any(v in reach[v] for v in nodes)


# ---------------------------------------------------------------------------
# congruences and identities


def smallest_congruence_containing(L, congruences, a, b):
    """Least member (by class count descending) of a full congruence list
    relating ``a`` and ``b``."""
    holding = [c for c in congruences if c.labels[a] == c.labels[b]]
    return max(holding, key=lambda c: len(c.classes))


def naive_identity_holds(L, left, right, variables) -> tuple:
    from latkit.terms import evaluate

    for vals in product(range(L.n), repeat=len(variables)):
        env = dict(zip(variables, vals))
        if evaluate(left, L, env) != evaluate(right, L, env):
            return False, vals
    return True, None


def sd_strings(n: int, polarity: str = "meet") -> tuple[str, str]:
    """``y_n`` and the identity, written out by string substitution."""
    o, i = (" v ", "^") if polarity == "meet" else ("^", " v ")
    y, z = "y", "z"
    for _ in range(n):
        y, z = f"y{o}(x{i}({z}))", f"z{o}(x{i}({y}))"
    if polarity == "meet":
        return y, f"x^(y v z) = x^({y})"
    return y, f"x v (y^z) = x v ({y})"


def naive_congruence_closure(L, pairs) -> list[set[int]]:
    """Classes of the least congruence relating ``pairs``, by iterating
    reflexive, symmetric, transitive and compatibility closure on a relation
    matrix until nothing changes."""
    n = L.n
    rel = [[x == y for y in range(n)] for x in range(n)]
    for a, b in pairs:
        rel[a][b] = rel[b][a] = True
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(n):
                if not rel[x][y]:
                    continue
                for z in range(n):
                    for u, v in ((L.join(x, z), L.join(y, z)), (L.meet(x, z), L.meet(y, z))):
                        if not rel[u][v]:
                            rel[u][v] = rel[v][u] = True
                            changed = True
                    if rel[y][z] and not rel[x][z]:
                        rel[x][z] = rel[z][x] = True
                        changed = True
    classes = []
    for x in range(n):
        c = {y for y in range(n) if rel[x][y]}
        if c not in classes:
            classes.append(c)
    return classes
