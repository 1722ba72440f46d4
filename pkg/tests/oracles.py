"""Brute-force reference implementations, independent of the solvers.

Everything here enumerates exhaustively with no pruning beyond an
early abort against the running best, so results are trustworthy
ground truth for small orders.
"""

import itertools

from groupdist.groups import GroupTable


def naive_agreement(g: GroupTable, k: GroupTable, images) -> int:
    n = g.n
    count = 0
    for x in range(n):
        for y in range(n):
            if images[g.mul(x, y)] == k.mul(images[x], images[y]):
                count += 1
    return count


def naive_min_distance(a: GroupTable, b: GroupTable) -> int:
    """Minimum disagreement over all n! bijections, by full enumeration."""
    n = a.n
    best = n * n + 1
    rng = range(n)
    rows_a = [a.row(x) for x in rng]
    rows_b = [b.row(x) for x in rng]
    for perm in itertools.permutations(rng):
        d = 0
        abort = False
        for x in rng:
            ra = rows_a[x]
            rb = rows_b[perm[x]]
            for y in rng:
                if perm[ra[y]] != rb[perm[y]]:
                    d += 1
                    if d >= best:
                        abort = True
                        break
            if abort:
                break
        if not abort:
            best = d
    return best


def naive_max_overlap(g: GroupTable, k: GroupTable) -> int:
    """Maximum agreement over all injections, by full enumeration."""
    best = -1
    for perm in itertools.permutations(range(k.n), g.n):
        ag = naive_agreement(g, k, perm)
        if ag > best:
            best = ag
    return best


def naive_has_embedding(g: GroupTable, k: GroupTable) -> bool:
    """Exhaustive search for an injective homomorphism."""
    n = g.n
    for perm in itertools.permutations(range(k.n), n):
        if naive_agreement(g, k, perm) == n * n:
            return True
    return False
