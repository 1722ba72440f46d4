"""Hamming distance between multiplication tables and its optimization.

`table_distance` compares two tables on the same carrier set.
`min_distance_exact` minimizes over all relabelings (bijections) by
branch and bound; `min_distance_heuristic` gives seeded multi-restart
local-search upper bounds for orders where exact search is infeasible.
`overlap_exact` maximizes pair agreement over injections into a larger
group.  All bound verdicts use exact integer cross-multiplication;
no floating point enters any comparison.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from . import _search
from .groups import ElementMap, GroupTable, find_isomorphism, find_subgroup_embedding

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_RESTARTS = 32

# lower bound on the minimum relabeling distance of non-isomorphic
# equal-order groups: distance >= (2/9) n^2, and strictly > (1/9) n^2
DISTANCE_BOUND = (2, 9)
WEAK_DISTANCE_BOUND = (1, 9)
# upper bound on overlap when no subgroup embedding exists: <= (7/9) |G|^2
OVERLAP_BOUND = (7, 9)


@dataclass(frozen=True)
class DistanceResult:
    """Minimum (or best-found) table distance with its witness bijection."""

    value: int
    witness: ElementMap
    exact: bool
    nodes: int
    elapsed: float

    def check(self, a: GroupTable, b: GroupTable) -> bool:
        return distance_under_map(a, b, self.witness) == self.value


@dataclass(frozen=True)
class OverlapResult:
    """Maximum (or best-found) pair agreement with its witness injection."""

    value: int
    witness: ElementMap
    exact: bool
    nodes: int
    elapsed: float

    def check(self, g: GroupTable, k: GroupTable) -> bool:
        return agreement_under_injection(g, k, self.witness) == self.value


def table_distance(a: GroupTable, b: GroupTable) -> int:
    """Number of cells where the two same-size tables disagree."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    return sum(1 for x, y in zip(a.table, b.table) if x != y)


def _images(m: ElementMap | Sequence[int]) -> Sequence[int]:
    return m.images if isinstance(m, ElementMap) else m


def distance_under_map(a: GroupTable, b: GroupTable, m: ElementMap | Sequence[int]) -> int:
    """#{(x, y): m(x*y) != m(x)*m(y)} for a total bijection m."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    images = _images(m)
    if sorted(images) != list(range(a.n)):
        raise ValueError("map is not a bijection between the element sets")
    return a.n * a.n - agreement_under_injection(a, b, images)


def agreement_under_injection(
    g: GroupTable, k: GroupTable, phi: ElementMap | Sequence[int]
) -> int:
    """#{(x, y): phi(x*y) = phi(x)*phi(y)} for a total injection phi."""
    images = _images(phi)
    if len(images) != g.n or any(v is None for v in images):
        raise ValueError("map must be total on the source group")
    if len(set(images)) != g.n:
        raise ValueError("map is not injective")
    n = g.n
    count = 0
    for x in range(n):
        ix = images[x]
        row = g.row(x)
        for y in range(n):
            if images[row[y]] == k.mul(ix, images[y]):
                count += 1
    return count


def min_distance_exact(
    a: GroupTable, b: GroupTable, budget: int = DEFAULT_NODE_BUDGET
) -> DistanceResult:
    """Branch-and-bound minimum of distance_under_map over all bijections.

    `exact` is True only when the search completed within the node
    budget; otherwise the best distance found so far is returned.
    """
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    t0 = time.perf_counter()
    best, wit, nodes, completed = _search.max_agreement(
        a.table, a.n, b.table, b.n, b.identity, budget
    )
    elapsed = time.perf_counter() - t0
    return DistanceResult(
        value=a.n * a.n - best,
        witness=ElementMap.total(wit, b.n),
        exact=completed,
        nodes=nodes,
        elapsed=elapsed,
    )


def overlap_exact(
    g: GroupTable, k: GroupTable, budget: int = DEFAULT_NODE_BUDGET
) -> OverlapResult:
    """Branch-and-bound maximum agreement over total injections of g into k.

    Maximizing over injections into the codomain realizes the maximum
    over embeddings of both groups into a common ambient set: any
    common-set witness induces a partial injection of g into k that
    extends to a total one when |g| <= |k|.
    """
    if g.n > k.n:
        raise ValueError(f"source order {g.n} exceeds target order {k.n}")
    t0 = time.perf_counter()
    best, wit, nodes, completed = _search.max_agreement(
        g.table, g.n, k.table, k.n, k.identity, budget
    )
    elapsed = time.perf_counter() - t0
    return OverlapResult(
        value=best,
        witness=ElementMap.total(wit, k.n),
        exact=completed,
        nodes=nodes,
        elapsed=elapsed,
    )


def min_distance_heuristic(
    a: GroupTable,
    b: GroupTable,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
) -> DistanceResult:
    """Multi-restart first-improvement local search over bijections.

    Moves are image transpositions with incremental re-counting.  The
    first restart aligns the identities; the rest start from uniformly
    random bijections drawn from a generator seeded with `seed`, so the
    result is deterministic per (inputs, seed, restarts).  Always an
    upper bound on the exact minimum; `exact` is always False.
    """
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    t0 = time.perf_counter()
    n = a.n
    ctx = _search.DescentContext(a.table, n, b.table, n)
    rng = random.Random(seed)
    best_d: Optional[int] = None
    best_m: list[int] = []
    evals = 0
    for r in range(restarts):
        if r == 0:
            start = _identity_aligned(a, b)
        else:
            start = list(range(n))
            rng.shuffle(start)
        d, m, e = ctx.descend(start)
        evals += e
        if best_d is None or d < best_d:
            best_d, best_m = d, m
    elapsed = time.perf_counter() - t0
    return DistanceResult(
        value=best_d if best_d is not None else n * n,
        witness=ElementMap.total(best_m, n),
        exact=False,
        nodes=evals,
        elapsed=elapsed,
    )


def _identity_aligned(a: GroupTable, b: GroupTable) -> list[int]:
    start = list(range(a.n))
    j = start.index(b.identity)
    start[a.identity], start[j] = start[j], start[a.identity]
    return start


@dataclass(frozen=True)
class BoundVerdict:
    """Integer-exact verdicts for the distance/overlap bounds on one pair.

    When a subgroup embedding of g into k exists the bound hypothesis
    fails and all checks are skipped (`checked` False, `passed` True).
    Otherwise `overlap_within_bound` asserts 9*overlap <= 7*|g|^2 and,
    for equal orders, `distance_meets_lower` asserts 9*distance >= 2*n^2
    with `distance_exceeds_weak` the strict 9*distance > n^2 form.
    """

    order_g: int
    order_k: int
    subgroup_embeddable: bool
    checked: bool
    exact: bool
    overlap: Optional[int] = None
    overlap_within_bound: Optional[bool] = None
    distance: Optional[int] = None
    distance_meets_lower: Optional[bool] = None
    distance_exceeds_weak: Optional[bool] = None

    @property
    def passed(self) -> bool:
        if not self.checked:
            return True
        checks = [
            self.overlap_within_bound,
            self.distance_meets_lower,
            self.distance_exceeds_weak,
        ]
        return all(c for c in checks if c is not None)


def drapal_bound_check(
    g: GroupTable,
    k: GroupTable,
    budget: int = DEFAULT_NODE_BUDGET,
    overlap: Optional[OverlapResult] = None,
    distance: Optional[DistanceResult] = None,
) -> BoundVerdict:
    """Check the overlap bound (and, for equal orders, both distance
    bounds) on one pair, computing exact values unless supplied."""
    if g.n > k.n:
        raise ValueError(f"source order {g.n} exceeds target order {k.n}")
    embeddable = find_subgroup_embedding(g, k) is not None
    if embeddable:
        return BoundVerdict(
            order_g=g.n,
            order_k=k.n,
            subgroup_embeddable=True,
            checked=False,
            exact=True,
        )
    if overlap is None:
        overlap = overlap_exact(g, k, budget=budget)
    ng = g.n
    verdict_overlap = 9 * overlap.value <= 7 * ng * ng
    dist_val = None
    meets = None
    strict = None
    exact = overlap.exact
    if g.n == k.n:
        if distance is None:
            dist_val = ng * ng - overlap.value
        else:
            dist_val = distance.value
            exact = exact and distance.exact
        meets = 9 * dist_val >= 2 * ng * ng
        strict = 9 * dist_val > ng * ng
    return BoundVerdict(
        order_g=g.n,
        order_k=k.n,
        subgroup_embeddable=False,
        checked=True,
        exact=exact,
        overlap=overlap.value,
        overlap_within_bound=verdict_overlap,
        distance=dist_val,
        distance_meets_lower=meets,
        distance_exceeds_weak=strict,
    )


def is_isomorphic(a: GroupTable, b: GroupTable) -> bool:
    return find_isomorphism(a, b) is not None
