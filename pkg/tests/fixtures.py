"""Shared trial-generation helpers for embedding-recovery tests."""

import random

from groupdist.groups import ElementMap, GroupTable, cyclic, direct_product
from groupdist.metric import agreement_under_injection


def corrupt_injection(images, codomain_size, points, seed):
    """Move `points` distinct images to unused codomain values, keeping
    the map injective; deterministic per seed."""
    rng = random.Random(seed)
    out = list(images)
    victims = rng.sample(range(len(out)), points)
    for x in victims:
        free = sorted(set(range(codomain_size)) - set(out))
        if not free:
            raise ValueError("no unused codomain values to corrupt into")
        out[x] = rng.choice(free)
    return tuple(out)


def doubled(g: GroupTable) -> GroupTable:
    """g x C2, which g embeds into as x -> 2x."""
    return direct_product(g, cyclic(2))


def natural_embedding(g: GroupTable) -> ElementMap:
    """The x -> (x, 0) embedding of g into doubled(g), verified exact."""
    k = doubled(g)
    phi = ElementMap.total([2 * x for x in range(g.n)], k.n)
    assert agreement_under_injection(g, k, phi) == g.n * g.n
    return phi
