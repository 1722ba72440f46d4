"""Named isomorphism-class representatives for orders 1..15 and 27.

Coverage per order is complete or absent: asking for an order outside
the supported set raises rather than returning a partial list.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .groups import (
    GroupTable,
    cyclic,
    direct_product,
    heisenberg,
    semidirect_product,
)

SUPPORTED_ORDERS: tuple[int, ...] = tuple(range(1, 16)) + (27,)

# number of isomorphism classes for each supported order
CLASS_COUNTS: dict[int, int] = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
    9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 27: 5,
}


class UnsupportedOrderError(ValueError):
    """Requested order is outside the catalog's complete coverage."""


class UnknownGroupError(ValueError):
    """Requested name is not a catalog entry."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    recipe: str
    group: GroupTable


def dihedral(m: int) -> GroupTable:
    """Dihedral group of order 2m: rotations twisted by inversion."""
    if m < 1:
        raise ValueError("dihedral parameter must be positive")
    rot = cyclic(m)
    inversion = tuple((-x) % m for x in range(m))
    return semidirect_product(
        rot, cyclic(2), [tuple(range(m)), inversion], name=f"D{m}"
    )


def quaternion8() -> GroupTable:
    """The quaternion group of order 8 from its unit multiplication table.

    Elements 0..7 are 1, i, j, k, -1, -i, -j, -k.
    """
    table = (
        0, 1, 2, 3, 4, 5, 6, 7,
        1, 4, 3, 6, 5, 0, 7, 2,
        2, 7, 4, 1, 6, 3, 0, 5,
        3, 2, 5, 4, 7, 6, 1, 0,
        4, 5, 6, 7, 0, 1, 2, 3,
        5, 0, 7, 2, 1, 4, 3, 6,
        6, 3, 0, 5, 2, 7, 4, 1,
        7, 6, 1, 0, 3, 2, 5, 4,
    )
    return GroupTable(name="Q8", n=8, table=table, identity=0)


def dicyclic3() -> GroupTable:
    """Dicyclic group of order 12: a^6 = 1, b^2 = a^3, b a b^-1 = a^-1.

    Element a^i b^j is encoded as j*6 + i.
    """
    n = 12
    table = [0] * (n * n)
    for j1 in range(2):
        for i1 in range(6):
            for j2 in range(2):
                for i2 in range(6):
                    if j1 == 0:
                        i, j = (i1 + i2) % 6, j2
                    elif j2 == 0:
                        i, j = (i1 - i2) % 6, 1
                    else:
                        i, j = (i1 - i2 + 3) % 6, 0
                    table[(j1 * 6 + i1) * n + (j2 * 6 + i2)] = j * 6 + i
    return GroupTable(name="Dic3", n=n, table=tuple(table), identity=0)


def alternating4() -> GroupTable:
    """Even permutations of 4 points under composition p(q(.))."""
    evens = [p for p in itertools.permutations(range(4)) if _parity(p) == 0]
    index = {p: i for i, p in enumerate(evens)}
    n = len(evens)
    table = tuple(
        index[tuple(p[q[i]] for i in range(4))] for p in evens for q in evens
    )
    return GroupTable(name="A4", n=n, table=table, identity=index[(0, 1, 2, 3)])


def _parity(p) -> int:
    inv = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return inv % 2


def exponent9_order27() -> GroupTable:
    """The non-abelian order-27 group with an element of order 9:
    cyclic(9) twisted by cyclic(3) acting as multiplication by 4."""
    base = cyclic(9)
    m4 = tuple((4 * x) % 9 for x in range(9))
    m7 = tuple((7 * x) % 9 for x in range(9))
    return semidirect_product(
        base, cyclic(3), [tuple(range(9)), m4, m7], name="C9sC3"
    )


def _entry(name: str, recipe: str, group: GroupTable) -> CatalogEntry:
    return CatalogEntry(name=name, order=group.n, recipe=recipe, group=group)


@functools.lru_cache(maxsize=1)
def _catalog() -> tuple[CatalogEntry, ...]:
    c = cyclic
    d = direct_product
    entries = [
        _entry("C1", "cyclic(1)", c(1)),
        _entry("C2", "cyclic(2)", c(2)),
        _entry("C3", "cyclic(3)", c(3)),
        _entry("C4", "cyclic(4)", c(4)),
        _entry("C2xC2", "direct_product(cyclic(2), cyclic(2))", d(c(2), c(2))),
        _entry("C5", "cyclic(5)", c(5)),
        _entry("C6", "cyclic(6)", c(6)),
        _entry("D3", "dihedral(3)", dihedral(3)),
        _entry("C7", "cyclic(7)", c(7)),
        _entry("C8", "cyclic(8)", c(8)),
        _entry("C4xC2", "direct_product(cyclic(4), cyclic(2))", d(c(4), c(2))),
        _entry(
            "C2xC2xC2",
            "direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))",
            d(d(c(2), c(2)), c(2)),
        ),
        _entry("D4", "dihedral(4)", dihedral(4)),
        _entry("Q8", "quaternion unit table", quaternion8()),
        _entry("C9", "cyclic(9)", c(9)),
        _entry("C3xC3", "direct_product(cyclic(3), cyclic(3))", d(c(3), c(3))),
        _entry("C10", "cyclic(10)", c(10)),
        _entry("D5", "dihedral(5)", dihedral(5)),
        _entry("C11", "cyclic(11)", c(11)),
        _entry("C12", "cyclic(12)", c(12)),
        _entry("C6xC2", "direct_product(cyclic(6), cyclic(2))", d(c(6), c(2))),
        _entry("D6", "dihedral(6)", dihedral(6)),
        _entry("A4", "even permutations of 4 points", alternating4()),
        _entry("Dic3", "a^6 = 1, b^2 = a^3, b a b^-1 = a^-1", dicyclic3()),
        _entry("C13", "cyclic(13)", c(13)),
        _entry("C14", "cyclic(14)", c(14)),
        _entry("D7", "dihedral(7)", dihedral(7)),
        _entry("C15", "cyclic(15)", c(15)),
        _entry("C27", "cyclic(27)", c(27)),
        _entry("C9xC3", "direct_product(cyclic(9), cyclic(3))", d(c(9), c(3))),
        _entry(
            "C3xC3xC3",
            "direct_product(direct_product(cyclic(3), cyclic(3)), cyclic(3))",
            d(d(c(3), c(3)), c(3)),
        ),
        _entry("Heis3", "heisenberg(3)", heisenberg(3)),
        _entry("C9sC3", "cyclic(9) twisted by x -> 4x", exponent9_order27()),
    ]
    return tuple(entries)


def entries() -> tuple[CatalogEntry, ...]:
    """All catalog entries in deterministic order (by order, then listing)."""
    return _catalog()


def names() -> list[str]:
    return [e.name for e in _catalog()]


def all_of_order(n: int) -> list[CatalogEntry]:
    """The complete list of isomorphism-class representatives of order n."""
    if n not in SUPPORTED_ORDERS:
        raise UnsupportedOrderError(
            f"order {n} is not covered; supported orders are 1..15 and 27"
        )
    return [e for e in _catalog() if e.order == n]


def by_name(label: str) -> CatalogEntry:
    for e in _catalog():
        if e.name == label:
            return e
    raise UnknownGroupError(
        f"unknown group {label!r}; valid names: {', '.join(names())}"
    )
