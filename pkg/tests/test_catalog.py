import pytest

from groupdist import catalog
from groupdist.groups import (
    element_order,
    find_isomorphism,
    heisenberg,
    order_counts,
    validate,
)

# classically known element-order multisets, as {order: count}
KNOWN_ORDER_MULTISETS = {
    "D3": {1: 1, 2: 3, 3: 2},
    "D4": {1: 1, 2: 5, 4: 2},
    "D5": {1: 1, 2: 5, 5: 4},
    "D6": {1: 1, 2: 7, 3: 2, 6: 2},
    "D7": {1: 1, 2: 7, 7: 6},
    "Q8": {1: 1, 2: 1, 4: 6},
    "Dic3": {1: 1, 2: 1, 3: 2, 4: 6, 6: 2},
    "A4": {1: 1, 2: 3, 3: 8},
    "Heis3": {1: 1, 3: 26},
}


def test_class_counts_match_classification():
    expected = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]
    for order, count in zip(range(1, 16), expected):
        assert len(catalog.all_of_order(order)) == count, order
    assert len(catalog.all_of_order(27)) == 5


def test_order8_names():
    assert [e.name for e in catalog.all_of_order(8)] == [
        "C8", "C4xC2", "C2xC2xC2", "D4", "Q8",
    ]


def test_order27_names():
    assert [e.name for e in catalog.all_of_order(27)] == [
        "C27", "C9xC3", "C3xC3xC3", "Heis3", "C9sC3",
    ]


def test_every_entry_validates():
    for e in catalog.entries():
        assert validate(e.group) == [], e.name
        assert e.order == e.group.n


def test_entries_of_equal_order_pairwise_non_isomorphic():
    for order in catalog.SUPPORTED_ORDERS:
        ents = catalog.all_of_order(order)
        for i in range(len(ents)):
            for j in range(i + 1, len(ents)):
                assert find_isomorphism(ents[i].group, ents[j].group) is None, (
                    ents[i].name,
                    ents[j].name,
                )


def test_isomorphism_search_is_symmetric_across_catalog():
    for order in catalog.SUPPORTED_ORDERS:
        ents = catalog.all_of_order(order)
        for a in ents:
            for b in ents:
                forward = find_isomorphism(a.group, b.group) is not None
                backward = find_isomorphism(b.group, a.group) is not None
                assert forward == backward == (a.name == b.name)


@pytest.mark.parametrize("name,expected", sorted(KNOWN_ORDER_MULTISETS.items()))
def test_known_order_multisets(name, expected):
    assert order_counts(catalog.by_name(name).group) == expected


def test_by_name_q8_has_unique_involution():
    q8 = catalog.by_name("Q8").group
    assert sum(1 for x in range(8) if element_order(q8, x) == 2) == 1


def test_by_name_heis3_is_the_constructor_output():
    assert catalog.by_name("Heis3").group.table == heisenberg(3).table


def test_by_name_unknown_lists_valid_names():
    with pytest.raises(catalog.UnknownGroupError, match="C9sC3"):
        catalog.by_name("Zz9")


def test_uncovered_order_is_an_error():
    with pytest.raises(catalog.UnsupportedOrderError, match="not covered"):
        catalog.all_of_order(16)


def test_exponent9_entry_has_order9_elements():
    g = catalog.by_name("C9sC3").group
    assert not g.is_abelian()
    assert any(element_order(g, x) == 9 for x in range(27))


def test_lagrange_exhaustively_across_catalog():
    for e in catalog.entries():
        for x in range(e.order):
            assert e.order % element_order(e.group, x) == 0, (e.name, x)
