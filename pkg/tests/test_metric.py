import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupdist import catalog, metric
from groupdist.groups import (
    cyclic,
    direct_product,
    find_isomorphism,
    relabel,
)

from oracles import naive_agreement, naive_max_overlap, naive_min_distance

KLEIN = direct_product(cyclic(2), cyclic(2))

# frozen from the exhaustive enumerations in oracles.py
NAIVE_MIN_DISTANCES = {
    ("C4", "C2xC2"): 4,
    ("C6", "D3"): 12,
    ("C8", "Q8"): 24,
    ("D4", "C2xC2xC2"): 16,
    ("C9", "C3xC3"): 18,
}


def group(name):
    return catalog.by_name(name).group


# ---------------------------------------------------------------------------
# raw distance counting

def test_table_distance_self_is_zero():
    g = group("D4")
    assert metric.table_distance(g, g) == 0


def test_table_distance_is_symmetric_and_counts_cells():
    a, b = cyclic(4), KLEIN
    direct = sum(
        1 for x in range(4) for y in range(4) if a.mul(x, y) != b.mul(x, y)
    )
    assert metric.table_distance(a, b) == direct
    assert metric.table_distance(b, a) == direct
    assert direct == 16 - naive_agreement(a, b, range(4))


def test_table_distance_rejects_size_mismatch():
    with pytest.raises(ValueError, match="order mismatch"):
        metric.table_distance(cyclic(3), cyclic(4))


def test_distance_under_isomorphism_is_zero():
    g = cyclic(12)
    h = relabel(g, [(7 * x + 5) % 12 for x in range(12)])
    m = find_isomorphism(g, h)
    assert metric.distance_under_map(g, h, m) == 0


def test_distance_under_identity_on_same_table():
    g = group("Q8")
    assert metric.distance_under_map(g, g, list(range(8))) == 0


def test_distance_under_map_rejects_non_bijection():
    with pytest.raises(ValueError, match="bijection"):
        metric.distance_under_map(cyclic(3), cyclic(3), [0, 0, 1])


@given(st.randoms(use_true_random=False))
@settings(max_examples=50, deadline=None)
def test_distance_and_agreement_are_complementary(rng):
    a, b = cyclic(6), group("D3")
    m = list(range(6))
    rng.shuffle(m)
    d = metric.distance_under_map(a, b, m)
    ag = metric.agreement_under_injection(a, b, m)
    assert d + ag == 36
    assert ag == naive_agreement(a, b, m)


# ---------------------------------------------------------------------------
# exact search

def test_min_distance_isomorphic_pair_is_zero():
    g = group("D4")
    h = relabel(g, [3, 1, 4, 7, 0, 2, 6, 5])
    res = metric.min_distance_exact(g, h)
    assert res.value == 0 and res.exact


@pytest.mark.parametrize("name_a,name_b", sorted(NAIVE_MIN_DISTANCES))
def test_min_distance_matches_frozen_enumeration(name_a, name_b):
    expected = NAIVE_MIN_DISTANCES[(name_a, name_b)]
    res = metric.min_distance_exact(group(name_a), group(name_b))
    assert res.exact
    assert res.value == expected
    assert res.check(group(name_a), group(name_b))


def test_min_distance_c4_klein_meets_overlap_bound():
    # non-embeddable equal-order pair: overlap <= floor(7/9 * 16) = 12,
    # so the distance can be no smaller than 4
    res = metric.min_distance_exact(cyclic(4), KLEIN)
    assert res.value >= 4
    assert res.value == 4


def test_bnb_equals_naive_enumeration_on_small_orders():
    for order in (4, 6):
        ents = catalog.all_of_order(order)
        for a, b in itertools.combinations(ents, 2):
            got = metric.min_distance_exact(a.group, b.group).value
            want = naive_min_distance(a.group, b.group)
            assert got == want, (a.name, b.name)


def test_min_distance_budget_exhaustion_is_flagged():
    res = metric.min_distance_exact(group("C9"), group("C3xC3"), budget=50)
    assert not res.exact
    assert res.value >= 18  # best-so-far never beats the true minimum
    assert res.check(group("C9"), group("C3xC3"))


def test_min_distance_node_count_is_deterministic():
    r1 = metric.min_distance_exact(group("C8"), group("Q8"))
    r2 = metric.min_distance_exact(group("C8"), group("Q8"))
    assert (r1.value, r1.nodes, r1.witness) == (r2.value, r2.nodes, r2.witness)


# ---------------------------------------------------------------------------
# heuristic search

def test_heuristic_reaches_zero_on_isomorphic_pair():
    g = group("C10")
    h = relabel(g, [(3 * x + 4) % 10 for x in range(10)])
    res = metric.min_distance_heuristic(g, h, seed=0, restarts=16)
    assert res.value == 0
    assert not res.exact


def test_heuristic_is_deterministic_per_seed():
    a, b = group("Heis3"), group("C3xC3xC3")
    r1 = metric.min_distance_heuristic(a, b, seed=5, restarts=8)
    r2 = metric.min_distance_heuristic(a, b, seed=5, restarts=8)
    assert (r1.value, r1.witness, r1.nodes) == (r2.value, r2.witness, r2.nodes)


def test_heuristic_never_beats_exact():
    pairs = [("C4", "C2xC2"), ("C6", "D3"), ("C8", "D4"), ("C9", "C3xC3")]
    for name_a, name_b in pairs:
        a, b = group(name_a), group(name_b)
        exact = metric.min_distance_exact(a, b).value
        for seed in range(3):
            heur = metric.min_distance_heuristic(a, b, seed=seed, restarts=4)
            assert heur.value >= exact
            assert heur.check(a, b)


def test_heuristic_order27_respects_lower_bound():
    res = metric.min_distance_heuristic(
        group("Heis3"), group("C3xC3xC3"), seed=1, restarts=8
    )
    assert 9 * res.value >= 2 * 27 * 27  # value >= 162


# ---------------------------------------------------------------------------
# overlap

def test_overlap_of_embedding_is_full():
    g, k = cyclic(2), cyclic(4)
    res = metric.overlap_exact(g, k)
    assert res.value == 4
    g, k = cyclic(4), group("D4")
    assert metric.overlap_exact(g, k).value == 16


def test_overlap_c3_c4_matches_enumeration():
    res = metric.overlap_exact(cyclic(3), cyclic(4))
    assert res.value == naive_max_overlap(cyclic(3), cyclic(4)) == 7
    assert 9 * res.value <= 7 * 9
    assert res.check(cyclic(3), cyclic(4))


def test_overlap_rejects_oversized_source():
    with pytest.raises(ValueError, match="exceeds"):
        metric.overlap_exact(cyclic(5), cyclic(4))


def test_overlap_complements_distance_at_equal_order():
    for name_a, name_b in [("C4", "C2xC2"), ("C6", "D3")]:
        a, b = group(name_a), group(name_b)
        ov = metric.overlap_exact(a, b).value
        d = metric.min_distance_exact(a, b).value
        assert ov + d == a.n * a.n


def test_overlap_equals_naive_on_cross_order_pairs():
    cases = [
        (cyclic(2), cyclic(3)),
        (cyclic(3), KLEIN),
        (cyclic(4), cyclic(6)),
        (cyclic(5), cyclic(6)),
        (cyclic(5), group("D3")),
        (cyclic(4), cyclic(7)),
    ]
    for g, k in cases:
        got = metric.overlap_exact(g, k).value
        assert got == naive_max_overlap(g, k), (g.name, k.name)


# ---------------------------------------------------------------------------
# bound verdicts

def test_bound_check_non_isomorphic_equal_order():
    v = metric.drapal_bound_check(group("C9"), group("C3xC3"))
    assert v.checked and not v.subgroup_embeddable
    assert v.distance == 18
    assert v.distance_meets_lower and v.distance_exceeds_weak
    assert v.overlap_within_bound
    assert v.passed


def test_bound_check_isomorphic_pair_is_skipped():
    g = group("D4")
    v = metric.drapal_bound_check(g, relabel(g, [1, 0, 2, 3, 4, 5, 7, 6]))
    assert v.subgroup_embeddable
    assert not v.checked
    assert v.passed


def test_bound_check_c3_c4():
    v = metric.drapal_bound_check(cyclic(3), cyclic(4))
    assert not v.subgroup_embeddable
    assert v.overlap == 7
    assert 9 * v.overlap <= 63
    assert v.passed


def test_bound_check_accepts_precomputed_results():
    a, b = group("C6"), group("D3")
    ov = metric.overlap_exact(a, b)
    d = metric.min_distance_exact(a, b)
    v = metric.drapal_bound_check(a, b, overlap=ov, distance=d)
    assert v.distance == d.value == 12
    assert v.passed
