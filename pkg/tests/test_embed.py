import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupdist import blr, catalog, embed, metric
from groupdist.groups import (
    ElementMap,
    cyclic,
    direct_product,
    find_subgroup_embedding,
)


def group(name):
    return catalog.by_name(name).group


def as_noisy(phi, g, k):
    return blr.NoisyMap(g, k, tuple(int(v) for v in phi.images))


# ---------------------------------------------------------------------------
# witnesses

def test_witness_of_embedding_has_full_agreement():
    g, k = cyclic(4), group("D4")
    phi = find_subgroup_embedding(g, k)
    w = embed.witness_from_injection(phi, g, k)
    assert w.agreement_count == 16
    assert w.g0 == tuple(range(4))
    assert w.kappa == tuple(range(8))
    assert len(w.z_pairs) == 16
    assert embed.witness_is_consistent(w, g, k)


def test_witness_counts_agree_with_metric():
    g, k = cyclic(5), group("D3")
    phi = ElementMap.total([0, 2, 4, 1, 5], 6)
    w = embed.witness_from_injection(phi, g, k)
    assert w.agreement_count == metric.agreement_under_injection(g, k, phi)
    assert embed.witness_is_consistent(w, g, k)


def test_witness_membership_recheck_rejects_bad_pairs():
    g, k = cyclic(3), cyclic(4)
    phi = ElementMap.total([0, 1, 3], 4)
    w = embed.witness_from_injection(phi, g, k)
    tampered = embed.OverlapWitness(
        s_size=w.s_size,
        gamma=w.gamma,
        kappa=w.kappa,
        z_pairs=w.z_pairs[:-1] + ((2, 2),) if (2, 2) not in w.z_pairs else w.z_pairs,
        g0=w.g0,
        agreement_count=w.agreement_count,
    )
    if tampered.z_pairs != w.z_pairs:
        assert not embed.witness_is_consistent(tampered, g, k)


def test_witness_rejects_non_injection():
    g, k = cyclic(3), cyclic(4)
    with pytest.raises(ValueError, match="total injection"):
        embed.witness_from_injection(ElementMap(3, 4, (0, 0, 1)), g, k)


def test_large_group_witness_keeps_count_only():
    # above 32 elements only the agreement count is retained
    g = direct_product(cyclic(6), cyclic(6))
    phi = ElementMap.total(list(range(36)), 36)
    w = embed.witness_from_injection(phi, g, g)
    assert w.z_pairs is None
    assert w.agreement_count == 36 * 36


# ---------------------------------------------------------------------------
# partial maps and extension

def test_partial_from_full_injection_witness_is_total():
    g, k = cyclic(2), cyclic(4)
    phi = find_subgroup_embedding(g, k)
    w = embed.witness_from_injection(phi, g, k)
    p = embed.partial_from_witness(w)
    assert p.images == phi.images


def test_partial_from_disjoint_images_is_empty():
    # gamma into 0..2, kappa into 4..7: no matched elements
    w = embed.OverlapWitness(
        s_size=8,
        gamma=(0, 1, 2),
        kappa=(4, 5, 6, 7),
        z_pairs=(),
        g0=(),
        agreement_count=0,
    )
    p = embed.partial_from_witness(w)
    assert p.domain() == ()


def test_partial_composes_back_through_kappa():
    g, k = cyclic(4), cyclic(4)
    # gamma matches kappa on two elements only
    w = embed.OverlapWitness(
        s_size=8,
        gamma=(0, 1, 6, 7),
        kappa=(0, 1, 2, 3),
        z_pairs=None,
        g0=(0, 1),
        agreement_count=0,
    )
    p = embed.partial_from_witness(w)
    assert p.domain() == (0, 1)
    for x in p.domain():
        assert w.gamma[x] == w.kappa[p(x)]


def test_extend_returns_total_maps_unchanged():
    g, k = cyclic(3), cyclic(6)
    p = ElementMap.total([0, 2, 4], 6)
    assert embed.extend_partial_injection(p, g, k).images == p.images


def test_extend_empty_map_is_identity_indexing():
    g = cyclic(5)
    p = ElementMap(5, 5, (None,) * 5)
    assert embed.extend_partial_injection(p, g, g).images == (0, 1, 2, 3, 4)


def test_extend_rejects_oversized_domain():
    p = ElementMap(5, 4, (None,) * 5)
    with pytest.raises(ValueError, match="no injection"):
        embed.extend_partial_injection(p, cyclic(5), cyclic(4))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_extension_restricted_to_domain_is_the_partial_map(data):
    ng = data.draw(st.integers(1, 6))
    nk = data.draw(st.integers(ng, 8))
    g, k = cyclic(ng), cyclic(nk)
    targets = data.draw(st.permutations(range(nk)))
    defined = data.draw(st.sets(st.integers(0, ng - 1), max_size=ng))
    images = [targets[x] if x in defined else None for x in range(ng)]
    p = ElementMap(ng, nk, tuple(images))
    full = embed.extend_partial_injection(p, g, k)
    assert full.is_total() and full.is_injective()
    for x in p.domain():
        assert full(x) == p(x)


def test_round_trip_injection_to_witness_and_back():
    g, k = cyclic(4), group("C12")
    phi = ElementMap.total([0, 3, 6, 9], 12)
    w = embed.witness_from_injection(phi, g, k)
    p = embed.partial_from_witness(w)
    back = embed.extend_partial_injection(p, g, k)
    assert back.images == phi.images


# ---------------------------------------------------------------------------
# recovery

def test_recover_from_true_embedding():
    g, k = cyclic(4), group("C12")
    phi = find_subgroup_embedding(g, k)
    out = embed.recover_embedding(g, k, phi)
    assert out.applicable
    assert out.embedding.psi == phi.images
    assert out.embedding.disagreements == 0
    assert len(out.embedding.image) == 4


def test_recover_from_corrupted_embedding():
    from fixtures import corrupt_injection, doubled, natural_embedding

    g = group("C27")
    k = doubled(g)
    base = natural_embedding(g)
    for seed in range(6):
        images = corrupt_injection(base.images, k.n, 1, seed)
        phi = ElementMap.total(list(images), k.n)
        out = embed.recover_embedding(g, k, phi)
        # one corruption in 27 points keeps agreement above 7/9
        assert out.applicable
        assert out.embedding.psi == base.images
        assert out.embedding.disagreements == 1
        assert 9 * out.embedding.disagreements < 4 * 27


def test_recover_never_applicable_for_c3_into_c4():
    # overlap of C3 into C4 is exactly 7 of 9 pairs, never strictly above
    g, k = cyclic(3), cyclic(4)
    for perm in itertools.permutations(range(4), 3):
        out = embed.recover_embedding(g, k, ElementMap.total(list(perm), 4))
        assert not out.applicable
        assert 9 * out.agreement_num <= 7 * out.agreement_den


def test_recovery_forward_implies_embedding_exists():
    cases = [("C3", "C3xC3"), ("C4", "C8"), ("C2", "D4")]
    for name_g, name_k in cases:
        g, k = group(name_g), group(name_k)
        phi = find_subgroup_embedding(g, k)
        out = embed.recover_embedding(g, k, phi)
        assert out.applicable
        assert find_subgroup_embedding(g, k) is not None


def test_recovered_image_is_a_subgroup():
    g, k = cyclic(3), group("Heis3")
    phi = find_subgroup_embedding(g, k)
    out = embed.recover_embedding(g, k, phi)
    image = set(out.embedding.image)
    assert k.identity in image
    for a in image:
        assert k.inverse(a) in image
        for b in image:
            assert k.mul(a, b) in image


def test_contrapositive_bound_on_small_catalog_pairs():
    # pairs with |G| <= |K| <= 8 and no embedding satisfy the 7/9 bound
    ents = [e for e in catalog.entries() if e.order <= 8]
    for eg in ents:
        for ek in ents:
            if eg.order > ek.order:
                continue
            if find_subgroup_embedding(eg.group, ek.group) is not None:
                continue
            ov = metric.overlap_exact(eg.group, ek.group)
            assert ov.exact
            assert 9 * ov.value <= 7 * eg.order * eg.order, (eg.name, ek.name)
