"""Overlap witnesses and recovery of subgroup embeddings.

An overlap witness realizes an agreement count through injections
gamma: G -> S and kappa: K -> S into a common ambient set, the matched
region G0 = {x: gamma(x) in image(kappa)}, and the set Z of agreeing
pairs.  `recover_embedding` turns a near-embedding into an exact one
by plurality decoding, verifying injectivity and that the image is a
subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .blr import NoisyMap, CorrectionReport, plurality_decode
from .groups import ElementMap, GroupTable

# above this source order only the agreement count is kept, not the
# explicit pair list
Z_PAIRS_LIMIT = 32


@dataclass(frozen=True)
class OverlapWitness:
    """A realization (gamma, kappa, S, Z) of an overlap agreement count."""

    s_size: int
    gamma: tuple[int, ...]
    kappa: tuple[int, ...]
    z_pairs: Optional[tuple[tuple[int, int], ...]]
    g0: tuple[int, ...]
    agreement_count: int

    def __post_init__(self):
        if self.s_size < max(len(self.gamma), len(self.kappa)):
            raise ValueError("ambient set smaller than one of the groups")
        for m, label in ((self.gamma, "gamma"), (self.kappa, "kappa")):
            if any(not 0 <= v < self.s_size for v in m):
                raise ValueError(f"{label} maps outside the ambient set")
            if len(set(m)) != len(m):
                raise ValueError(f"{label} is not injective")
        if self.z_pairs is not None and len(self.z_pairs) != self.agreement_count:
            raise ValueError("agreement_count does not match the listed pairs")


def witness_from_injection(
    phi: ElementMap, g: GroupTable, k: GroupTable
) -> OverlapWitness:
    """Materialize the witness with S = K, kappa the identity, gamma = phi.

    The matched region is then all of G and Z is exactly the set of
    pairs on which phi respects multiplication.
    """
    if not (phi.is_total() and phi.is_injective()):
        raise ValueError("phi must be a total injection")
    if phi.domain_size != g.n or phi.codomain_size != k.n:
        raise ValueError("phi does not map between the given groups")
    images = tuple(int(v) for v in phi.images)  # type: ignore[arg-type]
    pairs = []
    count = 0
    keep_pairs = g.n <= Z_PAIRS_LIMIT
    for x in range(g.n):
        row = g.row(x)
        for y in range(g.n):
            if images[row[y]] == k.mul(images[x], images[y]):
                count += 1
                if keep_pairs:
                    pairs.append((x, y))
    return OverlapWitness(
        s_size=k.n,
        gamma=images,
        kappa=tuple(range(k.n)),
        z_pairs=tuple(pairs) if keep_pairs else None,
        g0=tuple(range(g.n)),
        agreement_count=count,
    )


def witness_is_consistent(w: OverlapWitness, g: GroupTable, k: GroupTable) -> bool:
    """Re-check the witness invariants: G0 is exactly the matched region
    and every listed pair satisfies the three defining equations."""
    kappa_image = {v: x for x, v in enumerate(w.kappa)}
    matched = tuple(x for x in range(g.n) if w.gamma[x] in kappa_image)
    if matched != tuple(sorted(w.g0)):
        return False
    if w.z_pairs is None:
        return True
    for (x, y) in w.z_pairs:
        xk = kappa_image.get(w.gamma[x])
        yk = kappa_image.get(w.gamma[y])
        if xk is None or yk is None:
            return False
        if w.gamma[g.mul(x, y)] != w.kappa[k.mul(xk, yk)]:
            return False
    return len(set(w.z_pairs)) == w.agreement_count


def partial_from_witness(w: OverlapWitness) -> ElementMap:
    """The partial injection defined on G0 by x -> kappa^-1(gamma(x))."""
    kappa_image = {v: x for x, v in enumerate(w.kappa)}
    images: list[Optional[int]] = []
    for x in range(len(w.gamma)):
        images.append(kappa_image.get(w.gamma[x]))
    for x in w.g0:
        if images[x] is None:
            raise ValueError(f"witness g0 contains unmatched element {x}")
    return ElementMap(len(w.gamma), len(w.kappa), tuple(images))


def extend_partial_injection(
    p: ElementMap, g: GroupTable, k: GroupTable
) -> ElementMap:
    """Extend a partial injection to a total one.

    Undefined elements receive, in ascending source-index order, the
    smallest codomain index not yet used.
    """
    if g.n > k.n:
        raise ValueError(f"no injection exists: source order {g.n} > target {k.n}")
    if not p.is_injective():
        raise ValueError("partial map is not injective on its domain")
    used = set(v for v in p.images if v is not None)
    images = list(p.images)
    free = iter(v for v in range(k.n) if v not in used)
    for x in range(g.n):
        if images[x] is None:
            images[x] = next(free)
    return ElementMap(g.n, k.n, tuple(images))  # type: ignore[arg-type]


@dataclass(frozen=True)
class RecoveredEmbedding:
    """An exact embedding decoded from a near-embedding."""

    psi: tuple[int, ...]
    disagreements: int          # #{x: psi(x) != phi(x)}, satisfies 9*d < 4*|G|
    image: tuple[int, ...]      # sorted image subset of K, a subgroup


@dataclass(frozen=True)
class RecoveryOutcome:
    """Result of recover_embedding, measurements included either way."""

    applicable: bool
    agreement_num: int
    agreement_den: int
    embedding: Optional[RecoveredEmbedding]
    report: CorrectionReport

    def to_json_dict(self) -> dict:
        out = {
            "applicable": self.applicable,
            "agreement": {"num": self.agreement_num, "den": self.agreement_den},
            "psi": None,
            "disagreements": None,
            "image": None,
        }
        if self.embedding is not None:
            out["psi"] = list(self.embedding.psi)
            out["disagreements"] = self.embedding.disagreements
            out["image"] = list(self.embedding.image)
        return out


def recover_embedding(
    g: GroupTable, k: GroupTable, phi: ElementMap
) -> RecoveryOutcome:
    """Decode a near-embedding phi into an exact subgroup embedding.

    Treats phi as a noisy map and plurality-decodes it.  When phi's
    pair agreement strictly exceeds 7/9, the decoded map is verified to
    be an injective homomorphism differing from phi on fewer than
    4/9*|G| points, with image closed under multiplication and
    inverses; any violation under a satisfied hypothesis is raised as a
    hard error.  When the hypothesis fails, returns the measurements
    with no embedding.
    """
    if not (phi.is_total() and phi.is_injective()):
        raise ValueError("phi must be a total injection")
    if phi.domain_size != g.n or phi.codomain_size != k.n:
        raise ValueError("phi does not map between the given groups")
    images = tuple(int(v) for v in phi.images)  # type: ignore[arg-type]
    f = NoisyMap(g, k, images)
    report = plurality_decode(f)
    if not report.pair_above_hypothesis:
        return RecoveryOutcome(
            applicable=False,
            agreement_num=report.pair_agreement_num,
            agreement_den=report.pair_agreement_den,
            embedding=None,
            report=report,
        )
    psi = report.decoded
    if not report.is_hom:
        raise RuntimeError(
            f"decoded map is not a homomorphism at {report.hom_witness} "
            "despite pair agreement above 7/9"
        )
    d = sum(1 for a, b in zip(psi, images) if a != b)
    if not 9 * d < 4 * g.n:
        raise RuntimeError(
            f"decoded map differs from the injection on {d} of {g.n} points, "
            "breaking the 4/9 disagreement guarantee"
        )
    if len(set(psi)) != g.n:
        raise RuntimeError(
            "decoded homomorphism is not injective despite the hypothesis"
        )
    image = sorted(set(psi))
    image_set = set(image)
    for a in image:
        if k.inverse(a) not in image_set:
            raise RuntimeError(f"recovered image not closed under inverse at {a}")
        for b in image:
            if k.mul(a, b) not in image_set:
                raise RuntimeError(
                    f"recovered image not closed under multiplication at ({a},{b})"
                )
    if k.identity not in image_set:
        raise RuntimeError("recovered image does not contain the identity")
    return RecoveryOutcome(
        applicable=True,
        agreement_num=report.pair_agreement_num,
        agreement_den=report.pair_agreement_den,
        embedding=RecoveredEmbedding(
            psi=psi, disagreements=d, image=tuple(image)
        ),
        report=report,
    )
