"""Plurality self-correction of noisy maps between groups.

A map f: G -> K whose pair agreement #{(x,y): f(x*y) = f(x)*f(y)}
exceeds 7/9 of |G|^2 decodes, by taking for each x the most frequent
value of f(x*y)*f(y)^-1 over y, to a genuine homomorphism that matches
f on at least 5/9 of the points, with every plurality block larger
than 2/3 of |G|.  All three thresholds are checked here with exact
integer arithmetic; agreement fractions are carried as (num, den)
pairs and never rounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .groups import GroupTable

# exact rational thresholds, compared by cross-multiplication
PAIR_AGREEMENT_THRESHOLD = (7, 9)   # hypothesis: strictly above
PLURALITY_THRESHOLD = (2, 3)        # each block: strictly above
POINT_AGREEMENT_FLOOR = (5, 9)      # conclusion: at least


@dataclass(frozen=True)
class NoisyMap:
    """A total map between the element sets of two groups."""

    source: GroupTable
    target: GroupTable
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise ValueError(
                f"images has length {len(self.images)}, expected {self.source.n}"
            )
        for v in self.images:
            if not 0 <= v < self.target.n:
                raise ValueError(f"image {v} out of range [0, {self.target.n - 1}]")

    @classmethod
    def trivial(cls, source: GroupTable, target: GroupTable) -> "NoisyMap":
        return cls(source, target, (target.identity,) * source.n)


@dataclass(frozen=True)
class CorrectionReport:
    """Outcome of plurality decoding with all agreement measurements.

    Ratios are exact integer pairs; the three threshold verdicts are
    computed by cross-multiplication only.
    """

    pair_agreement_num: int
    pair_agreement_den: int
    decoded: tuple[int, ...]
    plurality_counts: tuple[int, ...]
    tie_flags: tuple[bool, ...]
    is_hom: bool
    hom_witness: Optional[tuple[int, int]]
    point_agreement_num: int
    point_agreement_den: int
    pair_above_hypothesis: bool      # 9*num > 7*den
    plurality_above_two_thirds: bool  # 3*count > 2*|G| for every element
    point_at_least_five_ninths: bool  # 9*num >= 5*den

    def to_json_dict(self) -> dict:
        return {
            "pair_agreement": {"num": self.pair_agreement_num, "den": self.pair_agreement_den},
            "decoded": list(self.decoded),
            "plurality_counts": list(self.plurality_counts),
            "tie_flags": [bool(t) for t in self.tie_flags],
            "is_hom": self.is_hom,
            "hom_witness": list(self.hom_witness) if self.hom_witness else None,
            "point_agreement": {"num": self.point_agreement_num, "den": self.point_agreement_den},
            "pair_above_hypothesis": self.pair_above_hypothesis,
            "plurality_above_two_thirds": self.plurality_above_two_thirds,
            "point_at_least_five_ninths": self.point_at_least_five_ninths,
        }


@dataclass(frozen=True)
class CorrectionVerdict:
    """pass / fail / not_applicable wrapper around a CorrectionReport.

    `not_applicable` means the pair-agreement hypothesis failed, so no
    guarantee is claimed.  `fail` under a satisfied hypothesis means an
    implementation bug or a counterexample to the correction guarantee
    and should be surfaced loudly by callers.
    """

    verdict: str
    report: CorrectionReport

    @property
    def applicable(self) -> bool:
        return self.verdict != "not_applicable"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def pair_agreement(f: NoisyMap) -> tuple[int, int]:
    """Exact count of agreeing pairs over all |G|^2 products."""
    g, k = f.source, f.target
    imgs = f.images
    n = g.n
    num = 0
    for x in range(n):
        row = g.row(x)
        ix = imgs[x]
        for y in range(n):
            if imgs[row[y]] == k.mul(ix, imgs[y]):
                num += 1
    return num, n * n


def sampled_agreement(f: NoisyMap, samples: int, seed: int = 0) -> tuple[int, int]:
    """Monte Carlo estimate of pair agreement; deterministic per seed."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    g, k = f.source, f.target
    imgs = f.images
    n = g.n
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        x = rng.randrange(n)
        y = rng.randrange(n)
        if imgs[g.mul(x, y)] == k.mul(imgs[x], imgs[y]):
            hits += 1
    return hits, samples


def plurality_decode(f: NoisyMap) -> CorrectionReport:
    """Decode h(x) as the most frequent value of f(x*y)*f(y)^-1 over y.

    Ties are broken toward the smallest target index and flagged.  The
    report carries decoded map, per-element plurality counts, homomorphism
    check, both agreement ratios, and the three threshold verdicts.
    """
    g, k = f.source, f.target
    imgs = f.images
    n = g.n
    kn = k.n
    k_inv = k.inverses()
    decoded = []
    counts = []
    ties = []
    tally = [0] * kn  # reused across elements
    for x in range(n):
        row = g.row(x)
        for y in range(n):
            tally[k.mul(imgs[row[y]], k_inv[imgs[y]])] += 1
        best_v = 0
        best_c = tally[0]
        tie = False
        for v in range(1, kn):
            c = tally[v]
            if c > best_c:
                best_v, best_c = v, c
                tie = False
            elif c == best_c:
                tie = True
        decoded.append(best_v)
        counts.append(best_c)
        ties.append(tie)
        for v in range(kn):
            tally[v] = 0
    h = tuple(decoded)
    ok, witness = is_homomorphism(h, g, k)
    p_num, p_den = pair_agreement(f)
    pt_num, pt_den = point_agreement(f, h)
    return CorrectionReport(
        pair_agreement_num=p_num,
        pair_agreement_den=p_den,
        decoded=h,
        plurality_counts=tuple(counts),
        tie_flags=tuple(ties),
        is_hom=ok,
        hom_witness=witness,
        point_agreement_num=pt_num,
        point_agreement_den=pt_den,
        pair_above_hypothesis=9 * p_num > 7 * p_den,
        plurality_above_two_thirds=all(3 * c > 2 * n for c in counts),
        point_at_least_five_ninths=9 * pt_num >= 5 * pt_den,
    )


def is_homomorphism(
    m: Sequence[int], g: GroupTable, k: GroupTable
) -> tuple[bool, Optional[tuple[int, int]]]:
    """True iff m(x*y) = m(x)*m(y) everywhere; else the first bad pair."""
    n = g.n
    if len(m) != n:
        raise ValueError(f"map has length {len(m)}, expected {n}")
    for x in range(n):
        row = g.row(x)
        mx = m[x]
        for y in range(n):
            if m[row[y]] != k.mul(mx, m[y]):
                return False, (x, y)
    return True, None


def point_agreement(f: NoisyMap, h: Sequence[int]) -> tuple[int, int]:
    """#{x: f(x) = h(x)} over |G| as an exact integer pair."""
    if len(h) != f.source.n:
        raise ValueError(f"map has length {len(h)}, expected {f.source.n}")
    num = sum(1 for a, b in zip(f.images, h) if a == b)
    return num, f.source.n


def fact1_check(f: NoisyMap) -> CorrectionVerdict:
    """Decode f and test the correction guarantee end to end.

    Not applicable unless the pair agreement strictly exceeds 7/9.
    When applicable, passes iff the decoded map is a homomorphism,
    every plurality count strictly exceeds 2/3 of |G|, and point
    agreement is at least 5/9.
    """
    report = plurality_decode(f)
    if not report.pair_above_hypothesis:
        return CorrectionVerdict("not_applicable", report)
    ok = (
        report.is_hom
        and report.plurality_above_two_thirds
        and report.point_at_least_five_ninths
    )
    return CorrectionVerdict("pass" if ok else "fail", report)


def corrupt(h: NoisyMap, points: int, seed: int = 0) -> NoisyMap:
    """Replace the images of `points` distinct elements with random
    different values, chosen by a generator seeded with `seed`.

    Corrupting k points perturbs at most 3k|G| of the |G|^2 pair checks,
    so pair agreement stays at least 1 - 3k/|G|.
    """
    n = h.source.n
    if not 0 <= points <= n:
        raise ValueError(f"points must be in [0, {n}], got {points}")
    kn = h.target.n
    if points > 0 and kn < 2:
        raise ValueError("target group too small to alter images")
    rng = random.Random(seed)
    victims = rng.sample(range(n), points)
    images = list(h.images)
    for x in victims:
        shift = rng.randrange(1, kn)
        images[x] = (images[x] + shift) % kn
    return NoisyMap(h.source, h.target, tuple(images))
