"""Finite groups as Cayley tables over dense element indices 0..n-1.

Tables are stored row-major: entry (i, j) is the index of i*j.  The
identity is located by scanning, never assumed to sit at index 0, so
tables with arbitrary element labelings parse and compare cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence


class TableFormatError(ValueError):
    """Raised when a table file does not conform to the text format."""


class InvalidTableError(ValueError):
    """Raised when a parsed table violates a group axiom.

    Carries the first witnessing violation found by `validate`.
    """

    def __init__(self, violation: "Violation"):
        super().__init__(f"{violation.kind}: {violation.message}")
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    """A failed group invariant with a minimal witness tuple."""

    kind: str  # closure | row | column | identity | inverse | associativity
    witness: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class GroupTable:
    """An order-n group given by its multiplication table.

    `table` holds n*n element indices, row-major.  Construction checks
    shapes and entry ranges only; the group axioms are checked by
    `validate`, so deliberately broken tables can be built and examined.
    Instances are immutable and safe to share across threads.
    """

    name: str
    n: int
    table: tuple[int, ...]
    identity: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"group order must be positive, got {self.n}")
        if len(self.table) != self.n * self.n:
            raise ValueError(
                f"table has {len(self.table)} entries, expected {self.n * self.n}"
            )
        for v in self.table:
            if not 0 <= v < self.n:
                raise ValueError(f"table entry {v} out of range [0, {self.n - 1}]")
        if not 0 <= self.identity < self.n:
            raise ValueError(f"identity index {self.identity} out of range")

    def mul(self, i: int, j: int) -> int:
        return self.table[i * self.n + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.table[i * self.n : (i + 1) * self.n]

    def rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.n)]

    def inverse(self, x: int) -> int:
        r = self.row(x)
        return r.index(self.identity)

    def inverses(self) -> list[int]:
        return [self.inverse(x) for x in range(self.n)]

    def elements(self) -> range:
        return range(self.n)

    def is_abelian(self) -> bool:
        return all(
            self.mul(i, j) == self.mul(j, i)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )


@dataclass(frozen=True)
class ElementMap:
    """A total or partial map between element index sets.

    `images[x]` is the codomain index of x, or None where undefined.
    Bijections, injections, and partial injections are all represented
    this way; the predicates below classify an instance.
    """

    domain_size: int
    codomain_size: int
    images: tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.images) != self.domain_size:
            raise ValueError(
                f"images has length {len(self.images)}, expected {self.domain_size}"
            )
        for y in self.images:
            if y is not None and not 0 <= y < self.codomain_size:
                raise ValueError(f"image {y} out of range [0, {self.codomain_size - 1}]")

    @classmethod
    def total(cls, images: Sequence[int], codomain_size: int) -> "ElementMap":
        return cls(len(images), codomain_size, tuple(int(y) for y in images))

    def __call__(self, x: int) -> Optional[int]:
        return self.images[x]

    def is_total(self) -> bool:
        return all(y is not None for y in self.images)

    def is_injective(self) -> bool:
        defined = [y for y in self.images if y is not None]
        return len(defined) == len(set(defined))

    def is_bijection(self) -> bool:
        return (
            self.domain_size == self.codomain_size
            and self.is_total()
            and self.is_injective()
        )

    def defined_points(self) -> Iterator[tuple[int, int]]:
        for x, y in enumerate(self.images):
            if y is not None:
                yield x, y

    def domain(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.images) if y is not None)


# ---------------------------------------------------------------------------
# validation

def validate(g: GroupTable) -> list[Violation]:
    """Check the five group-table invariants, returning all failures found.

    At most one violation per kind is reported, each with the first
    witness in scan order.  An empty list means the table is a group.
    """
    out: list[Violation] = []
    n = g.n
    t = g.table
    for i in range(n):
        for j in range(n):
            v = t[i * n + j]
            if not 0 <= v < n:
                out.append(Violation("closure", (i, j, v), f"entry ({i},{j}) = {v} is out of range"))
                return out  # later checks would index out of bounds

    bad_row = _first_non_permutation(g.rows(), n)
    if bad_row is not None:
        i, j1, j2 = bad_row
        out.append(Violation("row", (i, j1, j2), f"row {i} repeats entry at columns {j1} and {j2}"))
    cols = [tuple(t[i * n + j] for i in range(n)) for j in range(n)]
    bad_col = _first_non_permutation(cols, n)
    if bad_col is not None:
        j, i1, i2 = bad_col
        out.append(Violation("column", (j, i1, i2), f"column {j} repeats entry at rows {i1} and {i2}"))

    identities = [e for e in range(n) if all(t[e * n + x] == x and t[x * n + e] == x for x in range(n))]
    if not identities:
        out.append(Violation("identity", (), "no two-sided identity element"))
    elif identities != [g.identity]:
        out.append(
            Violation(
                "identity",
                (identities[0], g.identity),
                f"identity found at {identities[0]}, stored as {g.identity}",
            )
        )

    if identities == [g.identity]:
        e = g.identity
        for x in range(n):
            if not any(t[x * n + y] == e and t[y * n + x] == e for y in range(n)):
                out.append(Violation("inverse", (x,), f"element {x} has no two-sided inverse"))
                break

    for i in range(n):
        for j in range(n):
            ij = t[i * n + j]
            for k in range(n):
                if t[ij * n + k] != t[i * n + t[j * n + k]]:
                    out.append(
                        Violation(
                            "associativity",
                            (i, j, k),
                            f"({i}*{j})*{k} = {t[ij * n + k]} but {i}*({j}*{k}) = {t[i * n + t[j * n + k]]}",
                        )
                    )
                    return out
    return out


def _first_non_permutation(seqs, n):
    for i, seq in enumerate(seqs):
        seen: dict[int, int] = {}
        for j, v in enumerate(seq):
            if v in seen:
                return (i, seen[v], j)
            seen[v] = j
    return None


# ---------------------------------------------------------------------------
# table file format

def parse_table(text: str) -> GroupTable:
    """Parse the text table format and fully validate the result.

    Format: optional '#' comment lines (a "# name: <label>" comment sets
    the group name), a "n <order>" line, then n rows of n whitespace-
    separated indices.  Raises TableFormatError for syntax problems and
    InvalidTableError (with witness) for axiom violations.
    """
    name = ""
    order: Optional[int] = None
    rows: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:") and not name:
                name = body[len("name:") :].strip()
            continue
        if order is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise TableFormatError(f"line {lineno}: expected 'n <order>', got {line!r}")
            try:
                order = int(parts[1])
            except ValueError:
                raise TableFormatError(f"line {lineno}: order {parts[1]!r} is not an integer")
            if order < 1:
                raise TableFormatError(f"line {lineno}: order must be positive, got {order}")
            continue
        parts = line.split()
        if len(parts) != order:
            raise TableFormatError(
                f"line {lineno}: expected {order} entries, got {len(parts)}"
            )
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise TableFormatError(f"line {lineno}: non-integer table entry")
        for j, v in enumerate(row):
            if not 0 <= v < order:
                raise TableFormatError(
                    f"line {lineno}: entry {v} at column {j} out of range [0, {order - 1}]"
                )
        rows.append(row)
        if len(rows) > order:
            raise TableFormatError(f"line {lineno}: more than {order} table rows")
    if order is None:
        raise TableFormatError("missing 'n <order>' line")
    if len(rows) != order:
        raise TableFormatError(f"expected {order} table rows, found {len(rows)}")

    flat = tuple(v for row in rows for v in row)
    identity = _locate_identity(flat, order)
    g = GroupTable(name=name, n=order, table=flat, identity=identity if identity is not None else 0)
    violations = validate(g)
    if violations:
        raise InvalidTableError(violations[0])
    return g


def _locate_identity(flat: tuple[int, ...], n: int) -> Optional[int]:
    for e in range(n):
        if all(flat[e * n + x] == x and flat[x * n + e] == x for x in range(n)):
            return e
    return None


def serialize(g: GroupTable) -> str:
    """Emit the canonical table file form; parse(serialize(g)) round-trips."""
    lines = [f"# name: {g.name}", f"n {g.n}"]
    for i in range(g.n):
        lines.append(" ".join(str(v) for v in g.row(i)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# constructors

def cyclic(n: int) -> GroupTable:
    """Additive group of integers mod n."""
    if n < 1:
        raise ValueError(f"cyclic order must be positive, got {n}")
    table = tuple((i + j) % n for i in range(n) for j in range(n))
    return GroupTable(name=f"C{n}", n=n, table=table, identity=0)


def direct_product(a: GroupTable, b: GroupTable) -> GroupTable:
    """Componentwise product; element (x, y) is encoded as x*|b| + y."""
    na, nb = a.n, b.n
    n = na * nb
    table = [0] * (n * n)
    for x1 in range(na):
        for y1 in range(nb):
            i = x1 * nb + y1
            for x2 in range(na):
                for y2 in range(nb):
                    j = x2 * nb + y2
                    table[i * n + j] = a.mul(x1, x2) * nb + b.mul(y1, y2)
    return GroupTable(
        name=f"{a.name}x{b.name}",
        n=n,
        table=tuple(table),
        identity=a.identity * nb + b.identity,
    )


def semidirect_product(
    a: GroupTable,
    b: GroupTable,
    action: Sequence[Sequence[int]],
    name: Optional[str] = None,
) -> GroupTable:
    """Split extension of `a` by `b` with the given twisting action.

    `action[y]` must be an automorphism of `a` for each element y of `b`,
    and y -> action[y] must be a homomorphism into Aut(a); both are
    verified exhaustively before the table is built.  Multiplication is
    (x, y)(x', y') = (x * action[y](x'), y * y'), elements encoded as
    x*|b| + y.
    """
    na, nb = a.n, b.n
    if len(action) != nb:
        raise ValueError(f"action must supply {nb} maps, got {len(action)}")
    maps = [tuple(int(v) for v in m) for m in action]
    for y, m in enumerate(maps):
        bad = _automorphism_defect(a, m)
        if bad is not None:
            raise ValueError(f"action[{y}] is not an automorphism of {a.name}: {bad}")
    for y1 in range(nb):
        for y2 in range(nb):
            comp = maps[b.mul(y1, y2)]
            for x in range(na):
                if comp[x] != maps[y1][maps[y2][x]]:
                    raise ValueError(
                        "action is not a homomorphism: "
                        f"action[{y1}*{y2}]({x}) = {comp[x]} but "
                        f"action[{y1}](action[{y2}]({x})) = {maps[y1][maps[y2][x]]}"
                    )
    n = na * nb
    table = [0] * (n * n)
    for x1 in range(na):
        for y1 in range(nb):
            i = x1 * nb + y1
            act = maps[y1]
            for x2 in range(na):
                for y2 in range(nb):
                    j = x2 * nb + y2
                    table[i * n + j] = a.mul(x1, act[x2]) * nb + b.mul(y1, y2)
    return GroupTable(
        name=name or f"{a.name}s{b.name}",
        n=n,
        table=tuple(table),
        identity=a.identity * nb + b.identity,
    )


def _automorphism_defect(a: GroupTable, m: tuple[int, ...]) -> Optional[str]:
    n = a.n
    if len(m) != n:
        return f"length {len(m)} != {n}"
    if sorted(m) != list(range(n)):
        return "not a permutation"
    for x in range(n):
        for y in range(n):
            if m[a.mul(x, y)] != a.mul(m[x], m[y]):
                return f"breaks multiplication at ({x},{y})"
    return None


def heisenberg(p: int) -> GroupTable:
    """Upper unitriangular 3x3 matrices over integers mod p, order p^3.

    Element (a, b, c) is encoded as a*p^2 + b*p + c with
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b') componentwise mod p.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = p * p * p
    table = [0] * (n * n)
    for a1 in range(p):
        for b1 in range(p):
            for c1 in range(p):
                i = a1 * p * p + b1 * p + c1
                for a2 in range(p):
                    for b2 in range(p):
                        for c2 in range(p):
                            j = a2 * p * p + b2 * p + c2
                            a = (a1 + a2) % p
                            b = (b1 + b2) % p
                            c = (c1 + c2 + a1 * b2) % p
                            table[i * n + j] = a * p * p + b * p + c
    return GroupTable(name=f"Heis{p}", n=n, table=tuple(table), identity=0)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def relabel(g: GroupTable, perm: Sequence[int], name: Optional[str] = None) -> GroupTable:
    """Apply a bijection to the element indices, producing an isomorphic copy."""
    n = g.n
    p = list(perm)
    if sorted(p) != list(range(n)):
        raise ValueError("perm is not a permutation of the element indices")
    inv = [0] * n
    for x, y in enumerate(p):
        inv[y] = x
    table = tuple(
        p[g.mul(inv[i], inv[j])] for i in range(n) for j in range(n)
    )
    return GroupTable(
        name=name or f"{g.name}~", n=n, table=table, identity=p[g.identity]
    )


# ---------------------------------------------------------------------------
# element orders and morphism search

def element_order(g: GroupTable, x: int) -> int:
    """Least k >= 1 with x^k equal to the identity."""
    if not 0 <= x < g.n:
        raise ValueError(f"element index {x} out of range")
    k = 1
    y = x
    while y != g.identity:
        y = g.mul(y, x)
        k += 1
    return k


def order_counts(g: GroupTable) -> dict[int, int]:
    counts: dict[int, int] = {}
    for x in range(g.n):
        o = element_order(g, x)
        counts[o] = counts.get(o, 0) + 1
    return counts


def generating_sequence(g: GroupTable) -> list[int]:
    """Greedy generating sequence: repeatedly adjoin the lowest-index
    element outside the span of those chosen so far."""
    span = {g.identity}
    gens: list[int] = []
    while len(span) < g.n:
        x = min(set(range(g.n)) - span)
        gens.append(x)
        span = _closure(g, span | {x})
    return gens


def _closure(g: GroupTable, seed: set[int]) -> set[int]:
    out = set(seed)
    frontier = list(seed)
    while frontier:
        nxt = []
        for u in frontier:
            for w in list(out):
                for p in (g.mul(u, w), g.mul(w, u)):
                    if p not in out:
                        out.add(p)
                        nxt.append(p)
        frontier = nxt
    return out


def find_isomorphism(a: GroupTable, b: GroupTable) -> Optional[ElementMap]:
    """Search for a bijection m with m(x*y) = m(x)*m(y) for all pairs.

    Backtracking over images of a generating sequence, pruned by element
    order and by incremental consistency under closure propagation.
    """
    if a.n != b.n:
        return None
    return _injective_hom(a, b)


def find_subgroup_embedding(g: GroupTable, k: GroupTable) -> Optional[ElementMap]:
    """Search for an injective total homomorphism of g into k.

    Returns None immediately when |g| does not divide |k|.
    """
    if g.n > k.n or k.n % g.n != 0:
        return None
    return _injective_hom(g, k)


def _injective_hom(a: GroupTable, b: GroupTable) -> Optional[ElementMap]:
    na, nb = a.n, b.n
    a_ord = [element_order(a, x) for x in range(na)]
    b_ord = [element_order(b, x) for x in range(nb)]
    # an injective homomorphism preserves element orders exactly
    need: dict[int, int] = {}
    for o in a_ord:
        need[o] = need.get(o, 0) + 1
    have: dict[int, int] = {}
    for o in b_ord:
        have[o] = have.get(o, 0) + 1
    for o, c in need.items():
        if have.get(o, 0) < c:
            return None

    gens = generating_sequence(a)
    img = [-1] * na
    used = [False] * nb
    img[a.identity] = b.identity
    used[b.identity] = True
    known: list[int] = [a.identity]

    def propagate(start: int) -> bool:
        """Close the partial map under products; known[start:] is the queue."""
        qi = start
        while qi < len(known):
            u = known[qi]
            qi += 1
            for w in known[:qi]:
                for x, y in ((u, w), (w, u)):
                    p = a.mul(x, y)
                    q = b.mul(img[x], img[y])
                    if img[p] == -1:
                        if used[q]:
                            return False
                        img[p] = q
                        used[q] = True
                        known.append(p)
                    elif img[p] != q:
                        return False
        return True

    def undo(mark: int) -> None:
        while len(known) > mark:
            p = known.pop()
            used[img[p]] = False
            img[p] = -1

    def assign(gi: int) -> bool:
        if gi == len(gens):
            return True
        x = gens[gi]
        for c in range(nb):
            if used[c] or b_ord[c] != a_ord[x]:
                continue
            mark = len(known)
            img[x] = c
            used[c] = True
            known.append(x)
            if propagate(mark) and assign(gi + 1):
                return True
            undo(mark)
        return False

    if not assign(0):
        return None
    return ElementMap(na, nb, tuple(img))
