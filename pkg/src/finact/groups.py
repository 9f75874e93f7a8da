"""Finite groups as validated Cayley tables.

Tables are index matrices: table[g][h] is the product "row g, column h". A
handful of named groups ship in builtin_catalog(); elementary abelian groups
double as the vector groups of the affine layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .carriers import CarrierError, FiniteSet, finite_set

ISO_CAP = 12


class GroupError(ValueError):
    """Validation failure with the axiom name and a witness in labels."""

    def __init__(self, kind: str, witness, message: str):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


@dataclass(frozen=True)
class FiniteGroup:
    carrier: FiniteSet
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    @property
    def name(self) -> str:
        return self.carrier.name

    @property
    def order(self) -> int:
        return len(self.carrier)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def label(self, i: int) -> str:
        return self.carrier.label(i)

    def index(self, label: str) -> int:
        return self.carrier.index(label)

    def mul_labels(self, a: str, b: str) -> str:
        return self.label(self.mul(self.index(a), self.index(b)))

    def element_order(self, i: int) -> int:
        k, acc = 1, i
        while acc != self.identity:
            acc = self.mul(acc, i)
            k += 1
        return k

    @cached_property
    def order_profile(self) -> tuple[int, ...]:
        """Sorted multiset of element orders, the cheap isomorphism invariant."""
        return tuple(sorted(self.element_order(i) for i in range(self.order)))


def validate_group(name: str, elements: Sequence[str], rows: Sequence[Sequence[int]]) -> FiniteGroup:
    """Check the group axioms on an index table and build the group.

    Check order: shape, row Latin property, column Latin property, identity,
    inverses, associativity. Witnesses are reported in labels.
    """
    carrier = finite_set(name, elements)
    n = len(carrier)
    if len(rows) != n or any(len(row) != n for row in rows):
        raise GroupError("shape", None, f"table for {name!r} must be {n}x{n}")
    table = tuple(tuple(row) for row in rows)
    for row in table:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise GroupError("shape", None, f"table entry {v!r} out of range")

    for i, row in enumerate(table):
        seen: dict[int, int] = {}
        for j, v in enumerate(row):
            if v in seen:
                raise GroupError(
                    "latin_row",
                    (carrier.label(i), carrier.label(v)),
                    f"row {carrier.label(i)!r} repeats {carrier.label(v)!r}",
                )
            seen[v] = j
    for j in range(n):
        seen = {}
        for i in range(n):
            v = table[i][j]
            if v in seen:
                raise GroupError(
                    "latin_column",
                    (carrier.label(j), carrier.label(v)),
                    f"column {carrier.label(j)!r} repeats {carrier.label(v)!r}",
                )
            seen[v] = i

    identity = None
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(
            table[i][e] == i for i in range(n)
        ):
            identity = e
            break
    if identity is None:
        raise GroupError("identity", None, f"{name!r} has no two-sided identity")

    inverses = []
    for g in range(n):
        h = next(
            (
                h
                for h in range(n)
                if table[g][h] == identity and table[h][g] == identity
            ),
            None,
        )
        if h is None:
            raise GroupError(
                "inverses", carrier.label(g), f"{carrier.label(g)!r} has no inverse"
            )
        inverses.append(h)

    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise GroupError(
                        "associativity",
                        (carrier.label(a), carrier.label(b), carrier.label(c)),
                        "associativity fails at "
                        f"({carrier.label(a)}, {carrier.label(b)}, {carrier.label(c)})",
                    )

    return FiniteGroup(carrier, table, identity, tuple(inverses))


def group_from_rows(name: str, elements: Sequence[str], label_rows: Sequence[Sequence[str]]) -> FiniteGroup:
    """validate_group for tables written with labels instead of indices."""
    carrier = finite_set(name, elements)
    rows = [[carrier.index(v) for v in row] for row in label_rows]
    return validate_group(name, elements, rows)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("shape", None, "cyclic order must be positive")
    elements = [str(i) for i in range(n)]
    rows = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_group(f"Z{n}", elements, rows)


def is_abelian(group: FiniteGroup) -> bool:
    return commutator_witness(group) is None


def commutator_witness(group: FiniteGroup) -> tuple[str, str] | None:
    """Least pair (a, b) with ab != ba, or None."""
    n = group.order
    for a in range(n):
        for b in range(n):
            if group.table[a][b] != group.table[b][a]:
                return (group.label(a), group.label(b))
    return None


def opposite_group(group: FiniteGroup) -> FiniteGroup:
    """Same elements, product read in the other order."""
    n = group.order
    table = tuple(tuple(group.table[j][i] for j in range(n)) for i in range(n))
    carrier = finite_set(f"{group.name}^op", group.carrier.elements)
    return FiniteGroup(carrier, table, group.identity, group.inverses)


def isomorphisms(source: FiniteGroup, target: FiniteGroup) -> Iterator[tuple[int, ...]]:
    """All isomorphisms source -> target as image-index tuples, lexicographic.

    Backtracking over element positions in index order with element-order
    pruning; candidate images tried in ascending index order, so the first
    yield is the lexicographically least mapping.
    """
    n = source.order
    if n != target.order:
        return
    if source.order_profile != target.order_profile:
        return
    src_orders = [source.element_order(i) for i in range(n)]
    tgt_orders = [target.element_order(i) for i in range(n)]
    mapping: list[int | None] = [None] * n
    used = [False] * n
    mapping[source.identity] = target.identity
    used[target.identity] = True

    positions = [i for i in range(n) if i != source.identity]

    def consistent(g: int) -> bool:
        for a in range(n):
            if mapping[a] is None:
                continue
            p = source.table[a][g]
            if mapping[p] is not None and target.table[mapping[a]][mapping[g]] != mapping[p]:
                return False
            q = source.table[g][a]
            if mapping[q] is not None and target.table[mapping[g]][mapping[a]] != mapping[q]:
                return False
        return True

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == len(positions):
            final = tuple(mapping)  # type: ignore[arg-type]
            for a in range(n):
                for b in range(n):
                    if target.table[final[a]][final[b]] != final[source.table[a][b]]:
                        return
            yield final
            return
        g = positions[k]
        for h in range(n):
            if used[h] or tgt_orders[h] != src_orders[g]:
                continue
            mapping[g] = h
            used[h] = True
            if consistent(g):
                yield from extend(k + 1)
            mapping[g] = None
            used[h] = False

    yield from extend(0)


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mapping: tuple[tuple[str, str], ...] | None
    reason: str | None


def is_isomorphic(source: FiniteGroup, target: FiniteGroup, cap: int = ISO_CAP) -> IsoResult:
    """Brute-force isomorphism test, lexicographically least witness.

    Pairs of different orders are refused with a result, not an error, so the
    cap only applies to genuine searches.
    """
    if source.order != target.order:
        return IsoResult(False, None, "order mismatch")
    if source.order > cap:
        raise GroupError(
            "iso_cap", source.order, f"order {source.order} exceeds search cap {cap}"
        )
    if source.order_profile != target.order_profile:
        return IsoResult(False, None, "order profile mismatch")
    for mapping in isomorphisms(source, target):
        pairs = tuple(
            (source.label(i), target.label(mapping[i])) for i in range(source.order)
        )
        return IsoResult(True, pairs, None)
    return IsoResult(False, None, "search exhausted")


def group_automorphisms(group: FiniteGroup) -> Iterator[tuple[int, ...]]:
    return isomorphisms(group, group)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class VectorGroup:
    """An elementary abelian group read additively: digits base prime.

    No scalar action is stored; nothing downstream consumes one. Labels are
    digit strings, most significant digit first, so label order is numeric.
    """

    base: FiniteGroup
    prime: int
    dim: int

    def __post_init__(self):
        expected = 1 if self.dim == 0 else self.prime**self.dim
        if self.base.order != expected:
            raise GroupError(
                "shape",
                self.base.order,
                f"order {self.base.order} does not match {self.prime}^{self.dim}",
            )

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def zero(self) -> int:
        return self.base.identity

    def add(self, i: int, j: int) -> int:
        return self.base.mul(i, j)

    def neg(self, i: int) -> int:
        return self.base.inv(i)

    def label(self, i: int) -> str:
        return self.base.label(i)

    def index(self, label: str) -> int:
        return self.base.index(label)

    def components(self, i: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.dim):
            digits.append(i % self.prime)
            i //= self.prime
        return tuple(reversed(digits))


def elementary_abelian(p: int, n: int) -> VectorGroup:
    """The group of n-digit vectors over the prime field of size p."""
    if not _is_prime(p):
        raise GroupError("prime", p, f"{p} is not prime")
    if n < 1:
        raise GroupError("shape", n, "dimension must be at least 1")
    order = p**n
    labels = []
    for i in range(order):
        digits, v = [], i
        for _ in range(n):
            digits.append(str(v % p))
            v //= p
        labels.append("".join(reversed(digits)))
    powers = [p**k for k in range(n - 1, -1, -1)]

    def add(i: int, j: int) -> int:
        total = 0
        for w in powers:
            total += w * (((i // w) % p + (j // w) % p) % p)
        return total

    rows = [[add(i, j) for j in range(order)] for i in range(order)]
    name = f"Z{p}" if n == 1 else f"Z{p}^{n}"
    base = validate_group(name, labels, rows)
    return VectorGroup(base, p, n)


def as_vector_group(group: FiniteGroup) -> VectorGroup:
    """View a group as a vector group, or explain why it is not one."""
    if group.order == 1:
        return VectorGroup(group, 0, 0)
    if not is_abelian(group):
        raise GroupError(
            "not_elementary_abelian", commutator_witness(group), "group is not abelian"
        )
    p = group.element_order(next(i for i in range(group.order) if i != group.identity))
    for i in range(group.order):
        if i != group.identity and group.element_order(i) != p:
            raise GroupError(
                "not_elementary_abelian",
                group.label(i),
                f"element {group.label(i)!r} has order {group.element_order(i)}, not {p}",
            )
    if not _is_prime(p):
        raise GroupError("not_elementary_abelian", p, f"common order {p} is not prime")
    dim, total = 0, 1
    while total < group.order:
        total *= p
        dim += 1
    if total != group.order:
        raise GroupError(
            "not_elementary_abelian", group.order, f"order is not a power of {p}"
        )
    return VectorGroup(group, p, dim)


_C8_ROWS = [
    ["e", "a", "a2", "a3", "a4", "a5", "a6", "a7"],
    ["a", "a2", "a3", "a4", "a5", "a6", "a7", "e"],
    ["a2", "a3", "a4", "a5", "a6", "a7", "e", "a"],
    ["a3", "a4", "a5", "a6", "a7", "e", "a", "a2"],
    ["a4", "a5", "a6", "a7", "e", "a", "a2", "a3"],
    ["a5", "a6", "a7", "e", "a", "a2", "a3", "a4"],
    ["a6", "a7", "e", "a", "a2", "a3", "a4", "a5"],
    ["a7", "e", "a", "a2", "a3", "a4", "a5", "a6"],
]

_Q_ELEMENTS = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
_Q_ROWS = [
    ["1", "i", "j", "k", "-1", "-i", "-j", "-k"],
    ["i", "-1", "k", "-j", "-i", "1", "-k", "j"],
    ["j", "-k", "-1", "i", "-j", "k", "1", "-i"],
    ["k", "j", "-i", "-1", "-k", "-j", "i", "1"],
    ["-1", "-i", "-j", "-k", "1", "i", "j", "k"],
    ["-i", "1", "-k", "j", "i", "-1", "k", "-j"],
    ["-j", "k", "1", "-i", "j", "-k", "-1", "i"],
    ["-k", "-j", "i", "1", "k", "j", "-i", "-1"],
]


def _permutation_group(name: str, elements: dict[str, tuple[int, ...]]) -> FiniteGroup:
    # product g*h applies h first, matching function composition
    labels = list(elements)
    by_perm = {perm: label for label, perm in elements.items()}
    rows = []
    for a in labels:
        row = []
        for b in labels:
            pa, pb = elements[a], elements[b]
            row.append(labels.index(by_perm[tuple(pa[i] for i in pb)]))
        rows.append(row)
    return validate_group(name, labels, rows)


@lru_cache(maxsize=1)
def builtin_catalog() -> dict[str, FiniteGroup]:
    """Named groups: cyclic Z1..Z12, the vector groups Z2^2 and Z2^3, the
    relabeled cyclic C8, the quaternion group Q, and the permutation groups
    S3 and D4."""
    groups: dict[str, FiniteGroup] = {}
    for n in range(1, 13):
        groups[f"Z{n}"] = cyclic(n)
    groups["Z2^2"] = elementary_abelian(2, 2).base
    groups["Z2^3"] = elementary_abelian(2, 3).base
    groups["C8"] = group_from_rows("C8", _C8_ROWS[0], _C8_ROWS)
    groups["Q"] = group_from_rows("Q", _Q_ELEMENTS, _Q_ROWS)
    groups["S3"] = _permutation_group(
        "S3",
        {
            "e": (0, 1, 2),
            "r": (1, 2, 0),
            "r2": (2, 0, 1),
            "s": (0, 2, 1),
            "rs": (1, 0, 2),
            "r2s": (2, 1, 0),
        },
    )
    groups["D4"] = _permutation_group(
        "D4",
        {
            "e": (0, 1, 2, 3),
            "r": (1, 2, 3, 0),
            "r2": (2, 3, 0, 1),
            "r3": (3, 0, 1, 2),
            "s": (0, 3, 2, 1),
            "rs": (1, 0, 3, 2),
            "r2s": (2, 1, 0, 3),
            "r3s": (3, 2, 1, 0),
        },
    )
    return groups


def catalog_group(name: str) -> FiniteGroup:
    groups = builtin_catalog()
    if name not in groups:
        raise CarrierError(f"unknown catalog group {name!r}")
    return groups[name]
