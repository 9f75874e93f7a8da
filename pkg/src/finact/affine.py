"""Preaffine and affine spaces over a finite carrier.

A preaffine space is a regular action of a vector group whose translations
are closed under composition and include the identity; it is affine when the
vector-to-translation map is additive. Vectors apply left to right: x + u + v
means apply u, then v, so sums of vectors read contravariantly against
function composition and classification here selects the contravariant flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .actions import (
    Action,
    ClassificationReport,
    classify,
    image_analysis,
)
from .carriers import Endofunction, FiniteSet, compose, inverse
from .groups import FiniteGroup, VectorGroup


class AffineError(ValueError):
    """Verification failure; failed is one of unitality, regularity,
    closedness, domain."""

    def __init__(self, failed: str, witness, message: str):
        super().__init__(message)
        self.failed = failed
        self.witness = witness


@dataclass(frozen=True)
class PreaffineSpace:
    vectors: VectorGroup
    action: Action
    division_table: tuple[tuple[int, ...], ...]
    kind: str  # "affine" or "strictly_preaffine"
    classification: ClassificationReport

    @property
    def carrier(self) -> FiniteSet:
        return self.action.carrier

    @property
    def order(self) -> int:
        return len(self.action.carrier)

    def point_add(self, x: str, v: str) -> str:
        return self.action.maps[self.vectors.index(v)](x)

    def difference(self, x: str, y: str) -> str:
        """The unique vector carrying x to y."""
        xi, yi = self.carrier.index(x), self.carrier.index(y)
        return self.vectors.label(self.division_table[xi][yi])

    def translation_of(self, v: str) -> Endofunction:
        return self.action.maps[self.vectors.index(v)]


def _domains_match(vectors: VectorGroup, action: Action) -> bool:
    g = action.group
    return (
        g is not None
        and g.carrier.elements == vectors.base.carrier.elements
        and g.table == vectors.base.table
        and g.identity == vectors.base.identity
    )


def verify_preaffine(vectors: VectorGroup, action: Action) -> PreaffineSpace:
    """Certify an action of a vector group as a preaffine space.

    Checks, in order: the domain is the vector group, unitality, regularity,
    closedness of the translation set. The kind is affine exactly when the
    contravariant closed-group flag holds."""
    if not _domains_match(vectors, action):
        raise AffineError(
            "domain", None, "action domain is not the given vector group"
        )
    report = classify(action, variance="contravariant")
    if not report.flags["unital_group"]:
        raise AffineError(
            "unitality",
            report.witnesses.get("unital_group"),
            "the zero vector does not act as the identity",
        )
    if not report.flags["regular"]:
        raise AffineError(
            "regularity",
            report.witnesses.get("regular"),
            "the action is not regular",
        )
    if not report.flags["closed_set"]:
        raise AffineError(
            "closedness",
            report.witnesses.get("closed_set"),
            "the translations are not closed under composition",
        )
    n = len(action.carrier)
    division = []
    for x in range(n):
        row = [-1] * n
        for g, m in enumerate(action.maps):
            row[m.images[x]] = g
        division.append(tuple(row))
    kind = (
        "affine" if report.flags["closed_group_contravariant"] else "strictly_preaffine"
    )
    return PreaffineSpace(vectors, action, tuple(division), kind, report)


def translation_group(space) -> FiniteGroup:
    """The translations as a group; exists for every preaffine space."""
    img = image_analysis(space.action)
    if not img.is_group:
        raise AffineError("closedness", None, "translation image is not a group")
    return img.group


def chasles_vector_witness(space: PreaffineSpace) -> tuple[str, str, str] | None:
    """Least (x, y, z) with (x->y) + (y->z) != (x->z), or None."""
    div, add = space.division_table, space.vectors.add
    n = space.order
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if add(div[x][y], div[y][z]) != div[x][z]:
                    c = space.carrier.label
                    return (c(x), c(y), c(z))
    return None


def chasles_translation_witness(space: PreaffineSpace) -> tuple[str, str, str] | None:
    """Least (x, y, z) where applying (x->y) then (y->z) differs from (x->z)
    as a map, or None. This level holds on every preaffine space."""
    div, maps = space.division_table, space.action.maps
    n = space.order
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if compose(maps[div[y][z]], maps[div[x][y]]).images != maps[div[x][z]].images:
                    c = space.carrier.label
                    return (c(x), c(y), c(z))
    return None


def parallelogram_witness(space: PreaffineSpace) -> tuple[str, str, str] | None:
    """Least (x, y, z) where w = z + (x->y) fails (y->w) = (x->z), or None."""
    div, maps = space.division_table, space.action.maps
    n = space.order
    for x in range(n):
        for y in range(n):
            for z in range(n):
                w = maps[div[x][y]].images[z]
                if div[y][w] != div[x][z]:
                    c = space.carrier.label
                    return (c(x), c(y), c(z))
    return None


def negation_witness(space: PreaffineSpace) -> tuple[str, ...] | None:
    """First failure of the negation laws: the translation of -v must invert
    the translation of v, and -(x->y) must be (y->x)."""
    V, maps = space.vectors, space.action.maps
    for v in range(V.order):
        if inverse(maps[v]).images != maps[V.neg(v)].images:
            return (V.label(v),)
    div = space.division_table
    for x in range(space.order):
        for y in range(space.order):
            if V.neg(div[x][y]) != div[y][x]:
                c = space.carrier.label
                return (c(x), c(y))
    return None


def relabeled_left_multiplication(
    domain: FiniteGroup, target: FiniteGroup, assignment: Sequence[int]
) -> Action:
    """The action sending g to left multiplication by assignment[g] on the
    target group's carrier."""
    if len(assignment) != domain.order:
        raise AffineError("domain", None, "assignment must cover the domain")
    maps = tuple(
        Endofunction(target.carrier, tuple(target.table[assignment[g]]))
        for g in range(domain.order)
    )
    return Action(domain.carrier, target.carrier, maps, domain)


def translation_space(
    vectors: VectorGroup,
    target: FiniteGroup | None = None,
    assignment: Sequence[int] | None = None,
) -> PreaffineSpace:
    """The space of vectors acting on a group by assigned left multiplications.

    Defaults give the regular representation of the vector group on itself
    (always affine). An identity-preserving bijective assignment into a
    non-isomorphic target gives strictly preaffine spaces."""
    target = target or vectors.base
    if assignment is None:
        assignment = tuple(range(vectors.order))
    action = relabeled_left_multiplication(vectors.base, target, assignment)
    return verify_preaffine(vectors, action)


def regular_space(vectors: VectorGroup) -> PreaffineSpace:
    return translation_space(vectors)


def identity_preserving_assignments(
    vectors: VectorGroup, target: FiniteGroup
) -> Iterator[tuple[int, ...]]:
    """All bijections from the vector group to the target carrying zero to
    the identity, lexicographic in the assignment tuple."""
    if vectors.order != target.order:
        raise AffineError("domain", None, "orders differ; no bijections exist")
    slots = [i for i in range(vectors.order) if i != vectors.zero]
    others = [i for i in range(target.order) if i != target.identity]
    for perm in itertools.permutations(others):
        assignment = [0] * vectors.order
        assignment[vectors.zero] = target.identity
        for slot, value in zip(slots, perm):
            assignment[slot] = value
        yield tuple(assignment)
