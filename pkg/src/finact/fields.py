"""Fields of point actions: one vector-group action attached to each carrier
point, all sharing one translation set.

A field is multiaffine when every point action is affine and premonoidal when
every point action is merely regular premonoidal; the latter is where nonzero
curvature lives. The induced action reads off each point's own action at that
point; it is always regular and unital but need not be closed, which is what
separates preaffine from strictly semipreaffine."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .actions import Action, ClassificationReport, classify
from .affine import (
    AffineError,
    PreaffineSpace,
    relabeled_left_multiplication,
    verify_preaffine,
)
from .carriers import Endofunction, FiniteSet, canonical_labeling
from .groups import FiniteGroup, VectorGroup

FIELD_CELL_CAP = 2_000_000


class FieldError(ValueError):
    def __init__(self, failed: str, point: str | None, witness, message: str):
        super().__init__(message)
        self.failed = failed
        self.point = point
        self.witness = witness


@dataclass(frozen=True)
class ActionField:
    vectors: VectorGroup
    carrier: FiniteSet
    point_spaces: tuple[PreaffineSpace, ...]
    common_image: tuple[Endofunction, ...]
    pointwise_kind: str  # "monoidal" or "premonoidal"
    vec_to_image: tuple[tuple[int, ...], ...]  # [p][v] -> index into common_image
    image_to_vec: tuple[tuple[int, ...], ...]  # [p][t] -> vector index

    @property
    def order(self) -> int:
        return len(self.carrier)

    def point_action(self, p: str) -> Action:
        return self.point_spaces[self.carrier.index(p)].action

    def apply_idx(self, p: int, v: int, x: int) -> int:
        """x + v at base p, all indices."""
        return self.point_spaces[p].action.maps[v].images[x]

    def division_idx(self, p: int, x: int, y: int) -> int:
        return self.point_spaces[p].division_table[x][y]

    def pullback_idx(self, v: int, q: int, p: int) -> int:
        """The vector acting at p by the same translation as v acting at q."""
        return self.image_to_vec[p][self.vec_to_image[q][v]]

    def apply_at(self, p: str, v: str, x: str) -> str:
        c = self.carrier
        return c.label(
            self.apply_idx(c.index(p), self.vectors.index(v), c.index(x))
        )

    def division_at(self, p: str, x: str, y: str) -> str:
        c = self.carrier
        return self.vectors.label(self.division_idx(c.index(p), c.index(x), c.index(y)))

    def pullback(self, v: str, q: str, p: str) -> str:
        c = self.carrier
        return self.vectors.label(
            self.pullback_idx(self.vectors.index(v), c.index(q), c.index(p))
        )

    def translation_at(self, p: str, v: str) -> Endofunction:
        return self.point_spaces[self.carrier.index(p)].action.maps[self.vectors.index(v)]

    @property
    def is_constant(self) -> bool:
        first = self.point_spaces[0].action.maps
        return all(
            sp.action.maps[v].images == first[v].images
            for sp in self.point_spaces
            for v in range(self.vectors.order)
        )


def verify_field(
    vectors: VectorGroup,
    carrier: FiniteSet,
    actions: Sequence[Action],
    kind: str = "auto",
) -> ActionField:
    """Certify a family of point actions as a field.

    Every point action must be a preaffine space on the shared carrier and
    all must have the same translation set. kind "monoidal" additionally
    requires every point action affine; "auto" infers the strongest kind."""
    if kind not in ("auto", "monoidal", "premonoidal"):
        raise FieldError("kind", None, kind, f"unknown field kind {kind!r}")
    if len(actions) != len(carrier):
        raise FieldError(
            "shape", None, None, "one point action per carrier point is required"
        )
    if len(carrier) ** 2 * vectors.order > FIELD_CELL_CAP:
        raise FieldError(
            "size", None, None, f"field exceeds {FIELD_CELL_CAP} division cells"
        )
    spaces = []
    for p, action in enumerate(actions):
        if action.carrier.elements != carrier.elements:
            raise FieldError(
                "shape", carrier.label(p), None, "point action on a foreign carrier"
            )
        try:
            spaces.append(verify_preaffine(vectors, action))
        except AffineError as exc:
            raise FieldError(
                exc.failed,
                carrier.label(p),
                exc.witness,
                f"point {carrier.label(p)!r}: {exc}",
            ) from exc

    image_sets = [frozenset(m.images for m in sp.action.maps) for sp in spaces]
    for p, s in enumerate(image_sets[1:], start=1):
        if s != image_sets[0]:
            raise FieldError(
                "common_image",
                carrier.label(p),
                None,
                f"point {carrier.label(p)!r} has a different translation set",
            )

    kinds = [sp.kind for sp in spaces]
    monoidal = all(k == "affine" for k in kinds)
    if kind == "monoidal" and not monoidal:
        bad = next(carrier.label(p) for p, k in enumerate(kinds) if k != "affine")
        raise FieldError(
            "monoidality", bad, None, f"point {bad!r} is not affine"
        )
    pointwise_kind = "monoidal" if monoidal else "premonoidal"

    common, _ = canonical_labeling(
        [Endofunction(carrier, images) for images in sorted(image_sets[0])]
    )
    pos = {m.images: i for i, m in enumerate(common)}
    vec_to_image = tuple(
        tuple(pos[sp.action.maps[v].images] for v in range(vectors.order))
        for sp in spaces
    )
    image_to_vec = []
    for p in range(len(carrier)):
        row = [-1] * len(common)
        for v, t in enumerate(vec_to_image[p]):
            row[t] = v
        image_to_vec.append(tuple(row))

    return ActionField(
        vectors=vectors,
        carrier=carrier,
        point_spaces=tuple(spaces),
        common_image=common,
        pointwise_kind=pointwise_kind,
        vec_to_image=vec_to_image,
        image_to_vec=tuple(image_to_vec),
    )


@dataclass(frozen=True)
class SemipreaffineSpace:
    """The induced space of a field: always regular and unital, preaffine
    exactly when the induced translations stay closed."""

    vectors: VectorGroup
    action: Action
    division_table: tuple[tuple[int, ...], ...]
    kind: str  # "affine", "preaffine" or "strictly_semipreaffine"
    classification: ClassificationReport

    @property
    def carrier(self) -> FiniteSet:
        return self.action.carrier

    @property
    def order(self) -> int:
        return len(self.action.carrier)

    @property
    def closed(self) -> bool:
        return self.kind != "strictly_semipreaffine"


def induced_action(field: ActionField) -> SemipreaffineSpace:
    """Evaluate each vector through the field at every point: the map of v
    sends x to x + v at base x."""
    n = field.order
    V = field.vectors
    maps = tuple(
        Endofunction(
            field.carrier, tuple(field.apply_idx(x, v, x) for x in range(n))
        )
        for v in range(V.order)
    )
    action = Action(V.base.carrier, field.carrier, maps, V.base)
    report = classify(action, variance="contravariant")
    if not (report.flags["unital_group"] and report.flags["regular"]):
        raise FieldError(
            "induced", None, None, "induced action lost regularity or unitality"
        )
    division = tuple(
        tuple(field.division_idx(x, x, y) for y in range(n)) for x in range(n)
    )
    if report.flags["closed_set"]:
        kind = "affine" if report.flags["closed_group_contravariant"] else "preaffine"
    else:
        kind = "strictly_semipreaffine"
    return SemipreaffineSpace(V, action, division, kind, report)


def constant_field(space: PreaffineSpace) -> ActionField:
    """The same point action everywhere; all deformation measures vanish."""
    return verify_field(
        space.vectors,
        space.carrier,
        [space.action] * space.order,
    )


def automorphism_field(
    vectors: VectorGroup, autos: Sequence[Sequence[int]]
) -> ActionField:
    """On the vector group's own carrier, point p acts through the
    automorphism autos[p]: x + v at base p is x + autos[p](v). Every point
    action is affine, so the field is multiaffine."""
    base = vectors.base
    carrier = base.carrier
    if len(autos) != len(carrier):
        raise FieldError("shape", None, None, "one automorphism per point required")
    actions = []
    for a in autos:
        actions.append(relabeled_left_multiplication(base, base, tuple(a)))
    return verify_field(vectors, carrier, actions, kind="monoidal")


def left_multiplication_field(
    vectors: VectorGroup,
    target: FiniteGroup,
    assignments: Sequence[Sequence[int]],
) -> ActionField:
    """On the target group's carrier, point p acts by left multiplications
    through assignments[p]. With identity-preserving bijective assignments
    every point action is regular premonoidal."""
    if len(assignments) != target.order:
        raise FieldError("shape", None, None, "one assignment per point required")
    actions = [
        relabeled_left_multiplication(vectors.base, target, tuple(a))
        for a in assignments
    ]
    return verify_field(vectors, target.carrier, actions)
