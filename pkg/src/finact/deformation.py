"""Deformation measures on spaces and fields.

Space level (one action): torsion0 compares a two-step move against the sum
vector, torsion1 compares the two orders of a two-step move. Field level:
the same comparisons with every step taken at the moving point's own base,
plus curvature (two-leg transport against the composite vector) and drift
(how a bound value shifts when its base point moves).

Every value is returned as the vector measured at a stated base point (space
level needs no base: translations are global there)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .carriers import Endofunction, compose, inverse
from .fields import ActionField


class DeformationError(ValueError):
    pass


@dataclass(frozen=True)
class BoundVector:
    origin: str
    tip: str


@dataclass(frozen=True)
class DeformationValue:
    vector: str
    base: str | None
    translation: Endofunction
    zero: bool


MEASURES = {
    "torsion0": ("space", ("point", "vector", "vector")),
    "torsion1": ("space", ("point", "vector", "vector")),
    "torsion0_field": ("field", ("point", "vector", "vector")),
    "torsion1_field": ("field", ("point", "vector", "vector")),
    "curvature0": ("field", ("point", "vector", "vector", "vector")),
    "curvature1": ("field", ("point", "vector", "vector", "vector")),
    "drift": ("field", ("point", "point", "vector", "vector")),
}


def _space_value(space, vec: int) -> DeformationValue:
    return DeformationValue(
        vector=space.vectors.label(vec),
        base=None,
        translation=space.action.maps[vec],
        zero=vec == space.vectors.zero,
    )


def _field_value(field: ActionField, vec: int, base: int) -> DeformationValue:
    return DeformationValue(
        vector=field.vectors.label(vec),
        base=field.carrier.label(base),
        translation=field.point_spaces[base].action.maps[vec],
        zero=vec == field.vectors.zero,
    )


def _torsion0_idx(space, x: int, u: int, v: int) -> int:
    maps, div = space.action.maps, space.division_table
    lhs = maps[v].images[maps[u].images[x]]
    rhs = maps[space.vectors.add(u, v)].images[x]
    return div[lhs][rhs]


def torsion0(space, x: str, u: str, v: str) -> DeformationValue:
    """The vector from x + u + v to x + (u+v)bar."""
    xi = space.carrier.index(x)
    ui, vi = space.vectors.index(u), space.vectors.index(v)
    return _space_value(space, _torsion0_idx(space, xi, ui, vi))


def _torsion1_idx(space, x: int, u: int, v: int) -> int:
    maps, div = space.action.maps, space.division_table
    lhs = maps[v].images[maps[u].images[x]]
    rhs = maps[u].images[maps[v].images[x]]
    return div[lhs][rhs]


def torsion1(space, x: str, u: str, v: str) -> DeformationValue:
    """The vector from x + u + v to x + v + u."""
    xi = space.carrier.index(x)
    ui, vi = space.vectors.index(u), space.vectors.index(v)
    return _space_value(space, _torsion1_idx(space, xi, ui, vi))


def _torsion1_field_idx(field: ActionField, x: int, u: int, v: int) -> tuple[int, int]:
    ap = field.apply_idx
    y = ap(x, u, x)
    z = ap(x, v, x)
    t = ap(y, v, y)
    t2 = ap(z, u, z)
    return field.division_idx(t, t, t2), t


def torsion1_field(field: ActionField, x: str, u: str, v: str) -> DeformationValue:
    """Order swap with every step at its own base: compares x+u+v against
    x+v+u, each inner step applied at the point just reached; measured at
    t = x + u + v."""
    c, V = field.carrier, field.vectors
    vec, base = _torsion1_field_idx(field, c.index(x), V.index(u), V.index(v))
    return _field_value(field, vec, base)


def _torsion0_field_idx(field: ActionField, x: int, u: int, v: int) -> tuple[int, int]:
    ap = field.apply_idx
    y = ap(x, u, x)
    lhs = ap(y, v, y)
    rhs = ap(x, field.vectors.add(u, v), x)
    return field.division_idx(lhs, lhs, rhs), lhs


def torsion0_field(field: ActionField, x: str, u: str, v: str) -> DeformationValue:
    """Two steps at moving bases against the sum vector at x; measured at
    the two-step tip."""
    c, V = field.carrier, field.vectors
    vec, base = _torsion0_field_idx(field, c.index(x), V.index(u), V.index(v))
    return _field_value(field, vec, base)


def _curvature0_idx(
    field: ActionField, x: int, w: int, u: int, v: int
) -> tuple[int, int]:
    ap = field.apply_idx
    r = ap(x, w, x)
    s = ap(r, u, r)
    t = ap(s, v, s)
    m = field.pullback_idx(v, s, r)
    rhs = ap(r, field.vectors.add(u, m), r)
    return field.division_idx(t, t, rhs), t


def curvature0(field: ActionField, x: str, w: str, u: str, v: str) -> DeformationValue:
    """Two-leg move u then v from r = x + w, against the composite vector
    u + pullback(v) applied once at r; measured at the two-leg tip t."""
    c, V = field.carrier, field.vectors
    vec, base = _curvature0_idx(field, c.index(x), V.index(w), V.index(u), V.index(v))
    return _field_value(field, vec, base)


def curvature1(
    field: ActionField, x: str, w: str, u: str, v: str, base: str | None = None
) -> DeformationValue:
    """The difference of the two curvature0 translations with u and v
    swapped, composed in the translation set and read as a vector at the
    requested base (default: the tip base of the unswapped term)."""
    c, V = field.carrier, field.vectors
    xi, wi = c.index(x), V.index(w)
    ui, vi = V.index(u), V.index(v)
    vec1, t1 = _curvature0_idx(field, xi, wi, ui, vi)
    vec2, t2 = _curvature0_idx(field, xi, wi, vi, ui)
    T1 = field.point_spaces[t1].action.maps[vec1]
    T2 = field.point_spaces[t2].action.maps[vec2]
    diff = compose(inverse(T2), T1)
    pos = {m.images: i for i, m in enumerate(field.common_image)}
    ti = pos.get(diff.images)
    if ti is None:
        raise DeformationError("curvature difference left the translation set")
    base_idx = c.index(base) if base is not None else t1
    vec = field.image_to_vec[base_idx][ti]
    return DeformationValue(
        vector=V.label(vec),
        base=c.label(base_idx),
        translation=diff,
        zero=vec == V.zero,
    )


def _curvature1_idx(field: ActionField, x: int, w: int, u: int, v: int) -> tuple[int, int]:
    vec1, t1 = _curvature0_idx(field, x, w, u, v)
    vec2, t2 = _curvature0_idx(field, x, w, v, u)
    T1 = field.point_spaces[t1].action.maps[vec1]
    T2 = field.point_spaces[t2].action.maps[vec2]
    diff = compose(inverse(T2), T1)
    pos = {m.images: i for i, m in enumerate(field.common_image)}
    ti = pos.get(diff.images)
    if ti is None:
        raise DeformationError("curvature difference left the translation set")
    return field.image_to_vec[t1][ti], t1


def _drift_idx(field: ActionField, x: int, p: int, d: int, v: int) -> tuple[int, int]:
    ap = field.apply_idx
    p2 = ap(p, d, p)
    a = ap(p, v, x)
    b = ap(p2, v, x)
    return field.division_idx(p, a, b), p


def drift(field: ActionField, x: str, p: str, d: str, v: str) -> DeformationValue:
    """How x + v at base p shifts when the base moves to p + d; measured
    at p."""
    c, V = field.carrier, field.vectors
    vec, base = _drift_idx(field, c.index(x), c.index(p), V.index(d), V.index(v))
    return _field_value(field, vec, base)


def transport(space, bv: BoundVector, along: BoundVector) -> BoundVector:
    """Parallel transport in a space: both points move by the along vector."""
    if bv.origin != along.origin:
        raise DeformationError("transport requires a shared origin")
    u = space.division_table[space.carrier.index(along.origin)][
        space.carrier.index(along.tip)
    ]
    t = space.action.maps[u]
    return BoundVector(along.tip, space.carrier.label(t.images[space.carrier.index(bv.tip)]))


def transport_field(field: ActionField, bv: BoundVector, along: BoundVector) -> BoundVector:
    """Parallel transport in a field: every point moves by the along vector
    applied at its own base, so the origin lands on along.tip exactly."""
    if bv.origin != along.origin:
        raise DeformationError("transport requires a shared origin")
    c = field.carrier
    x, z = c.index(bv.origin), c.index(bv.tip)
    y = c.index(along.tip)
    m = field.division_idx(x, x, y)
    return BoundVector(along.tip, c.label(field.apply_idx(z, m, z)))


def transport_by_vector(field: ActionField, bv: BoundVector, v: str) -> BoundVector:
    """Transport along the vector v: both endpoints move by v at their own
    bases."""
    c, vi = field.carrier, field.vectors.index(v)
    x, z = c.index(bv.origin), c.index(bv.tip)
    return BoundVector(
        c.label(field.apply_idx(x, vi, x)), c.label(field.apply_idx(z, vi, z))
    )


def _space_curvature_idx(space, p: int, x: int, y: int, z: int) -> int:
    maps, div = space.action.maps, space.division_table
    leg1 = maps[div[x][y]].images[p]
    leg2 = maps[div[y][z]].images[leg1]
    direct = maps[div[x][z]].images[p]
    return div[leg2][direct]


def space_curvature(space, p: str, x: str, y: str, z: str) -> DeformationValue:
    """Probe p along the legs x to y to z against the direct x to z."""
    c = space.carrier
    vec = _space_curvature_idx(
        space, c.index(p), c.index(x), c.index(y), c.index(z)
    )
    return _space_value(space, vec)


def flatness_witness(space) -> tuple[str, str, str, str] | None:
    n = space.order
    for p in range(n):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if _space_curvature_idx(space, p, x, y, z) != space.vectors.zero:
                        c = space.carrier.label
                        return (c(p), c(x), c(y), c(z))
    return None


def is_flat(space) -> bool:
    return flatness_witness(space) is None


def torsion_free_witness(space) -> tuple[str, str, str] | None:
    for x in range(space.order):
        for u in range(space.vectors.order):
            for v in range(space.vectors.order):
                if _torsion1_idx(space, x, u, v) != space.vectors.zero:
                    return (
                        space.carrier.label(x),
                        space.vectors.label(u),
                        space.vectors.label(v),
                    )
    return None


def is_torsion_free(space) -> bool:
    return torsion_free_witness(space) is None


_IDX_FUNCS = {
    "torsion0": lambda obj, args: (_torsion0_idx(obj, *args), None),
    "torsion1": lambda obj, args: (_torsion1_idx(obj, *args), None),
    "torsion0_field": lambda obj, args: _torsion0_field_idx(obj, *args),
    "torsion1_field": lambda obj, args: _torsion1_field_idx(obj, *args),
    "curvature0": lambda obj, args: _curvature0_idx(obj, *args),
    "curvature1": lambda obj, args: _curvature1_idx(obj, *args),
    "drift": lambda obj, args: _drift_idx(obj, *args),
}


def measure_level(measure: str) -> str:
    if measure not in MEASURES:
        raise DeformationError(f"unknown measure {measure!r}")
    return MEASURES[measure][0]


def argument_space(obj, measure: str) -> Iterator[tuple[int, ...]]:
    """All argument tuples of a measure, lexicographic."""
    _, spec = MEASURES[measure]
    pools = [
        range(obj.order if kind == "point" else obj.vectors.order) for kind in spec
    ]
    return itertools.product(*pools)


def argument_count(obj, measure: str) -> int:
    _, spec = MEASURES[measure]
    count = 1
    for kind in spec:
        count *= obj.order if kind == "point" else obj.vectors.order
    return count


def _label_args(obj, measure: str, args: tuple[int, ...]) -> tuple[str, ...]:
    _, spec = MEASURES[measure]
    out = []
    for kind, a in zip(spec, args):
        out.append(obj.carrier.label(a) if kind == "point" else obj.vectors.label(a))
    return tuple(out)


def scan(obj, measure: str) -> Iterator[tuple[tuple[str, ...], DeformationValue]]:
    """Evaluate a measure over its whole argument space, lexicographically."""
    is_field = measure_level(measure) == "field"
    fn = _IDX_FUNCS[measure]
    for args in argument_space(obj, measure):
        vec, base = fn(obj, args)
        value = (
            _field_value(obj, vec, base) if is_field else _space_value(obj, vec)
        )
        yield _label_args(obj, measure, args), value


def first_nonzero(obj, measure: str) -> tuple[tuple[str, ...], DeformationValue] | None:
    for args, value in scan(obj, measure):
        if not value.zero:
            return args, value
    return None


def evaluate(obj, measure: str, args: tuple[str, ...]) -> DeformationValue:
    """One measure evaluation with label arguments."""
    level = measure_level(measure)
    spec = MEASURES[measure][1]
    if len(args) != len(spec):
        raise DeformationError(
            f"{measure} takes {len(spec)} arguments, got {len(args)}"
        )
    idx = tuple(
        obj.carrier.index(a) if kind == "point" else obj.vectors.index(a)
        for kind, a in zip(spec, args)
    )
    vec, base = _IDX_FUNCS[measure](obj, idx)
    return _field_value(obj, vec, base) if level == "field" else _space_value(obj, vec)
