"""Actions of finite sets and groups on finite carriers.

An action assigns an endofunction of the carrier to every domain element. The
domain may be a bare set or carry a validated group structure; classification
reports set-level flags always and group-level flags when a group is present.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .carriers import (
    Endofunction,
    FiniteSet,
    canonical_labeling,
    compose,
    is_bijection,
    two_sided_inverse,
    unique_solvability,
)
from .groups import FiniteGroup, opposite_group, validate_group


class ActionError(ValueError):
    pass


SET_FLAGS = (
    "unital_set",
    "invertible_set",
    "closed_set",
    "reversible",
    "transitive",
    "free",
    "regular",
    "injective_as_function",
)

GROUP_FLAGS = (
    "unital_group",
    "invertible_group",
    "closed_group_covariant",
    "closed_group_contravariant",
    "monoidal",
    "premonoidal",
)


@dataclass(frozen=True)
class Action:
    domain: FiniteSet
    carrier: FiniteSet
    maps: tuple[Endofunction, ...]
    group: FiniteGroup | None = None

    def __post_init__(self):
        if len(self.maps) != len(self.domain):
            raise ActionError("one endofunction per domain element is required")
        for m in self.maps:
            if m.carrier.elements != self.carrier.elements:
                raise ActionError("all maps must live on the action carrier")
        if self.group is not None and self.group.carrier.elements != self.domain.elements:
            raise ActionError("group carrier must match the action domain")

    @property
    def name(self) -> str:
        return f"{self.domain.name} on {self.carrier.name}"

    def map_of(self, g: str) -> Endofunction:
        return self.maps[self.domain.index(g)]

    def apply(self, g: str, x: str) -> str:
        return self.map_of(g)(x)


def make_action(domain, carrier: FiniteSet, maps: Sequence[Endofunction]) -> Action:
    """Build an action from a FiniteSet or FiniteGroup domain."""
    if isinstance(domain, FiniteGroup):
        return Action(domain.carrier, carrier, tuple(maps), domain)
    return Action(domain, carrier, tuple(maps), None)


def image(action: Action) -> tuple[Endofunction, ...]:
    """Distinct maps in the image, ordered by image table."""
    return tuple(
        Endofunction(action.carrier, images)
        for images in sorted({m.images for m in action.maps})
    )


def _image_tables(action: Action) -> frozenset[tuple[int, ...]]:
    return frozenset(m.images for m in action.maps)


@dataclass(frozen=True)
class ClassificationReport:
    domain_is_group: bool
    variance: str
    flags: dict[str, bool]
    witnesses: dict[str, tuple]
    image_size: int
    image_is_group: bool
    image_identity_is_identity_map: bool | None

    def flag(self, name: str) -> bool:
        if name not in self.flags:
            raise ActionError(f"flag {name!r} requires a group-structured domain")
        return self.flags[name]


def classify(action: Action, variance: str = "covariant") -> ClassificationReport:
    """Compute every classification flag with least witnesses for the false ones.

    Witness scan orders: invertible_set and reversible scan domain elements;
    closed_set scans (g, h) with h applied first in the composite; transitive
    scans carrier pairs (x, y); free and injective_as_function scan (g, h) with
    g before h; group flags scan (g, h) in the Cayley orientation.
    """
    if variance not in ("covariant", "contravariant"):
        raise ActionError(f"unknown variance {variance!r}")
    dom, car, maps = action.domain, action.carrier, action.maps
    nd, nc = len(dom), len(car)
    tables = _image_tables(action)
    flags: dict[str, bool] = {}
    wit: dict[str, tuple] = {}

    flags["unital_set"] = tuple(range(nc)) in tables

    bad = next(
        (
            g
            for g in range(nd)
            if not any(
                compose(maps[g], maps[h]).is_identity
                and compose(maps[h], maps[g]).is_identity
                for h in range(nd)
            )
        ),
        None,
    )
    flags["invertible_set"] = bad is None
    if bad is not None:
        wit["invertible_set"] = (dom.label(bad),)

    pair = next(
        (
            (g, h)
            for g in range(nd)
            for h in range(nd)
            if compose(maps[g], maps[h]).images not in tables
        ),
        None,
    )
    flags["closed_set"] = pair is None
    if pair is not None:
        wit["closed_set"] = (dom.label(pair[0]), dom.label(pair[1]))

    bad = None
    for g in range(nd):
        routes = (
            two_sided_inverse(maps[g]) is not None,
            unique_solvability(maps[g]),
            is_bijection(maps[g]),
        )
        if len(set(routes)) != 1:  # the three criteria are a theorem, not a hope
            raise ActionError(f"reversibility routes disagree at {dom.label(g)!r}")
        if not routes[0]:
            bad = g
            break
    flags["reversible"] = bad is None
    if bad is not None:
        wit["reversible"] = (dom.label(bad),)

    reach = next(
        (
            (x, y)
            for x in range(nc)
            for y in range(nc)
            if all(maps[g].images[x] != y for g in range(nd))
        ),
        None,
    )
    flags["transitive"] = reach is None
    if reach is not None:
        wit["transitive"] = (car.label(reach[0]), car.label(reach[1]))

    coincide = next(
        (
            (g, h, x)
            for g in range(nd)
            for h in range(g + 1, nd)
            for x in range(nc)
            if maps[g].images[x] == maps[h].images[x]
        ),
        None,
    )
    flags["free"] = coincide is None
    if coincide is not None:
        wit["free"] = (dom.label(coincide[0]), dom.label(coincide[1]), car.label(coincide[2]))

    flags["regular"] = flags["transitive"] and flags["free"]
    if not flags["regular"]:
        wit["regular"] = wit.get("transitive") or wit.get("free") or ()

    dup = next(
        (
            (g, h)
            for g in range(nd)
            for h in range(g + 1, nd)
            if maps[g].images == maps[h].images
        ),
        None,
    )
    flags["injective_as_function"] = dup is None
    if dup is not None:
        wit["injective_as_function"] = (dom.label(dup[0]), dom.label(dup[1]))

    grp = action.group
    if grp is not None:
        e = grp.identity
        flags["unital_group"] = maps[e].is_identity
        if not flags["unital_group"]:
            wit["unital_group"] = (dom.label(e),)

        bad = next(
            (
                g
                for g in range(nd)
                if not (
                    compose(maps[g], maps[grp.inv(g)]).is_identity
                    and compose(maps[grp.inv(g)], maps[g]).is_identity
                )
            ),
            None,
        )
        flags["invertible_group"] = bad is None
        if bad is not None:
            wit["invertible_group"] = (dom.label(bad),)

        for flag_name, first_then in (
            ("closed_group_covariant", False),
            ("closed_group_contravariant", True),
        ):
            pair = None
            for g in range(nd):
                for h in range(nd):
                    lhs = maps[grp.mul(g, h)]
                    rhs = (
                        compose(maps[h], maps[g])
                        if first_then
                        else compose(maps[g], maps[h])
                    )
                    if lhs.images != rhs.images:
                        pair = (g, h)
                        break
                if pair:
                    break
            flags[flag_name] = pair is None
            if pair is not None:
                wit[flag_name] = (dom.label(pair[0]), dom.label(pair[1]))

        closed_variant = flags[f"closed_group_{variance}"]
        flags["monoidal"] = flags["unital_group"] and closed_variant
        flags["premonoidal"] = flags["unital_group"] and flags["closed_set"]

    img = image_analysis(action)
    return ClassificationReport(
        domain_is_group=grp is not None,
        variance=variance,
        flags=flags,
        witnesses=wit,
        image_size=img.size,
        image_is_group=img.is_group,
        image_identity_is_identity_map=img.identity_is_identity_map,
    )


@dataclass(frozen=True)
class ImageGroupReport:
    elements: tuple[Endofunction, ...]
    size: int
    closed: bool
    identity: Endofunction | None
    identity_is_identity_map: bool | None
    is_group: bool
    group: FiniteGroup | None


def image_analysis(action: Action) -> ImageGroupReport:
    """The image as a composition structure: closure, internal identity, group.

    The internal identity may differ from the identity map of the carrier."""
    elems, labels = canonical_labeling(image(action))
    table_set = {m.images: i for i, m in enumerate(elems)}
    n = len(elems)

    closed = True
    table: list[list[int]] = []
    for i in range(n):
        row = []
        for j in range(n):
            # covariant orientation: row i applied after column j
            c = compose(elems[i], elems[j]).images
            if c in table_set:
                row.append(table_set[c])
            else:
                closed = False
                row.append(-1)
        table.append(row)

    ident = next(
        (
            i
            for i in range(n)
            if all(table[i][j] == j and table[j][i] == j for j in range(n))
        ),
        None,
    )
    is_group = (
        closed
        and ident is not None
        and all(
            any(table[i][j] == ident and table[j][i] == ident for j in range(n))
            for i in range(n)
        )
    )
    group = None
    if is_group:
        group = validate_group(f"image({action.name})", labels, table)
    return ImageGroupReport(
        elements=elems,
        size=n,
        closed=closed,
        identity=elems[ident] if ident is not None else None,
        identity_is_identity_map=elems[ident].is_identity if ident is not None else None,
        is_group=is_group,
        group=group,
    )


def orbit(action: Action, x: str) -> tuple[str, ...]:
    xi = action.carrier.index(x)
    hit = sorted({m.images[xi] for m in action.maps})
    return tuple(action.carrier.label(i) for i in hit)


def conduit(action: Action, x: str, y: str) -> tuple[str, ...]:
    """All domain elements carrying x to y. conduit(x, x) is the stabilizer."""
    xi, yi = action.carrier.index(x), action.carrier.index(y)
    return tuple(
        action.domain.label(g)
        for g in range(len(action.domain))
        if action.maps[g].images[xi] == yi
    )


def stabilizer(action: Action, x: str) -> tuple[str, ...]:
    return conduit(action, x, x)


def dual(action: Action, x: str) -> tuple[str, ...]:
    """The map g -> g(x), tabulated in domain order."""
    xi = action.carrier.index(x)
    return tuple(action.carrier.label(m.images[xi]) for m in action.maps)


def division(action: Action, x: str, y: str) -> str:
    """The unique g with g(x) = y. Defined exactly when the conduit is a
    singleton, which regularity guarantees for every pair."""
    sols = conduit(action, x, y)
    if len(sols) != 1:
        raise ActionError(
            f"division undefined: {len(sols)} solutions carry {x!r} to {y!r}"
        )
    return sols[0]


@dataclass(frozen=True)
class BinaryActionTable:
    """The two-argument form: values[g][x] is the carrier index of g applied to x."""

    domain: FiniteSet
    carrier: FiniteSet
    values: tuple[tuple[int, ...], ...]
    group: FiniteGroup | None = None

    def value(self, g: str, x: str) -> str:
        return self.carrier.label(self.values[self.domain.index(g)][self.carrier.index(x)])


def to_binary(action: Action) -> BinaryActionTable:
    return BinaryActionTable(
        action.domain,
        action.carrier,
        tuple(m.images for m in action.maps),
        action.group,
    )


def from_binary(table: BinaryActionTable) -> Action:
    maps = tuple(Endofunction(table.carrier, row) for row in table.values)
    return Action(table.domain, table.carrier, maps, table.group)


def opposite_action(action: Action) -> Action:
    """Same maps over the opposite group; the closed-group variances swap."""
    if action.group is None:
        raise ActionError("opposite action requires a group-structured domain")
    op = opposite_group(action.group)
    return Action(op.carrier, action.carrier, action.maps, op)


def all_set_actions(domain: FiniteSet, carrier: FiniteSet) -> Iterator[Action]:
    """Every assignment of an endofunction to each domain element,
    lexicographic in the concatenated image tables."""
    n = len(carrier)
    tables = list(itertools.product(range(n), repeat=n))
    for choice in itertools.product(tables, repeat=len(domain)):
        maps = tuple(Endofunction(carrier, images) for images in choice)
        yield Action(domain, carrier, maps, None)


def left_multiplication_action(group: FiniteGroup) -> Action:
    """The regular representation: each g acts on the group by left product."""
    maps = tuple(
        Endofunction(group.carrier, group.table[g]) for g in range(group.order)
    )
    return Action(group.carrier, group.carrier, maps, group)
