"""Ternary Malcev structures on finite carriers.

A structure is a full ternary table [x, y, z]. The identities of interest:

    A1: [x, y, y] = x
    A2: [x, x, y] = y
    A3: [p, x, [x, y, z]] = [p, y, z]
    A4: [[p, x, y], y, z] = [p, x, z]
    K3: [x, y, [y, x, z]] = z
    K4: [[y, x, z], z, x] = y
    commutative: [x, y, z] = [z, y, x]
    associative: [[x, y, z], r, t] = [x, y, [z, r, t]]

A1 and A2 together make the structure Malcev. Identity scanning runs on the
kernel backend; witnesses are recovered here with early-exit loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from . import kernel
from .carriers import (
    Endofunction,
    FiniteSet,
    canonical_labeling,
    compose,
    finite_set,
    identity_map,
)
from .groups import FiniteGroup, validate_group

IDENTITY_NAMES = ("a1", "a2", "a3", "a4", "k3", "k4", "commutative", "associative")


class MalcevError(ValueError):
    pass


class NonExpressibleError(MalcevError):
    """A pointed operand could not be rewritten with the base point on the left."""


class BudgetExceeded(RuntimeError):
    def __init__(self, visited: int, budget: int):
        super().__init__(f"enumeration budget exhausted ({visited} >= {budget} nodes)")
        self.visited = visited
        self.budget = budget


@dataclass(frozen=True)
class MalcevStructure:
    carrier: FiniteSet
    table: tuple[int, ...]

    def __post_init__(self):
        n = len(self.carrier)
        if len(self.table) != n**3:
            raise MalcevError("table must have n**3 entries")
        for v in self.table:
            if not 0 <= v < n:
                raise MalcevError(f"table entry {v} out of range")

    @property
    def order(self) -> int:
        return len(self.carrier)

    def entry(self, x: int, y: int, z: int) -> int:
        n = len(self.carrier)
        return self.table[(x * n + y) * n + z]

    def value(self, x: str, y: str, z: str) -> str:
        c = self.carrier
        return c.label(self.entry(c.index(x), c.index(y), c.index(z)))


@dataclass(frozen=True)
class IdentityReport:
    flags: dict[str, bool]
    witnesses: dict[str, tuple[str, ...]]

    @property
    def malcev(self) -> bool:
        return self.flags["a1"] and self.flags["a2"]


def _witness(struct: MalcevStructure, name: str) -> tuple[str, ...] | None:
    """Least counterexample tuple for one identity, scanned lexicographically."""
    n = struct.order
    e = struct.entry
    rng = range(n)
    if name == "a1":
        gen = (((x, y) for x in rng for y in rng if e(x, y, y) != x))
    elif name == "a2":
        gen = (((x, y) for x in rng for y in rng if e(x, x, y) != y))
    elif name == "a3":
        gen = (
            (p, x, y, z)
            for p in rng
            for x in rng
            for y in rng
            for z in rng
            if e(p, x, e(x, y, z)) != e(p, y, z)
        )
    elif name == "a4":
        gen = (
            (p, x, y, z)
            for p in rng
            for x in rng
            for y in rng
            for z in rng
            if e(e(p, x, y), y, z) != e(p, x, z)
        )
    elif name == "k3":
        gen = (
            (x, y, z)
            for x in rng
            for y in rng
            for z in rng
            if e(x, y, e(y, x, z)) != z
        )
    elif name == "k4":
        gen = (
            (x, y, z)
            for x in rng
            for y in rng
            for z in rng
            if e(e(y, x, z), z, x) != y
        )
    elif name == "commutative":
        gen = (
            (x, y, z) for x in rng for y in rng for z in rng if e(x, y, z) != e(z, y, x)
        )
    elif name == "associative":
        gen = (
            (x, y, z, r, t)
            for x in rng
            for y in rng
            for z in rng
            for r in rng
            for t in rng
            if e(e(x, y, z), r, t) != e(x, y, e(z, r, t))
        )
    else:
        raise MalcevError(f"unknown identity {name!r}")
    first = next(gen, None)
    if first is None:
        return None
    return tuple(struct.carrier.label(i) for i in first)


def check_identities(struct: MalcevStructure) -> IdentityReport:
    """All eight flags plus least witnesses for the false ones.

    Cross-checks the implication theorems (on Malcev structures associativity
    is A3 with A4; A2 with A3 forces K3; A1 with A4 forces K4) and refuses to
    return if the backend violates them."""
    mask = kernel.flags_bitmask(struct.table, struct.order)
    flags = {name: bool(mask & kernel.FLAG_BITS[name]) for name in IDENTITY_NAMES}
    if flags["a1"] and flags["a2"]:
        if flags["associative"] != (flags["a3"] and flags["a4"]):
            raise MalcevError("backend violated the associativity theorem")
    if flags["a2"] and flags["a3"] and not flags["k3"]:
        raise MalcevError("backend violated the K3 implication")
    if flags["a1"] and flags["a4"] and not flags["k4"]:
        raise MalcevError("backend violated the K4 implication")
    witnesses = {}
    for name, ok in flags.items():
        if not ok:
            w = _witness(struct, name)
            if w is None:
                raise MalcevError(f"backend flagged {name} false without witness")
            witnesses[name] = w
    return IdentityReport(flags=flags, witnesses=witnesses)


def from_group(group: FiniteGroup) -> MalcevStructure:
    """The heap of a group: [x, y, z] = x * inverse(y) * z."""
    n = group.order
    table = []
    for x in range(n):
        for y in range(n):
            iy = group.inv(y)
            for z in range(n):
                table.append(group.mul(group.mul(x, iy), z))
    return MalcevStructure(group.carrier, tuple(table))


def from_space(space) -> MalcevStructure:
    """The combination [x, y, z] = x + (y -> z)bar of a regular unital space.

    Works for preaffine and semipreaffine spaces alike: only the action and
    its division table are consumed."""
    action = space.action
    division = space.division_table
    n = len(action.carrier)
    table = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                table.append(action.maps[division[y][z]].images[x])
    return MalcevStructure(action.carrier, tuple(table))


@dataclass(frozen=True)
class MalcevTranslation:
    """The map [-, a, b] with its least representative pair attached."""

    rep: tuple[str, str]
    func: Endofunction


def translation(struct: MalcevStructure, a: str, b: str) -> MalcevTranslation:
    c = struct.carrier
    ia, ib = c.index(a), c.index(b)
    func = Endofunction(c, tuple(struct.entry(x, ia, ib) for x in range(struct.order)))
    return MalcevTranslation((a, b), func)


@lru_cache(maxsize=128)
def _translation_index(struct: MalcevStructure) -> dict[tuple[int, ...], tuple[str, str]]:
    """Image table -> least representative pair, in (a, b) index order."""
    out: dict[tuple[int, ...], tuple[str, str]] = {}
    c = struct.carrier
    for a in c.elements:
        for b in c.elements:
            t = translation(struct, a, b)
            out.setdefault(t.func.images, t.rep)
    return out


def translations(struct: MalcevStructure) -> tuple[MalcevTranslation, ...]:
    """All distinct translations, in order of least representative."""
    idx = _translation_index(struct)
    c = struct.carrier
    seen: set[tuple[int, ...]] = set()
    out = []
    for a in c.elements:
        for b in c.elements:
            t = translation(struct, a, b)
            if t.func.images not in seen:
                seen.add(t.func.images)
                out.append(MalcevTranslation(idx[t.func.images], t.func))
    return tuple(out)


def as_translation(struct: MalcevStructure, func: Endofunction) -> MalcevTranslation | None:
    rep = _translation_index(struct).get(func.images)
    return MalcevTranslation(rep, func) if rep is not None else None


def sum_translations(
    struct: MalcevStructure, t: MalcevTranslation, s: MalcevTranslation
) -> Endofunction:
    """t then s, composed extensionally. The result is a translation again
    exactly when the structure is closed enough; as_translation names it."""
    return compose(s.func, t.func)


@dataclass(frozen=True)
class ClosureReport:
    elements: tuple[Endofunction, ...]
    size: int
    contains_identity: bool
    is_group: bool
    fixed_point_law: bool
    group: FiniteGroup | None


def iteration_closure(struct: MalcevStructure, max_size: int = 4096) -> ClosureReport:
    """Close the translations under composition and analyze the result.

    The group table, when the closure is a group, uses the sum orientation:
    row t, column s holds s o t (t first)."""
    elements: list[Endofunction] = [t.func for t in translations(struct)]
    seen = {f.images for f in elements}
    grew = True
    while grew:
        grew = False
        snapshot = list(elements)
        for t in snapshot:
            for s in snapshot:
                c = compose(s, t)
                if c.images not in seen:
                    seen.add(c.images)
                    elements.append(c)
                    grew = True
                    if len(elements) > max_size:
                        raise MalcevError(f"iteration closure exceeds {max_size} maps")
    ordered, labels = canonical_labeling(elements)
    index = {f.images: i for i, f in enumerate(ordered)}
    n = len(ordered)
    ident = identity_map(struct.carrier)
    contains_identity = ident.images in index
    is_group = contains_identity and all(
        any(
            compose(f, g).images == ident.images and compose(g, f).images == ident.images
            for g in ordered
        )
        for f in ordered
    )
    group = None
    if is_group:
        rows = [
            [index[compose(ordered[j], ordered[i]).images] for j in range(n)]
            for i in range(n)
        ]
        group = validate_group(f"closure({struct.carrier.name})", list(labels), rows)
    fixed_point_law = all(f.is_identity or not f.fixed_points() for f in ordered)
    return ClosureReport(
        elements=ordered,
        size=n,
        contains_identity=contains_identity,
        is_group=is_group,
        fixed_point_law=fixed_point_law,
        group=group,
    )


def _rewrite_at(struct: MalcevStructure, e: str, t: MalcevTranslation) -> int:
    """Index b with [-, e, b] extensionally equal to t, or raise."""
    c = struct.carrier
    ie = c.index(e)
    b = t.func.images[ie]
    candidate = translation(struct, e, c.label(b))
    if candidate.func.images != t.func.images:
        raise NonExpressibleError(
            f"translation {t.rep} cannot be rewritten with base {e!r}"
        )
    return b


@lru_cache(maxsize=128)
def _flags_of(struct: MalcevStructure) -> dict[str, bool]:
    return check_identities(struct).flags


def pointed_sum(
    struct: MalcevStructure, e: str, t1: MalcevTranslation, t2: MalcevTranslation
) -> MalcevTranslation:
    """[-, e, b] + [-, e, d] = [-, e, [b, e, d]] after rewriting both operands
    at e. Verifies the pointed neutral law, the pointed inverse laws when K3
    and K4 hold, and agreement with plain composition when associative."""
    c = struct.carrier
    ie = c.index(e)
    b = _rewrite_at(struct, e, t1)
    d = _rewrite_at(struct, e, t2)
    result = translation(struct, e, c.label(struct.entry(b, ie, d)))

    neutral = translation(struct, e, e)
    with_neutral = struct.entry(b, ie, ie)
    if translation(struct, e, c.label(with_neutral)).func.images != t1.func.images:
        raise MalcevError("pointed neutral law fails; structure is not A1")
    flags = _flags_of(struct)
    if flags["k3"] and flags["k4"]:
        binv = struct.entry(ie, b, ie)
        forward = translation(struct, e, c.label(struct.entry(b, ie, binv)))
        backward = translation(struct, e, c.label(struct.entry(binv, ie, b)))
        if (
            forward.func.images != neutral.func.images
            or backward.func.images != neutral.func.images
        ):
            raise MalcevError("pointed inverse law fails despite K3 and K4")
    if flags["associative"]:
        if result.func.images != compose(t2.func, t1.func).images:
            raise MalcevError("pointed sum disagrees with composition")
    return result


def pointed_inverse(struct: MalcevStructure, e: str, t: MalcevTranslation) -> MalcevTranslation:
    """[-, e, [e, b, e]], the inverse of [-, e, b] under the pointed sum."""
    c = struct.carrier
    ie = c.index(e)
    b = _rewrite_at(struct, e, t)
    inv = translation(struct, e, c.label(struct.entry(ie, b, ie)))
    neutral = translation(struct, e, e)
    s1 = pointed_sum(struct, e, t, inv)
    s2 = pointed_sum(struct, e, inv, t)
    if s1.func.images != neutral.func.images or s2.func.images != neutral.func.images:
        raise MalcevError(f"no pointed inverse for {t.rep} at {e!r}")
    return inv


def pointed_combination(struct: MalcevStructure, e: str, x: str, y: str) -> str:
    """The recovered product x * y with identity e: [x, e, y]."""
    return struct.value(x, e, y)


def recovered_group(struct: MalcevStructure, e: str) -> FiniteGroup:
    """The group with product [x, e, y] and identity e. Group validation
    errors propagate as the diagnosis when the structure is not associative
    Malcev."""
    c = struct.carrier
    ie = c.index(e)
    rows = [
        [struct.entry(x, ie, y) for y in range(struct.order)]
        for x in range(struct.order)
    ]
    return validate_group(f"{c.name}_at_{e}", list(c.elements), rows)


def phi_is_isomorphism(struct: MalcevStructure, e: str) -> bool:
    """Does p -> [-, e, p] map the recovered group at e isomorphically onto
    the translations under the pointed sum at e?"""
    c = struct.carrier
    funcs = {t.func.images for t in translations(struct)}
    phi = {p: translation(struct, e, p) for p in c.elements}
    phi_images = {t.func.images for t in phi.values()}
    if phi_images != funcs or len(phi_images) != len(c.elements):
        return False
    for x in c.elements:
        for y in c.elements:
            lhs = phi[pointed_combination(struct, e, x, y)]
            rhs = pointed_sum(struct, e, phi[x], phi[y])
            if lhs.func.images != rhs.func.images:
                return False
    return True


def psi_is_isomorphism(struct: MalcevStructure, e: str, e2: str) -> bool:
    """Does x -> [x, e, e2] carry the recovered group at e isomorphically
    to the recovered group at e2?"""
    c = struct.carrier
    psi = {x: struct.value(x, e, e2) for x in c.elements}
    if len(set(psi.values())) != len(c.elements):
        return False
    for x in c.elements:
        for y in c.elements:
            if psi[pointed_combination(struct, e, x, y)] != pointed_combination(
                struct, e2, psi[x], psi[y]
            ):
                return False
    return True


def _prefill(n: int) -> tuple[list[int], list[int]]:
    """A1/A2 prefilled flat table (free cells hold -1) and the free cell list
    in lexicographic order."""
    table = []
    free = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if y == z:
                    table.append(x)
                elif x == y:
                    table.append(z)
                else:
                    free.append((x * n + y) * n + z)
                    table.append(-1)
    return table, free


def table_from_candidate(n: int, c: int) -> tuple[int, ...]:
    """The A1/A2 table for candidate number c: base-n digits of c fill the
    free cells in order, most significant digit first."""
    table, free = _prefill(n)
    for k in range(len(free) - 1, -1, -1):
        table[free[k]] = c % n
        c //= n
    if c:
        raise MalcevError("candidate number out of range")
    return tuple(table)


def _required_mask(constraints: Iterable[str]) -> int:
    names = {c.lower() for c in constraints}
    unknown = names - set(IDENTITY_NAMES)
    if unknown:
        raise MalcevError(f"unknown identity constraints {sorted(unknown)}")
    if "a1" not in names or "a2" not in names:
        raise MalcevError("enumeration requires at least the A1 and A2 constraints")
    mask = 0
    for name in names:
        mask |= kernel.FLAG_BITS[name]
    return mask


def default_carrier(n: int) -> FiniteSet:
    return finite_set(f"M{n}", [str(i) for i in range(n)])


def count_malcev(n: int, constraints: Iterable[str] = ("a1", "a2")) -> int:
    req = _required_mask(constraints)
    if n == 1:
        return 1
    if n == 2:
        return sum(
            1
            for c in range(4)
            if kernel.flags_bitmask(table_from_candidate(2, c), 2) & req == req
        )
    if n == 3:
        masks = _scan3()
        return int(np.count_nonzero((masks & req) == req))
    raise MalcevError("counting is closed-form only up to order 3; enumerate instead")


_SCAN3 = None


def _scan3():
    global _SCAN3
    if _SCAN3 is None:
        _SCAN3 = kernel.scan_a1a2_n3()
    return _SCAN3


def enumerate_malcev(
    n: int,
    constraints: Iterable[str] = ("a1", "a2"),
    budget: int | None = None,
) -> Iterator[MalcevStructure]:
    """All ternary tables of order n satisfying the constraints, in
    lexicographic free-cell order. Constraints must include A1 and A2 (the
    prefill that makes the scan feasible). Orders up to 3 are scanned
    exhaustively; order 4 runs a budgeted backtracking search and raises
    BudgetExceeded when the node budget runs out; larger orders are refused.
    """
    req = _required_mask(constraints)
    carrier = default_carrier(n)
    if n == 1:
        yield MalcevStructure(carrier, (0,))
        return
    if n == 2:
        for c in range(4):
            table = table_from_candidate(2, c)
            if kernel.flags_bitmask(table, 2) & req == req:
                yield MalcevStructure(carrier, table)
        return
    if n == 3:
        masks = _scan3()
        for c in np.nonzero((masks & req) == req)[0]:
            yield MalcevStructure(carrier, table_from_candidate(3, int(c)))
        return
    if n == 4:
        yield from _enumerate4(carrier, req, budget or 1_000_000)
        return
    raise MalcevError("enumeration supports orders 1 through 4")


def _enumerate4(
    carrier: FiniteSet, req: int, budget: int
) -> Iterator[MalcevStructure]:
    n = 4
    table, free = _prefill(n)
    checks = [
        name
        for name in ("a3", "a4", "k3", "k4", "commutative", "associative")
        if req & kernel.FLAG_BITS[name]
    ]

    def get(x: int, y: int, z: int) -> int:
        return table[(x * n + y) * n + z]

    def consistent() -> bool:
        # partial evaluation: unknown subterms (-1) never refute
        rng = range(n)
        for name in checks:
            if name in ("a3", "a4"):
                for p in rng:
                    for x in rng:
                        for y in rng:
                            for z in rng:
                                if name == "a3":
                                    w = get(x, y, z)
                                    if w < 0:
                                        continue
                                    a, b = get(p, x, w), get(p, y, z)
                                else:
                                    w = get(p, x, y)
                                    if w < 0:
                                        continue
                                    a, b = get(w, y, z), get(p, x, z)
                                if a >= 0 and b >= 0 and a != b:
                                    return False
            elif name in ("k3", "k4"):
                for x in rng:
                    for y in rng:
                        for z in rng:
                            w = get(y, x, z)
                            if w < 0:
                                continue
                            if name == "k3":
                                a = get(x, y, w)
                                if a >= 0 and a != z:
                                    return False
                            else:
                                a = get(w, z, x)
                                if a >= 0 and a != y:
                                    return False
            elif name == "commutative":
                for x in rng:
                    for y in rng:
                        for z in rng:
                            a, b = get(x, y, z), get(z, y, x)
                            if a >= 0 and b >= 0 and a != b:
                                return False
            else:
                for x in rng:
                    for y in rng:
                        for z in rng:
                            w = get(x, y, z)
                            if w < 0:
                                continue
                            for r in rng:
                                for t in rng:
                                    w2 = get(z, r, t)
                                    if w2 < 0:
                                        continue
                                    a, b = get(w, r, t), get(x, y, w2)
                                    if a >= 0 and b >= 0 and a != b:
                                        return False
        return True

    visited = 0

    def extend(k: int) -> Iterator[MalcevStructure]:
        nonlocal visited
        if k == len(free):
            flat = tuple(table)
            if kernel.flags_bitmask(flat, n) & req == req:
                yield MalcevStructure(carrier, flat)
            return
        for v in range(n):
            visited += 1
            if visited >= budget:
                raise BudgetExceeded(visited, budget)
            table[free[k]] = v
            if consistent():
                yield from extend(k + 1)
        table[free[k]] = -1

    yield from extend(0)
