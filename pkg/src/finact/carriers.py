"""Finite carrier sets and tabulated endofunctions.

Everything downstream (groups, actions, spaces) stores elements as indices into
a FiniteSet and exposes labels only at the API surface. Endofunctions are the
basic moving parts: an action is a family of them, a translation is one of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

DEFAULT_CARRIER_CAP = 64

_carrier_cap = DEFAULT_CARRIER_CAP


class CarrierError(ValueError):
    pass


def carrier_cap() -> int:
    return _carrier_cap


def set_carrier_cap(n: int) -> int:
    """Adjust the global size cap. Exhaustive scans are cubic and worse, so the
    default of 64 is a guard rail, not a hard mathematical limit."""
    global _carrier_cap
    if n < 1:
        raise CarrierError("carrier cap must be positive")
    old, _carrier_cap = _carrier_cap, n
    return old


@dataclass(frozen=True)
class FiniteSet:
    """An ordered finite set of distinct opaque labels."""

    name: str
    elements: tuple[str, ...]

    def __post_init__(self):
        if not self.elements:
            raise CarrierError("carrier must be nonempty")
        if len(self.elements) > _carrier_cap:
            raise CarrierError(
                f"carrier size {len(self.elements)} exceeds cap {_carrier_cap}"
            )
        if len(set(self.elements)) != len(self.elements):
            raise CarrierError(f"duplicate label in carrier {self.name!r}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.elements)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise CarrierError(
                f"{label!r} is not an element of {self.name!r}"
            ) from None

    def label(self, i: int) -> str:
        return self.elements[i]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)


def finite_set(name: str, elements) -> FiniteSet:
    return FiniteSet(name, tuple(str(e) for e in elements))


@dataclass(frozen=True)
class Endofunction:
    """A total map X -> X, tabulated as the image index of each element."""

    carrier: FiniteSet
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.carrier)
        if len(self.images) != n:
            raise CarrierError("image table length must equal carrier size")
        for i in self.images:
            if not 0 <= i < n:
                raise CarrierError(f"image index {i} out of range for size {n}")

    def __call__(self, label: str) -> str:
        return self.carrier.label(self.images[self.carrier.index(label)])

    def apply_index(self, i: int) -> int:
        return self.images[i]

    @property
    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def fixed_points(self) -> tuple[str, ...]:
        return tuple(
            self.carrier.label(i) for i, img in enumerate(self.images) if img == i
        )

    def describe(self) -> str:
        pairs = ", ".join(
            f"{x} -> {self.carrier.label(img)}"
            for x, img in zip(self.carrier.elements, self.images)
        )
        return f"[{pairs}]"


def identity_map(carrier: FiniteSet) -> Endofunction:
    return Endofunction(carrier, tuple(range(len(carrier))))


def constant_map(carrier: FiniteSet, label: str) -> Endofunction:
    i = carrier.index(label)
    return Endofunction(carrier, (i,) * len(carrier))


def _same_carrier(f: Endofunction, g: Endofunction) -> None:
    if f.carrier.elements != g.carrier.elements:
        raise CarrierError("endofunctions live on different carriers")


def compose(f: Endofunction, g: Endofunction) -> Endofunction:
    """f after g: compose(f, g)(x) = f(g(x)), so g acts first."""
    _same_carrier(f, g)
    return Endofunction(f.carrier, tuple(f.images[i] for i in g.images))


def seq(f: Endofunction, g: Endofunction) -> Endofunction:
    """f then g. The right-to-left reading used by the affine layer:
    seq(f, g) = compose(g, f)."""
    return compose(g, f)


def is_bijection(f: Endofunction) -> bool:
    """Permutation test: the image hits every element exactly once."""
    return len(set(f.images)) == len(f.images)


def unique_solvability(f: Endofunction) -> bool:
    """For every y the equation f(x) = y has exactly one solution."""
    counts = [0] * len(f.images)
    for i in f.images:
        counts[i] += 1
    return all(c == 1 for c in counts)


def two_sided_inverse(f: Endofunction) -> Endofunction | None:
    """The unique g with compose(f, g) = compose(g, f) = identity, if any.

    Built from the fibers of f and then verified, so this is an independent
    route to invertibility (no permutation test involved)."""
    n = len(f.images)
    fibers: list[list[int]] = [[] for _ in range(n)]
    for x, y in enumerate(f.images):
        fibers[y].append(x)
    if any(len(fiber) != 1 for fiber in fibers):
        return None
    g = Endofunction(f.carrier, tuple(fiber[0] for fiber in fibers))
    if compose(f, g).is_identity and compose(g, f).is_identity:
        return g
    return None


def inverse(f: Endofunction) -> Endofunction:
    g = two_sided_inverse(f)
    if g is None:
        raise CarrierError(f"endofunction {f.describe()} is not invertible")
    return g


def semigroup_inverse_laws(f: Endofunction, phi: Endofunction) -> bool:
    """phi o f o phi = phi and f o phi o f = f."""
    return (
        compose(compose(phi, f), phi) == phi
        and compose(compose(f, phi), f) == f
    )


def canonical_labeling(
    funcs: Sequence[Endofunction],
) -> tuple[tuple[Endofunction, ...], tuple[str, ...]]:
    """Order and name a family of endofunctions deterministically.

    When f -> f(x0) is injective (x0 the first carrier element) the functions
    are ordered by the carrier index of f(x0) and labeled with that element's
    label; otherwise they are ordered by image table and labeled m0, m1, ...
    The first convention makes the translation family of a regular action
    reproduce its group table verbatim."""
    elems = list(funcs)
    if not elems:
        return (), ()
    carrier = elems[0].carrier
    hits = [f.images[0] for f in elems]
    if len(set(hits)) == len(hits):
        elems.sort(key=lambda f: f.images[0])
        labels = tuple(carrier.label(f.images[0]) for f in elems)
    else:
        elems.sort(key=lambda f: f.images)
        labels = tuple(f"m{i}" for i in range(len(elems)))
    return tuple(elems), labels


def all_endofunctions(carrier: FiniteSet) -> Iterator[Endofunction]:
    """All n^n endofunctions, lexicographic in the image table."""
    n = len(carrier)
    for images in itertools.product(range(n), repeat=n):
        yield Endofunction(carrier, images)


def all_permutations(carrier: FiniteSet) -> Iterator[Endofunction]:
    """All n! bijective endofunctions, lexicographic in the image table."""
    for images in itertools.permutations(range(len(carrier))):
        yield Endofunction(carrier, images)
