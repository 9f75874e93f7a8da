"""Built-in example structures, addressable as catalog:NAME file arguments.

Every entry renders to the same file text on every call, so catalog names can
stand in for files anywhere the CLI takes one.
"""

from __future__ import annotations

from functools import lru_cache

from ..actions import Action, left_multiplication_action
from ..affine import relabeled_left_multiplication
from ..carriers import Endofunction, finite_set
from ..fields import automorphism_field
from ..groups import builtin_catalog, elementary_abelian, validate_group
from ..malcev import from_group
from .formats import emit_action, emit_field, emit_group, emit_malcev

# relabeling of C8 onto the quaternion units used by the c8_on_q entry
_C8_TO_Q = (0, 1, 2, 3, 4, 7, 6, 5)


def _collapse_action() -> Action:
    g2 = validate_group("G2", ["e", "f"], [[0, 1], [1, 0]])
    x = finite_set("X", ["a", "b", "c", "d"])
    maps = (
        Endofunction(x, (0, 0, 2, 3)),
        Endofunction(x, (0, 0, 3, 2)),
    )
    return Action(g2.carrier, x, maps, g2)


@lru_cache(maxsize=1)
def _entries() -> dict[str, tuple[str, str]]:
    groups = builtin_catalog()
    entries: dict[str, tuple[str, str]] = {}
    for name, group in groups.items():
        entries[name] = ("group", emit_group(group))

    identity8 = tuple(range(8))
    v2_3 = groups["Z2^3"]
    actions = {
        "collapse": _collapse_action(),
        "c8_on_q": relabeled_left_multiplication(groups["C8"], groups["Q"], _C8_TO_Q),
        "z3_regular": left_multiplication_action(groups["Z3"]),
        "q_space": relabeled_left_multiplication(v2_3, groups["Q"], identity8),
        "z8_relabel": relabeled_left_multiplication(v2_3, groups["Z8"], identity8),
    }
    for name, action in actions.items():
        entries[name] = ("action", emit_action(action))

    twist = automorphism_field(
        elementary_abelian(3, 1), [(0, 1, 2), (0, 2, 1), (0, 1, 2)]
    )
    point_actions = [ps.action for ps in twist.point_spaces]
    entries["z3_twist"] = (
        "field",
        emit_field(twist.vectors.base, twist.carrier, point_actions),
    )

    entries["z2_heap"] = ("malcev", emit_malcev(from_group(groups["Z2"])))
    entries["q_heap"] = ("malcev", emit_malcev(from_group(groups["Q"])))
    return entries


def names() -> tuple[str, ...]:
    return tuple(_entries())


def kind(name: str) -> str:
    return _entries()[name][0]


def text(name: str) -> str:
    return _entries()[name][1]
