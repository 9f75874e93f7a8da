"""Systematic search for structures with requested properties.

Each family enumerates a deterministic candidate stream, applies an optional
filter, and returns the matches as ready-to-write file texts. `budget` bounds
the number of candidates examined (for the malcev family at order 4 it bounds
search nodes instead); `limit` bounds the number of matches kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..affine import identity_preserving_assignments, translation_space
from ..deformation import first_nonzero, is_torsion_free
from ..fields import automorphism_field, left_multiplication_field
from ..groups import FiniteGroup, as_vector_group, catalog_group, group_automorphisms
from ..malcev import BudgetExceeded, enumerate_malcev
from .formats import emit_action, emit_field, emit_malcev

FAMILIES = (
    "preaffine_bijections",
    "multiaffine_automorphism_fields",
    "premonoidal_fields",
    "malcev",
)

_FILTERS = {
    "preaffine_bijections": ("none", "affine", "strictly_preaffine", "torsion_free"),
    "multiaffine_automorphism_fields": ("none", "nonconstant", "nonzero_torsion1_field"),
    "premonoidal_fields": ("none", "nonconstant", "nonzero_curvature0"),
}


class MiningError(ValueError):
    """Bad family name or family options."""


@dataclass(frozen=True)
class MiningResult:
    family: str
    params: tuple[tuple[str, str], ...]
    examined: int
    matched: int
    budget_exceeded: bool
    filtered: bool
    structures: tuple[tuple[str, str], ...]


def _vector_group(name: str):
    try:
        group = catalog_group(name)
    except Exception:
        raise MiningError(f"unknown vector group {name!r}")
    return as_vector_group(group)


def _target_group(name: str) -> FiniteGroup:
    try:
        return catalog_group(name)
    except Exception:
        raise MiningError(f"unknown target group {name!r}")


def _check_filter(family: str, name: str) -> str:
    if name not in _FILTERS[family]:
        raise MiningError(
            f"unknown filter {name!r} for {family}; choose from "
            + ", ".join(_FILTERS[family])
        )
    return name


def _mine_preaffine_bijections(opts, limit, budget) -> MiningResult:
    vectors = _vector_group(opts.get("vectors", "Z2^2"))
    target = _target_group(opts.get("target", "Z4"))
    flt = _check_filter("preaffine_bijections", opts.get("filter", "none"))
    params = (
        ("vectors", vectors.name),
        ("target", target.name),
        ("filter", flt),
    )
    structures = []
    examined = 0
    exceeded = False
    for assignment in identity_preserving_assignments(vectors, target):
        if examined >= budget:
            exceeded = True
            break
        examined += 1
        space = translation_space(vectors, target, assignment)
        if flt == "affine" and space.kind != "affine":
            continue
        if flt == "strictly_preaffine" and space.kind != "strictly_preaffine":
            continue
        if flt == "torsion_free" and not (
            space.kind == "strictly_preaffine" and is_torsion_free(space)
        ):
            continue
        structures.append((f"pb{examined - 1:05d}", emit_action(space.action)))
        if len(structures) >= limit:
            break
    return MiningResult(
        "preaffine_bijections",
        params,
        examined,
        len(structures),
        exceeded,
        flt != "none",
        tuple(structures),
    )


def _mine_automorphism_fields(opts, limit, budget) -> MiningResult:
    vectors = _vector_group(opts.get("vectors", "Z3"))
    flt = _check_filter("multiaffine_automorphism_fields", opts.get("filter", "none"))
    params = (("vectors", vectors.name), ("filter", flt))
    autos = list(group_automorphisms(vectors.base))
    structures = []
    examined = 0
    exceeded = False
    for combo in itertools.product(autos, repeat=vectors.order):
        if examined >= budget:
            exceeded = True
            break
        examined += 1
        field = automorphism_field(vectors, combo)
        if flt == "nonconstant" and field.is_constant:
            continue
        if flt == "nonzero_torsion1_field" and first_nonzero(field, "torsion1_field") is None:
            continue
        text = emit_field(
            vectors.base, field.carrier, [ps.action for ps in field.point_spaces]
        )
        structures.append((f"maf{examined - 1:05d}", text))
        if len(structures) >= limit:
            break
    return MiningResult(
        "multiaffine_automorphism_fields",
        params,
        examined,
        len(structures),
        exceeded,
        flt != "none",
        tuple(structures),
    )


def _mine_premonoidal_fields(opts, limit, budget) -> MiningResult:
    vectors = _vector_group(opts.get("vectors", "Z2^2"))
    target = _target_group(opts.get("target", "Z4"))
    flt = _check_filter("premonoidal_fields", opts.get("filter", "none"))
    try:
        pool_size = int(opts.get("pool", "2"))
    except ValueError:
        raise MiningError("pool must be an integer")
    if pool_size < 1:
        raise MiningError("pool must be positive")
    params = (
        ("vectors", vectors.name),
        ("target", target.name),
        ("filter", flt),
        ("pool", str(pool_size)),
    )
    pool = list(
        itertools.islice(identity_preserving_assignments(vectors, target), pool_size)
    )
    structures = []
    examined = 0
    exceeded = False
    for combo in itertools.product(pool, repeat=target.order):
        if examined >= budget:
            exceeded = True
            break
        examined += 1
        field = left_multiplication_field(vectors, target, combo)
        if flt == "nonconstant" and field.is_constant:
            continue
        if flt == "nonzero_curvature0" and first_nonzero(field, "curvature0") is None:
            continue
        text = emit_field(
            vectors.base, field.carrier, [ps.action for ps in field.point_spaces]
        )
        structures.append((f"pf{examined - 1:05d}", text))
        if len(structures) >= limit:
            break
    return MiningResult(
        "premonoidal_fields",
        params,
        examined,
        len(structures),
        exceeded,
        flt != "none",
        tuple(structures),
    )


def _mine_malcev(opts, limit, budget) -> MiningResult:
    try:
        n = int(opts.get("n", "2"))
    except ValueError:
        raise MiningError("n must be an integer")
    require = tuple(
        part for part in opts.get("require", "a1,a2").split(",") if part
    )
    params = (("n", str(n)), ("require", ",".join(require)))
    structures = []
    examined = 0
    exceeded = False
    try:
        for struct in enumerate_malcev(n, require, budget=budget):
            examined += 1
            structures.append((f"m{n}_{examined - 1:05d}", emit_malcev(struct)))
            if len(structures) >= limit:
                break
    except BudgetExceeded:
        exceeded = True
    # constraints always filter; an empty yield means nothing satisfied them
    return MiningResult(
        "malcev",
        params,
        examined,
        len(structures),
        exceeded,
        True,
        tuple(structures),
    )


_MINERS = {
    "preaffine_bijections": _mine_preaffine_bijections,
    "multiaffine_automorphism_fields": _mine_automorphism_fields,
    "premonoidal_fields": _mine_premonoidal_fields,
    "malcev": _mine_malcev,
}


def mine(
    family: str,
    options: dict[str, str],
    limit: int = 10,
    budget: int = 100_000,
) -> MiningResult:
    if family not in _MINERS:
        raise MiningError(
            f"unknown family {family!r}; choose from " + ", ".join(FAMILIES)
        )
    if limit < 1:
        raise MiningError("limit must be positive")
    if budget < 1:
        raise MiningError("budget must be positive")
    known = {
        "preaffine_bijections": {"vectors", "target", "filter"},
        "multiaffine_automorphism_fields": {"vectors", "filter"},
        "premonoidal_fields": {"vectors", "target", "filter", "pool"},
        "malcev": {"n", "require"},
    }[family]
    stray = set(options) - known
    if stray:
        raise MiningError(
            f"unknown option(s) {sorted(stray)} for {family}; "
            f"accepted: {sorted(known)}"
        )
    return _MINERS[family](options, limit, budget)
