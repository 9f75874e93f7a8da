"""Command line front end.

Verbs: classify, affine, field, deform, malcev, mine, convert, catalog.
File arguments are paths or catalog:NAME references. Output is `key = value`
lines except for convert and catalog entry dumps, which print file text.

Exit codes: 0 success, 1 verification failure (or a mining filter that
matched nothing), 2 parse or usage error, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import re

from ..actions import (
    GROUP_FLAGS,
    SET_FLAGS,
    Action,
    ActionError,
    classify,
    from_binary,
    image_analysis,
    left_multiplication_action,
    orbit,
    stabilizer,
    to_binary,
)
from ..affine import AffineError, translation_group, verify_preaffine
from ..carriers import CarrierError, finite_set
from ..deformation import (
    MEASURES,
    DeformationError,
    argument_count,
    evaluate,
    flatness_witness,
    scan,
    torsion_free_witness,
)
from ..fields import ActionField, FieldError, induced_action, verify_field
from ..groups import FiniteGroup, GroupError, as_vector_group
from ..malcev import (
    BudgetExceeded,
    MalcevError,
    MalcevStructure,
    check_identities,
    from_group,
    iteration_closure,
    phi_is_isomorphism,
    psi_is_isomorphism,
    recovered_group,
    translations,
)
from ..malcev import IDENTITY_NAMES
from . import catalog
from .formats import (
    ParseError,
    emit_action,
    emit_binary,
    emit_group,
    emit_malcev,
    parse_text,
)
from .mine import FAMILIES, MiningError, mine
from .reports import Report, fmt, fmt_vector

NONZERO_LINE_CAP = 10_000


class UsageError(Exception):
    pass


def _read_arg(arg: str) -> str:
    if arg.startswith("catalog:"):
        name = arg[len("catalog:") :]
        try:
            return catalog.text(name)
        except KeyError:
            raise UsageError(f"unknown catalog entry {name!r}") from None
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {arg!r}: {exc}") from None


def _load(arg: str):
    return parse_text(_read_arg(arg))


def _as_action(kind: str, obj, verb: str) -> tuple[str, Action]:
    if kind == "action":
        return kind, obj
    if kind == "binary":
        return kind, from_binary(obj)
    raise UsageError(f"{verb} takes an action or binary file, not {kind!r}")


def _as_space(action: Action):
    vectors = as_vector_group(action.group)
    return verify_preaffine(vectors, action)


def _as_field(kind: str, obj, verb: str) -> ActionField:
    if kind != "field":
        raise UsageError(f"{verb} takes a field file, not {kind!r}")
    return verify_field(as_vector_group(obj.group), obj.carrier, obj.point_actions)


# ---------------------------------------------------------------- classify

def _run_classify(args) -> int:
    kind, obj = _load(args.file)
    kind, action = _as_action(kind, obj, "classify")
    report = classify(action, variance=args.variance)
    r = Report()
    r.add("kind", kind)
    r.add("domain", action.group.name if action.group else action.domain.name)
    r.add("domain_size", len(action.domain))
    r.add("carrier_size", len(action.carrier))
    r.add("domain_is_group", report.domain_is_group)
    r.add("variance", report.variance)
    flag_order = SET_FLAGS + tuple(f for f in GROUP_FLAGS if f in report.flags)
    for name in flag_order:
        r.add(name, report.flags[name])
    r.add("image_size", report.image_size)
    r.add("image_is_group", report.image_is_group)
    r.add("image_identity_is_identity_map", report.image_identity_is_identity_map)
    for name in flag_order:
        if name in report.witnesses:
            r.add(f"witness_{name}", report.witnesses[name])
    if args.exhaustive:
        for x in action.carrier:
            r.add(f"orbit({x})", orbit(action, x))
        for x in action.carrier:
            r.add(f"stabilizer({x})", stabilizer(action, x))
        img = image_analysis(action)
        r.add("image_closed", img.closed)
        for m in img.elements:
            r.add("image_map", tuple(action.carrier.label(i) for i in m.images))
    print(r.render(), end="")
    return 0


# ------------------------------------------------------------------ affine

def _run_affine(args) -> int:
    kind, obj = _load(args.file)
    _, action = _as_action(kind, obj, "affine")
    space = _as_space(action)
    r = Report()
    r.add("vectors", space.vectors.name)
    r.add("dimension", space.vectors.dim)
    r.add("carrier_size", space.order)
    r.add("space_kind", space.kind)
    r.add("translation_group_order", translation_group(space).order)
    tw = torsion_free_witness(space)
    r.add("torsion_free", tw is None)
    if tw is not None:
        r.add("torsion_witness", tw)
    fw = flatness_witness(space)
    r.add("flat", fw is None)
    if fw is not None:
        r.add("flatness_witness", fw)
    if args.exhaustive:
        for x in space.carrier:
            for y in space.carrier:
                v = space.difference(x, y)
                r.add(f"division({x}, {y})", fmt_vector(space.vectors, v))
    print(r.render(), end="")
    return 0


# ------------------------------------------------------------------- field

def _run_field(args) -> int:
    kind, obj = _load(args.file)
    field = _as_field(kind, obj, "field")
    induced = induced_action(field)
    r = Report()
    r.add("vectors", field.vectors.name)
    r.add("dimension", field.vectors.dim)
    r.add("carrier_size", field.order)
    r.add("pointwise_kind", field.pointwise_kind)
    r.add("constant", field.is_constant)
    r.add("common_image_size", len(field.common_image))
    r.add("induced_kind", induced.kind)
    r.add("induced_closed", induced.closed)
    if args.exhaustive:
        r.add("pullback_image", _pullback_image_holds(field))
        r.add("pullback_division", _pullback_division_holds(field))
        r.add("pullback_compose", _pullback_compose_holds(field))
    print(r.render(), end="")
    return 0


def _pullback_image_holds(field: ActionField) -> bool:
    n, nv = field.order, field.vectors.order
    for q in range(n):
        for p in range(n):
            for v in range(nv):
                w = field.pullback_idx(v, q, p)
                if (
                    field.point_spaces[p].action.maps[w].images
                    != field.point_spaces[q].action.maps[v].images
                ):
                    return False
    return True


def _pullback_division_holds(field: ActionField) -> bool:
    n = field.order
    for q in range(n):
        for p in range(n):
            for x in range(n):
                for y in range(n):
                    v = field.division_idx(q, x, y)
                    if field.pullback_idx(v, q, p) != field.division_idx(p, x, y):
                        return False
    return True


def _pullback_compose_holds(field: ActionField) -> bool:
    n, nv = field.order, field.vectors.order
    for r_ in range(n):
        for q in range(n):
            for p in range(n):
                for v in range(nv):
                    step = field.pullback_idx(field.pullback_idx(v, r_, q), q, p)
                    if step != field.pullback_idx(v, r_, p):
                        return False
    return True


# ------------------------------------------------------------------ deform

def _vector_norm(vectors, label: str) -> int:
    return sum(vectors.components(vectors.index(label)))


def _run_deform(args) -> int:
    if args.measure not in MEASURES:
        raise UsageError(
            f"unknown measure {args.measure!r}; choose from " + ", ".join(MEASURES)
        )
    level, arg_kinds = MEASURES[args.measure]
    kind, parsed = _load(args.file)
    if level == "space":
        _, action = _as_action(kind, parsed, f"measure {args.measure}")
        obj = _as_space(action)
        vectors = obj.vectors
        carrier = obj.carrier
    else:
        obj = _as_field(kind, parsed, f"measure {args.measure}")
        vectors = obj.vectors
        carrier = obj.carrier

    r = Report()
    r.add("measure", args.measure)
    r.add("level", level)

    if args.at is not None:
        if args.exhaustive:
            raise UsageError("--at and --exhaustive cannot be combined")
        if len(args.at) != len(arg_kinds):
            raise UsageError(
                f"measure {args.measure} takes {len(arg_kinds)} arguments "
                f"({', '.join(arg_kinds)}), got {len(args.at)}"
            )
        for label, k in zip(args.at, arg_kinds):
            universe = carrier if k == "point" else vectors
            try:
                universe.index(label)
            except Exception:
                raise UsageError(f"unknown {k} label {label!r}") from None
        value = evaluate(obj, args.measure, tuple(args.at))
        r.add("at", tuple(args.at))
        r.add("value", fmt_vector(vectors, value.vector))
        r.add("base", value.base)
        r.add("zero", value.zero)
        print(r.render(), end="")
        return 0

    total = argument_count(obj, args.measure)
    zero_count = 0
    nonzero = []
    for labels, value in scan(obj, args.measure):
        if value.zero:
            zero_count += 1
        else:
            nonzero.append((labels, value))
    r.add("tuples", total)
    r.add("zero_count", zero_count)
    r.add("nonzero_count", len(nonzero))
    if nonzero:
        r.add(
            "max_norm_nonzero",
            max(_vector_norm(vectors, v.vector) for _, v in nonzero),
        )
        first_args, first = nonzero[0]
        r.add("first_nonzero_at", first_args)
        r.add("first_nonzero_value", fmt_vector(vectors, first.vector))
        r.add("first_nonzero_base", first.base)
    else:
        r.add("max_norm_nonzero", None)
        r.add("first_nonzero_at", None)
        r.add("first_nonzero_value", None)
        r.add("first_nonzero_base", None)
    if args.exhaustive:
        for labels, value in nonzero[:NONZERO_LINE_CAP]:
            shown = (fmt_vector(vectors, value.vector), value.base)
            r.add(f"nonzero({', '.join(labels)})", shown)
        if len(nonzero) > NONZERO_LINE_CAP:
            r.add("truncated", True)
    print(r.render(), end="")
    return 0


# ------------------------------------------------------------------ malcev

def _run_malcev(args) -> int:
    kind, struct = _load(args.file)
    if kind != "malcev":
        raise UsageError(f"malcev takes a malcev file, not {kind!r}")
    report = check_identities(struct)
    r = Report()
    r.add("order", struct.order)
    for name in IDENTITY_NAMES:
        r.add(name, report.flags[name])
    r.add("malcev", report.malcev)
    for name in IDENTITY_NAMES:
        if name in report.witnesses:
            r.add(f"witness_{name}", report.witnesses[name])
    r.add("translations", len(translations(struct)))
    if args.exhaustive:
        closure = iteration_closure(struct)
        r.add("closure_size", closure.size)
        r.add("closure_contains_identity", closure.contains_identity)
        r.add("closure_is_group", closure.is_group)
        r.add("closure_fixed_point_law", closure.fixed_point_law)
        if report.malcev:
            e = struct.carrier.label(0)
            try:
                recovered_group(struct, e)
                r.add("recovered_group", True)
            except GroupError:
                r.add("recovered_group", False)
            try:
                r.add("phi_isomorphism", phi_is_isomorphism(struct, e))
            except MalcevError:
                r.add("phi_isomorphism", False)
            if struct.order >= 2:
                e2 = struct.carrier.label(1)
                try:
                    r.add("psi_isomorphism", psi_is_isomorphism(struct, e, e2))
                except MalcevError:
                    r.add("psi_isomorphism", False)
    print(r.render(), end="")
    return 0


# -------------------------------------------------------------------- mine

def _run_mine(args) -> int:
    options = {}
    for name in ("vectors", "target", "filter", "pool", "n", "require"):
        value = getattr(args, name)
        if value is not None:
            options[name] = value
    result = mine(args.family, options, limit=args.limit, budget=args.budget)
    r = Report()
    r.add("family", result.family)
    for key, value in result.params:
        r.add(key, value)
    r.add("examined", result.examined)
    r.add("matched", result.matched)
    r.add("budget_exceeded", result.budget_exceeded)
    if args.emit is not None:
        os.makedirs(args.emit, exist_ok=True)
    for name, text in result.structures:
        if args.emit is None:
            r.add("match", name)
        else:
            path = os.path.join(args.emit, f"{name}.txt")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
            r.add("wrote", path)
    if result.budget_exceeded:
        r.add("error", "budget")
        print(r.render(), end="")
        return 3
    if result.filtered and result.matched == 0:
        r.add("error", "verification")
        r.add("message", "no structures matched")
        print(r.render(), end="")
        return 1
    print(r.render(), end="")
    return 0


# ----------------------------------------------------------------- convert

def _writable_name(group: FiniteGroup) -> FiniteGroup:
    """Generated names may contain spaces; file names may not."""
    safe = re.sub(r"[\s#]+", "_", group.name)
    if not safe or safe == ":":
        safe = "converted"
    if safe == group.name:
        return group
    return FiniteGroup(
        finite_set(safe, group.carrier.elements),
        group.table,
        group.identity,
        group.inverses,
    )


def _convert_text(kind: str, obj, to: str) -> str:
    if kind == "action" and to == "binary":
        return emit_binary(to_binary(obj))
    if kind == "binary" and to == "action":
        return emit_action(from_binary(obj))
    if kind == "group" and to == "action":
        return emit_action(left_multiplication_action(obj))
    if kind == "group" and to == "malcev":
        return emit_malcev(from_group(obj))
    if kind == "malcev" and to == "group":
        return emit_group(recovered_group(obj, obj.carrier.label(0)))
    if kind == "action" and to == "group":
        img = image_analysis(obj)
        if not img.is_group:
            raise ActionError("the image of the action is not a group")
        return emit_group(_writable_name(img.group))
    raise UsageError(f"cannot convert a {kind} file to {to!r}")


def _run_convert(args) -> int:
    kind, obj = _load(args.file)
    text = _convert_text(kind, obj, args.to)
    if args.out is None:
        print(text, end="")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote = {args.out}")
    return 0


# ----------------------------------------------------------------- catalog

def _run_catalog(args) -> int:
    if args.name is None:
        r = Report()
        for name in catalog.names():
            r.add(name, catalog.kind(name))
        print(r.render(), end="")
        return 0
    try:
        print(catalog.text(args.name), end="")
    except KeyError:
        raise UsageError(f"unknown catalog entry {args.name!r}") from None
    return 0


# -------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finact",
        description="inspect and search finite actions, spaces and fields",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="flag profile of an action")
    p.add_argument("file")
    p.add_argument(
        "--variance", choices=("covariant", "contravariant"), default="covariant"
    )
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("affine", help="certify an action as a preaffine space")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("field", help="certify a family of point actions")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("deform", help="evaluate a deformation measure")
    p.add_argument("file")
    p.add_argument("--measure", required=True)
    p.add_argument("--at", nargs="*", default=None)
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("malcev", help="identity profile of a ternary table")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true")

    p = sub.add_parser("mine", help="search for structures")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--vectors")
    p.add_argument("--target")
    p.add_argument("--filter")
    p.add_argument("--pool")
    p.add_argument("--n")
    p.add_argument("--require")
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--emit")

    p = sub.add_parser("convert", help="rewrite a file as another kind")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=("action", "binary", "group", "malcev"))
    p.add_argument("--out")

    p = sub.add_parser("catalog", help="list built-in structures")
    p.add_argument("name", nargs="?")

    return parser


_RUNNERS = {
    "classify": _run_classify,
    "affine": _run_affine,
    "field": _run_field,
    "deform": _run_deform,
    "malcev": _run_malcev,
    "mine": _run_mine,
    "convert": _run_convert,
    "catalog": _run_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _RUNNERS[args.verb](args)
    except ParseError as exc:
        r = Report()
        r.add("error", "parse")
        r.add("line", exc.line)
        r.add("column", exc.column)
        r.add("message", exc.message)
        print(r.render(), end="")
        return 2
    except (UsageError, MiningError) as exc:
        r = Report()
        r.add("error", "usage")
        r.add("message", str(exc))
        print(r.render(), end="")
        return 2
    except BudgetExceeded as exc:
        r = Report()
        r.add("error", "budget")
        r.add("visited", exc.visited)
        r.add("budget", exc.budget)
        print(r.render(), end="")
        return 3
    except (
        ActionError,
        AffineError,
        CarrierError,
        DeformationError,
        FieldError,
        GroupError,
        MalcevError,
    ) as exc:
        r = Report()
        r.add("error", "verification")
        failed = getattr(exc, "failed", None) or getattr(exc, "kind", None)
        if failed is not None:
            r.add("failed", failed)
        point = getattr(exc, "point", None)
        if point is not None:
            r.add("point", point)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            r.add("witness", witness)
        r.add("message", str(exc))
        print(r.render(), end="")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
