"""Line-oriented UTF-8 file formats.

Every file opens with `kind <what>`; `#` starts a comment anywhere on a line.
Tables are written with labels, one row per line, with a bare `:` separating
the row head from its entries. Emitters always inline group blocks so files
stay self-contained; parsers additionally accept `group <catalog-name>`.

Grammars (lines in this order, comments and blank lines allowed between):

  group:   kind group / name N / elements ... / identity E / row G : ...
  action:  kind action / group ... / carrier ... / map G : ...
  field:   kind field / group ... / carrier ... / (at P / map V : ...)*
  malcev:  kind malcev / carrier ... / entry X Y Z : W   (lexicographic)
  binary:  kind binary / group ... / carrier ... / pair G X : Y (lexicographic)

Row, map, entry and pair lines must follow element order; `at` sections must
follow carrier order. Parse errors carry 1-based line and column numbers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..actions import Action, BinaryActionTable
from ..carriers import Endofunction, FiniteSet, finite_set
from ..groups import FiniteGroup, builtin_catalog, group_from_rows
from ..malcev import MalcevStructure

_TOKEN = re.compile(r"\S+")


class ParseError(Exception):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column


@dataclass
class _Line:
    number: int
    tokens: list[str]
    columns: list[int]

    def token(self, i: int) -> str:
        return self.tokens[i]

    def column_of(self, i: int) -> int:
        return self.columns[min(i, len(self.columns) - 1)]


class _Reader:
    def __init__(self, text: str):
        self.lines: list[_Line] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            tokens, columns = [], []
            for m in _TOKEN.finditer(body):
                tokens.append(m.group())
                columns.append(m.start() + 1)
            if tokens:
                self.lines.append(_Line(number, tokens, columns))
        self.pos = 0
        self.last_number = self.lines[-1].number if self.lines else 1

    def peek(self) -> _Line | None:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self, keyword: str) -> _Line:
        line = self.peek()
        if line is None:
            raise ParseError(f"unexpected end of file, expected {keyword!r}", self.last_number)
        if line.token(0) != keyword:
            raise ParseError(
                f"expected {keyword!r}, found {line.token(0)!r}",
                line.number,
                line.column_of(0),
            )
        self.pos += 1
        return line

    def at_end(self) -> bool:
        return self.pos >= len(self.lines)

    def require_end(self) -> None:
        line = self.peek()
        if line is not None:
            raise ParseError(
                f"unexpected trailing line starting with {line.token(0)!r}",
                line.number,
                line.column_of(0),
            )


def _single(line: _Line, keyword: str) -> str:
    if len(line.tokens) != 2:
        raise ParseError(
            f"{keyword!r} takes exactly one value", line.number, line.column_of(0)
        )
    return line.token(1)


def _labels(line: _Line, keyword: str) -> list[str]:
    if len(line.tokens) < 2:
        raise ParseError(
            f"{keyword!r} needs at least one label", line.number, line.column_of(0)
        )
    return line.tokens[1:]


def _index_of(line: _Line, pos: int, label: str, universe: FiniteSet) -> int:
    if label not in universe:
        raise ParseError(
            f"unknown element label {label!r}", line.number, line.column_of(pos)
        )
    return universe.index(label)


def _head_with_colon(line: _Line, keyword: str, heads: int) -> list[str]:
    """Tokens between the keyword and the `:` separator, exactly `heads` many."""
    if len(line.tokens) < heads + 2 or line.token(heads + 1) != ":":
        raise ParseError(
            f"{keyword!r} line needs {heads} label(s) then ':'",
            line.number,
            line.column_of(min(heads + 1, len(line.tokens) - 1)),
        )
    return line.tokens[1 : heads + 1]


def _row_values(line: _Line, start: int, count: int, universe: FiniteSet) -> list[int]:
    values = line.tokens[start:]
    if len(values) != count:
        raise ParseError(
            f"expected {count} entries, found {len(values)}",
            line.number,
            line.column_of(len(line.tokens) - 1),
        )
    return [_index_of(line, start + i, v, universe) for i, v in enumerate(values)]


def _parse_group_body(r: _Reader) -> FiniteGroup:
    name = _single(r.take("name"), "name")
    elements = _labels(r.take("elements"), "elements")
    if len(set(elements)) != len(elements):
        line = r.lines[r.pos - 1]
        raise ParseError("duplicate element label", line.number, line.column_of(1))
    carrier = finite_set(name, elements)
    identity_line = r.take("identity")
    identity = _single(identity_line, "identity")
    _index_of(identity_line, 1, identity, carrier)
    rows = []
    for g in elements:
        line = r.take("row")
        (head,) = _head_with_colon(line, "row", 1)
        if head != g:
            raise ParseError(
                f"row order must follow the element order; expected {g!r}",
                line.number,
                line.column_of(1),
            )
        rows.append([carrier.label(i) for i in _row_values(line, 3, len(elements), carrier)])
    group = group_from_rows(name, elements, rows)
    if group.identity != carrier.index(identity):
        raise ParseError(
            f"declared identity {identity!r} is not the identity of the table",
            identity_line.number,
            identity_line.column_of(1),
        )
    return group


def _parse_group_block(r: _Reader) -> FiniteGroup:
    """Either `group <catalog-name>` or `group begin` ... `group end`."""
    line = r.take("group")
    if len(line.tokens) != 2:
        raise ParseError(
            "'group' takes a catalog name or 'begin'", line.number, line.column_of(0)
        )
    arg = line.token(1)
    if arg != "begin":
        groups = builtin_catalog()
        if arg not in groups:
            raise ParseError(
                f"unknown catalog group {arg!r}", line.number, line.column_of(1)
            )
        return groups[arg]
    group = _parse_group_body(r)
    end = r.take("group")
    if len(end.tokens) != 2 or end.token(1) != "end":
        raise ParseError("expected 'group end'", end.number, end.column_of(0))
    return group


def _take_kind(r: _Reader, expected: str | None = None) -> str:
    line = r.take("kind")
    kind = _single(line, "kind")
    if kind not in ("group", "action", "field", "malcev", "binary"):
        raise ParseError(f"unknown kind {kind!r}", line.number, line.column_of(1))
    if expected is not None and kind != expected:
        raise ParseError(
            f"expected kind {expected!r}, found {kind!r}", line.number, line.column_of(1)
        )
    return kind


def parse_group_text(text: str) -> FiniteGroup:
    r = _Reader(text)
    _take_kind(r, "group")
    group = _parse_group_body(r)
    r.require_end()
    return group


def _parse_carrier(r: _Reader, name: str = "X") -> FiniteSet:
    line = r.take("carrier")
    labels = _labels(line, "carrier")
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate carrier label", line.number, line.column_of(1))
    return finite_set(name, labels)


def _parse_maps(r: _Reader, group: FiniteGroup, carrier: FiniteSet) -> list[Endofunction]:
    maps = []
    for g in group.carrier.elements:
        line = r.take("map")
        (head,) = _head_with_colon(line, "map", 1)
        if head != g:
            raise ParseError(
                f"map order must follow the group element order; expected {g!r}",
                line.number,
                line.column_of(1),
            )
        maps.append(Endofunction(carrier, tuple(_row_values(line, 3, len(carrier), carrier))))
    return maps


def parse_action_text(text: str) -> Action:
    r = _Reader(text)
    _take_kind(r, "action")
    group = _parse_group_block(r)
    carrier = _parse_carrier(r)
    maps = _parse_maps(r, group, carrier)
    r.require_end()
    return Action(group.carrier, carrier, tuple(maps), group)


@dataclass(frozen=True)
class ParsedField:
    """Raw field file contents; verification happens downstream."""

    group: FiniteGroup
    carrier: FiniteSet
    point_actions: tuple[Action, ...]


def parse_field_text(text: str) -> ParsedField:
    r = _Reader(text)
    _take_kind(r, "field")
    group = _parse_group_block(r)
    carrier = _parse_carrier(r)
    actions = []
    for p in carrier.elements:
        line = r.take("at")
        head = _single(line, "at")
        if head != p:
            raise ParseError(
                f"'at' sections must follow the carrier order; expected {p!r}",
                line.number,
                line.column_of(1),
            )
        maps = _parse_maps(r, group, carrier)
        actions.append(Action(group.carrier, carrier, tuple(maps), group))
    r.require_end()
    return ParsedField(group, carrier, tuple(actions))


def parse_malcev_text(text: str) -> MalcevStructure:
    r = _Reader(text)
    _take_kind(r, "malcev")
    carrier = _parse_carrier(r, name="M")
    n = len(carrier)
    table = []
    for x in carrier.elements:
        for y in carrier.elements:
            for z in carrier.elements:
                line = r.take("entry")
                heads = _head_with_colon(line, "entry", 3)
                if heads != [x, y, z]:
                    raise ParseError(
                        "entry order must be lexicographic in the carrier; "
                        f"expected {x!r} {y!r} {z!r}",
                        line.number,
                        line.column_of(1),
                    )
                if len(line.tokens) != 6:
                    raise ParseError(
                        "'entry' takes three labels, ':' and one value",
                        line.number,
                        line.column_of(len(line.tokens) - 1),
                    )
                table.append(_index_of(line, 5, line.token(5), carrier))
    r.require_end()
    return MalcevStructure(carrier, tuple(table))


def parse_binary_text(text: str) -> BinaryActionTable:
    r = _Reader(text)
    _take_kind(r, "binary")
    group = _parse_group_block(r)
    carrier = _parse_carrier(r)
    values = []
    for g in group.carrier.elements:
        row = []
        for x in carrier.elements:
            line = r.take("pair")
            heads = _head_with_colon(line, "pair", 2)
            if heads != [g, x]:
                raise ParseError(
                    f"pair order must be lexicographic; expected {g!r} {x!r}",
                    line.number,
                    line.column_of(1),
                )
            if len(line.tokens) != 5:
                raise ParseError(
                    "'pair' takes two labels, ':' and one value",
                    line.number,
                    line.column_of(len(line.tokens) - 1),
                )
            row.append(_index_of(line, 4, line.token(4), carrier))
        values.append(tuple(row))
    r.require_end()
    return BinaryActionTable(group.carrier, carrier, tuple(values), group)


def detect_kind(text: str) -> str:
    r = _Reader(text)
    return _take_kind(r)


_PARSERS = {
    "group": parse_group_text,
    "action": parse_action_text,
    "field": parse_field_text,
    "malcev": parse_malcev_text,
    "binary": parse_binary_text,
}


def parse_text(text: str):
    kind = detect_kind(text)
    return kind, _PARSERS[kind](text)


def _check_label(label: str) -> str:
    if not label or _TOKEN.fullmatch(label) is None or "#" in label or label == ":":
        raise ValueError(f"label {label!r} cannot be written to a file")
    return label


def _group_body_lines(group: FiniteGroup) -> list[str]:
    elements = [_check_label(e) for e in group.carrier.elements]
    lines = [
        f"name {_check_label(group.name)}",
        f"elements {' '.join(elements)}",
        f"identity {group.label(group.identity)}",
    ]
    for g in range(group.order):
        row = " ".join(group.label(v) for v in group.table[g])
        lines.append(f"row {group.label(g)} : {row}")
    return lines


def emit_group(group: FiniteGroup) -> str:
    return "\n".join(["kind group"] + _group_body_lines(group)) + "\n"


def _inline_group_lines(group: FiniteGroup) -> list[str]:
    return ["group begin"] + _group_body_lines(group) + ["group end"]


def _map_lines(group: FiniteGroup, carrier: FiniteSet, maps) -> list[str]:
    lines = []
    for g, m in zip(group.carrier.elements, maps):
        images = " ".join(carrier.label(i) for i in m.images)
        lines.append(f"map {g} : {images}")
    return lines


def emit_action(action: Action) -> str:
    if action.group is None:
        raise ValueError("only group-structured actions have a file form")
    lines = ["kind action"]
    lines += _inline_group_lines(action.group)
    lines.append(f"carrier {' '.join(_check_label(x) for x in action.carrier.elements)}")
    lines += _map_lines(action.group, action.carrier, action.maps)
    return "\n".join(lines) + "\n"


def emit_field(group: FiniteGroup, carrier: FiniteSet, point_actions) -> str:
    lines = ["kind field"]
    lines += _inline_group_lines(group)
    lines.append(f"carrier {' '.join(_check_label(x) for x in carrier.elements)}")
    for p, action in zip(carrier.elements, point_actions):
        lines.append(f"at {p}")
        lines += _map_lines(group, carrier, action.maps)
    return "\n".join(lines) + "\n"


def emit_malcev(struct: MalcevStructure) -> str:
    c = struct.carrier
    lines = ["kind malcev", f"carrier {' '.join(_check_label(x) for x in c.elements)}"]
    for x in c.elements:
        for y in c.elements:
            for z in c.elements:
                lines.append(f"entry {x} {y} {z} : {struct.value(x, y, z)}")
    return "\n".join(lines) + "\n"


def emit_binary(table: BinaryActionTable) -> str:
    if table.group is None:
        raise ValueError("only group-structured tables have a file form")
    lines = ["kind binary"]
    lines += _inline_group_lines(table.group)
    lines.append(f"carrier {' '.join(_check_label(x) for x in table.carrier.elements)}")
    for g, row in zip(table.domain.elements, table.values):
        for x, y in zip(table.carrier.elements, row):
            lines.append(f"pair {g} {x} : {table.carrier.label(y)}")
    return "\n".join(lines) + "\n"
