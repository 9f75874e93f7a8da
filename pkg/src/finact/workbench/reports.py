"""`key = value` report rendering shared by the CLI verbs.

Values: booleans print as true/false, absent values as none, tuples as
parenthesized comma-separated labels. Vectors print as component tuples like
(0,1,1) when the vector group has dimension at least 2, else as the label.
"""

from __future__ import annotations

from ..groups import VectorGroup


def fmt(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(fmt(v) for v in value) + ")"
    return str(value)


def fmt_vector(vectors: VectorGroup | None, label: str) -> str:
    if vectors is not None and vectors.dim >= 2:
        comps = vectors.components(vectors.index(label))
        return "(" + ",".join(str(c) for c in comps) + ")"
    return label


class Report:
    def __init__(self):
        self._lines: list[str] = []

    def add(self, key: str, value) -> None:
        self._lines.append(f"{key} = {fmt(value)}")

    def add_raw(self, line: str) -> None:
        self._lines.append(line)

    def render(self) -> str:
        return "\n".join(self._lines) + "\n"
