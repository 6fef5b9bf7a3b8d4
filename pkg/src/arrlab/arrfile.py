"""Line-oriented arrangement files.

::

    # comment
    field Q[g]/(g^4-g^3+g^2-g+1)
    line 0; 0; 1 label L_1
    line -g^3; 0; 1 label L_7

A ``field`` header (``Q``, ``Q[a]/(a^2+a-1)`` or ``Q[g]/(g^4-g^3+g^2-g+1)``)
comes first; each ``line`` gives three element expressions separated by
semicolons and an optional ``label`` suffix.
"""
from __future__ import annotations

import hashlib
import re
from importlib import resources
from pathlib import Path
from typing import Union

from .field import ElementSyntaxError, FieldError, field_from_name, format_element, parse_element
from .geometry import Arrangement, GeometryError, ProjLine

__all__ = [
    "ArrangementFileError",
    "parse_arrangement_file",
    "write_arrangement",
    "read_arrangement",
    "bundled_path",
    "bundled_names",
    "sha256_text",
]


class ArrangementFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


_LABEL = re.compile(r"\s+label\s+(\S+)\s*$")


def parse_arrangement_file(text: str) -> Arrangement:
    field = None
    lines: list[ProjLine] = []
    labels: list[str] = []
    first_at: dict[ProjLine, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if not stripped:
            continue
        indent = len(body) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        if keyword == "field":
            if field is not None:
                raise ArrangementFileError("second field header", lineno, indent + 1)
            try:
                field = field_from_name(rest)
            except FieldError as exc:
                raise ArrangementFileError(str(exc), lineno, indent + 7) from None
            continue
        if keyword != "line":
            raise ArrangementFileError(f"unknown directive {keyword!r}", lineno, indent + 1)
        if field is None:
            raise ArrangementFileError("line directive before field header", lineno, indent + 1)
        offset = indent + 5
        label = None
        m = _LABEL.search(rest)
        if m:
            label = m.group(1)
            rest = rest[: m.start()]
        parts = rest.split(";")
        if len(parts) != 3:
            raise ArrangementFileError(f"expected 3 coefficients, found {len(parts)}", lineno, offset + 1)
        coeffs = []
        col = offset
        for part in parts:
            try:
                coeffs.append(parse_element(part, field))
            except ElementSyntaxError as exc:
                raise ArrangementFileError(str(exc), lineno, col + 1 + (exc.pos or 0)) from None
            except FieldError as exc:
                raise ArrangementFileError(str(exc), lineno, col + 1) from None
            col += len(part) + 1
        try:
            line = ProjLine(tuple(coeffs))
        except GeometryError:
            raise ArrangementFileError("zero line (all coefficients vanish)", lineno, offset + 1) from None
        if line in first_at:
            raise ArrangementFileError(f"duplicate line (same as line {first_at[line]})", lineno, offset + 1)
        first_at[line] = lineno
        lines.append(line)
        labels.append(label or f"L_{len(lines)}")
    if field is None:
        raise ArrangementFileError("missing field header", 1)
    if len(lines) < 1:
        raise ArrangementFileError("no lines", 1)
    return Arrangement(field, tuple(lines), tuple(labels))


def write_arrangement(arr: Arrangement) -> str:
    out = [f"field {arr.field.name}"]
    for i, l in enumerate(arr.lines):
        coeffs = "; ".join(format_element(c) for c in l.coeffs)
        out.append(f"line {coeffs} label {arr.label(i)}")
    return "\n".join(out) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def bundled_names() -> list[str]:
    return sorted(p.name for p in resources.files("arrlab").joinpath("data").iterdir() if p.name.endswith(".arr"))


def bundled_path(name: str):
    return resources.files("arrlab").joinpath("data").joinpath(name)


def read_arrangement(path: Union[str, Path]) -> tuple[Arrangement, str]:
    """Parse a file, falling back to the bundled data directory for bare names.

    Returns the arrangement and the file text.
    """
    p = Path(path)
    if p.exists():
        text = p.read_text(encoding="utf-8")
    elif p.name == str(path) and p.name in bundled_names():
        text = bundled_path(p.name).read_text(encoding="utf-8")
    else:
        raise FileNotFoundError(f"no such arrangement file: {path}")
    return parse_arrangement_file(text), text
