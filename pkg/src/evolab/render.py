"""Human-readable strings for vectors and subspaces (``e1+2e3``, ``e1-e2;e3``)."""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .errors import ParseError
from .field import FieldSpec
from .linalg import Subspace, span


def format_vector(field: FieldSpec, v: Sequence, labels: Optional[Sequence[str]] = None) -> str:
    parts = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        name = labels[i] if labels else f"e{i + 1}"
        text = field.format(c)
        if text == "1":
            term = name
        elif text == "-1":
            term = "-" + name
        elif "/" in text:
            sign, body = ("-", text[1:]) if text.startswith("-") else ("", text)
            term = f"{sign}({body}){name}"
        else:
            term = text + name
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return "".join(parts) or "0"


def format_subspace(space, labels: Optional[Sequence[str]] = None) -> str:
    if space.is_zero():
        return "0"
    return ";".join(format_vector(space.field, row, labels) for row in space.basis)


_TERM_RE = re.compile(r"([+-]?)\s*(?:\(?\s*(\d+(?:/\d+)?)\s*\)?)?\s*e(\d+)")


def parse_vector(field: FieldSpec, text: str, n: int) -> tuple:
    """Inverse of :func:`format_vector` for the default ``e1..en`` labels."""
    body = text.replace(" ", "")
    v = [field.zero] * n
    if body == "0":
        return tuple(v)
    pos = 0
    for m in _TERM_RE.finditer(body):
        if m.start() != pos or (pos and not m.group(1)):
            raise ParseError(f"cannot parse vector {text!r}")
        i = int(m.group(3)) - 1
        if not 0 <= i < n:
            raise ParseError(f"e{i + 1} is outside dimension {n}")
        c = field.parse(m.group(2) or "1")
        v[i] = field.add(v[i], field.neg(c) if m.group(1) == "-" else c)
        pos = m.end()
    if pos != len(body) or not body:
        raise ParseError(f"cannot parse vector {text!r}")
    return tuple(v)


def parse_subspace(field: FieldSpec, text: str, n: int) -> Subspace:
    rows = [parse_vector(field, part, n) for part in text.split(";") if part.strip()]
    return span(field, rows, n)
