"""Variety description files.

::

    field: Fp(2)(a)
    vars: x y z
    gens: x^2 + y*z^2 - a
    codim: 1

``gens`` takes a comma separated list; further generators may follow on
continuation lines.  ``#`` starts a comment.  ``codim`` is optional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .fields import Field, parse_field
from .jets import TruncatedArc
from .poly import Polynomial, VariableContext, parse_polynomial

_KEY_RE = re.compile(r"^\s*([A-Za-z_]+)\s*:(.*)$")
_VAR_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


@dataclass(frozen=True)
class VarietySpec:
    field: Field
    variables: tuple
    gens: tuple
    codim: int | None = None

    @property
    def ctx(self) -> VariableContext:
        return self.gens[0].ctx if self.gens else VariableContext(self.variables)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(text, self.ctx, self.field)

    def to_text(self) -> str:
        lines = [
            f"field: {self.field.grammar()}",
            f"vars: {' '.join(self.variables)}",
            f"gens: {', '.join(str(g) for g in self.gens)}",
        ]
        if self.codim is not None:
            lines.append(f"codim: {self.codim}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _split_top(text: str):
    """Split on commas/semicolons outside parentheses; yields (offset, piece)."""
    depth, start = 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in ",;" and depth == 0:
            yield start, text[start:k]
            start = k + 1
    yield start, text[start:]


def parse_variety(text: str) -> VarietySpec:
    entries = {}
    gens_src = []  # (line, column offset, text)
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _KEY_RE.match(line)
        if m and m.group(1) in ("field", "vars", "gens", "codim"):
            key = m.group(1)
            if key in entries:
                raise ParseError(f"duplicate key {key!r}", line=lineno, column=m.start(1) + 1)
            entries[key] = (lineno, m.start(2), m.group(2))
            current = key
            if key == "gens":
                gens_src.append((lineno, m.start(2), m.group(2)))
            continue
        if m:
            raise ParseError(f"unknown key {m.group(1)!r}", line=lineno, column=m.start(1) + 1)
        if current == "gens":
            gens_src.append((lineno, 0, line))
            continue
        raise ParseError("expected 'key: value'", line=lineno, column=1)

    for key in ("field", "vars", "gens"):
        if key not in entries:
            raise ParseError(f"missing '{key}:' line", line=max([1] + [v[0] for v in entries.values()]))

    lineno, off, val = entries["field"]
    try:
        field = parse_field(val.strip())
    except ParseError as exc:
        lead = len(val) - len(val.lstrip())
        col = None if exc.column is None else exc.column + off + lead
        raise ParseError(exc.message, line=lineno, column=col) from None

    lineno, off, val = entries["vars"]
    names = val.replace(",", " ").split()
    if not names:
        raise ParseError("no variables declared", line=lineno)
    gen_names = field.generator_names()
    for n in names:
        col = off + val.find(n) + 1
        if not _VAR_RE.match(n):
            raise ParseError(f"bad variable name {n!r}", line=lineno, column=col)
        if n[-1].isdigit():
            raise ParseError(f"variable {n!r} ends in a digit and would collide with jet names", line=lineno, column=col)
        if n in gen_names:
            raise ParseError(f"variable {n!r} is also a field generator", line=lineno, column=col)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", line=lineno)
    ctx = VariableContext(names)

    gens = []
    for k, (lineno, off, val) in enumerate(gens_src):
        if not val.strip():
            continue
        pieces = list(_split_top(val))
        if k + 1 < len(gens_src) and len(pieces) > 1 and not pieces[-1][1].strip():
            pieces.pop()  # trailing comma: the list continues on the next line
        for start, piece in pieces:
            if not piece.strip():
                raise ParseError("empty generator", line=lineno, column=off + start + 1)
            try:
                gens.append(parse_polynomial(piece, ctx, field))
            except ParseError as exc:
                col = None if exc.column is None else exc.column + off + start
                raise ParseError(exc.message, line=lineno, column=col) from None
    if not gens:
        raise ParseError("no generators given", line=entries["gens"][0])

    codim = None
    if "codim" in entries:
        lineno, off, val = entries["codim"]
        try:
            codim = int(val.strip())
        except ValueError:
            raise ParseError("codim must be an integer", line=lineno, column=off + 1) from None
    return VarietySpec(field, tuple(names), tuple(gens), codim)


def parse_arc_vectors(text: str, spec: VarietySpec) -> dict:
    """``x:(1,1); y:(1)`` -> ``{"x": [1, 1], "y": [1]}`` as field elements."""
    vectors = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.match(r"^([A-Za-z_][A-Za-z_0-9]*)\s*:\s*\((.*)\)$", chunk)
        if not m:
            raise ParseError(f"bad arc component {chunk!r}; expected name:(c0,c1,...)")
        name = m.group(1)
        if name not in spec.variables:
            raise ParseError(f"unknown variable {name!r} in arc")
        if name in vectors:
            raise ParseError(f"variable {name!r} given twice in arc")
        vectors[name] = [spec.field(c) for _, c in _split_top(m.group(2)) if c.strip()]
        if not vectors[name]:
            raise ParseError(f"empty coefficient vector for {name!r}")
    return vectors


def parse_arc(text: str, spec: VarietySpec, level: int | None = None) -> TruncatedArc:
    """Parse an arc and zero-pad every vector to ``level`` (default: longest)."""
    vectors = parse_arc_vectors(text, spec)
    if level is None:
        level = max((len(v) for v in vectors.values()), default=1) - 1
    return TruncatedArc.from_vectors(spec.field, vectors, spec.variables, level)
