"""Jet ideals and the truncated arcs that satisfy them.

Level ``n`` always means "modulo t^(n+1)".  A base variable ``x`` has jet
variables ``x0, x1, ..., xn``; the jet context lists them from the highest
level down so that higher jet orders dominate every default monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import (
    CharacteristicDividesFactorial,
    ContextMismatch,
    DescriptorMismatch,
    FieldMismatch,
    LevelOutOfRange,
    PointNotOnVariety,
)
from .fields import Field, FieldElement, FieldHom
from .groebner import Ideal
from .poly import Polynomial, VariableContext, substitute_truncated

__all__ = [
    "jet_name",
    "jet_context",
    "JetIdeal",
    "TruncatedArc",
    "WedgeIdeal",
    "jet_ideal",
    "hs_coefficient_char0",
    "constant_jet",
    "evaluate_jet_point",
    "truncate_arc",
    "iterated_jet_ideal",
    "base_change_ideal",
]


def jet_name(base: str, level: int) -> str:
    return f"{base}{level}"


def wedge_name(base: str, i1: int, i2: int) -> str:
    return f"{base}{i1}_{i2}"


def jet_context(base_ctx: VariableContext, n: int) -> VariableContext:
    names, tags = [], []
    for i in range(n, -1, -1):
        for b in base_ctx.names:
            names.append(jet_name(b, i))
            tags.append((b, i))
    if len(set(names)) != len(names):
        raise ContextMismatch(f"jet variable names collide for base variables {base_ctx.names}")
    return VariableContext(names, tags)


def _shared_ring(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ctx, K = gens[0].ctx, gens[0].field
    for g in gens:
        if g.ctx != ctx or g.field != K:
            raise ContextMismatch("generators live in different rings")
    return gens, ctx, K


class JetIdeal:
    """Generators ``F[i][g]`` of the level-``n`` jet ideal of ``gens``."""

    def __init__(self, gens, level: int, ctx: VariableContext, F):
        self.gens = tuple(gens)
        self.level = level
        self.ctx = ctx
        self.base_ctx = self.gens[0].ctx
        self.field = self.gens[0].field
        self.F = tuple(tuple(row) for row in F)

    def __repr__(self):
        return f"JetIdeal(level={self.level}, gens={[str(g) for g in self.gens]})"

    def generators(self):
        """All ``F_{i,g}`` ordered by level, then by base generator."""
        return [f for row in self.F for f in row]

    def ideal(self) -> Ideal:
        return Ideal(self.generators(), self.ctx, self.field)

    def var(self, base: str, level: int) -> Polynomial:
        return Polynomial.variable(self.ctx, self.field, jet_name(base, level))

    def parse(self, text: str) -> Polynomial:
        from .poly import parse_polynomial

        return parse_polynomial(text, self.ctx, self.field)

    def strings(self):
        return [[str(f) for f in row] for row in self.F]


def jet_ideal(gens, n: int) -> JetIdeal:
    """Expand each generator along ``x -> sum_i x_i t^i`` modulo ``t^(n+1)``."""
    if n < 0:
        raise LevelOutOfRange("jet level must be non-negative")
    gens, base_ctx, K = _shared_ring(gens)
    ctx = jet_context(base_ctx, n)
    assignment = {
        b: [Polynomial.variable(ctx, K, jet_name(b, i)) for i in range(n + 1)] for b in base_ctx.names
    }
    cols = [substitute_truncated(g, assignment, n, ctx) for g in gens]
    F = [[cols[k][i] for k in range(len(gens))] for i in range(n + 1)]
    return JetIdeal(gens, n, ctx, F)


def hs_coefficient_char0(f: Polynomial, i: int, level: int | None = None) -> Polynomial:
    """``D^i(f_0) / i!`` for the jet derivation ``D(x_m) = (m+1) x_(m+1)``.

    The result lives in the jet context of ``level`` (default ``i``).
    """
    level = i if level is None else level
    if i < 0 or i > level:
        raise LevelOutOfRange(f"need 0 <= i <= level, got i={i}, level={level}")
    K = f.field
    p = K.characteristic
    if p and i >= p:
        raise CharacteristicDividesFactorial(f"{i}! vanishes in characteristic {p}")
    ctx = jet_context(f.ctx, level)
    cur = f.embed(ctx, {b: jet_name(b, 0) for b in f.ctx.names})
    for _ in range(i):
        cur = _jet_derivation(cur, ctx)
    return cur / FieldElement(K, K.from_int(factorial(i)))


def _jet_derivation(g: Polynomial, ctx: VariableContext) -> Polynomial:
    K = g.field
    out = Polynomial(ctx, K, {})
    for name in g.variables():
        base, m = ctx.jet_tags[ctx.index(name)]
        dg = g.derivative(name)
        if dg.is_zero():
            continue
        nxt = jet_name(base, m + 1)
        if nxt not in ctx:
            raise LevelOutOfRange(f"derivation leaves the jet context at {nxt}")
        out = out + dg * Polynomial.variable(ctx, K, nxt) * (m + 1)
    return out


# ---------------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class TruncatedArc:
    """A point of ``X(K[t]/t^(n+1))`` as per-variable coefficient vectors.

    ``coeffs`` holds raw field payloads aligned with ``names``.
    """

    field: Field
    level: int
    names: tuple
    coeffs: tuple

    @classmethod
    def from_vectors(cls, field: Field, vectors: dict, names=None, level=None) -> "TruncatedArc":
        names = tuple(names) if names is not None else tuple(vectors)
        if level is None:
            level = max(len(v) for v in vectors.values()) - 1
        rows = []
        for n in names:
            vec = list(vectors.get(n, ()))
            if len(vec) > level + 1:
                raise LevelOutOfRange(f"vector for {n!r} is longer than level {level}")
            vec += [0] * (level + 1 - len(vec))
            rows.append(tuple(field.coerce(c) for c in vec))
        return cls(field, level, names, tuple(rows))

    def coefficient(self, name: str, i: int) -> FieldElement:
        return FieldElement(self.field, self.coeffs[self.names.index(name)][i])

    def vector(self, name: str):
        return [FieldElement(self.field, c) for c in self.coeffs[self.names.index(name)]]

    def residue_point(self) -> dict:
        return {n: FieldElement(self.field, row[0]) for n, row in zip(self.names, self.coeffs)}

    def jet_assignment(self) -> dict:
        return {
            jet_name(n, i): FieldElement(self.field, c)
            for n, row in zip(self.names, self.coeffs)
            for i, c in enumerate(row)
        }

    def __str__(self):
        K = self.field
        parts = []
        for n, row in zip(self.names, self.coeffs):
            parts.append(f"{n}:({','.join(K.format(c) for c in row)})")
        return "; ".join(parts)


def constant_jet(gens, point, n: int) -> TruncatedArc:
    """The constant arc at ``point`` truncated to level ``n``."""
    gens, base_ctx, K = _shared_ring(gens)
    if not isinstance(point, dict):
        point = dict(zip(base_ctx.names, point))
    for g in gens:
        if not g.evaluate(point).is_zero():
            raise PointNotOnVariety(f"{g} does not vanish at the given point")
    vectors = {b: [point[b]] for b in base_ctx.names}
    return TruncatedArc.from_vectors(K, vectors, base_ctx.names, n)


def evaluate_jet_point(J: JetIdeal, arc: TruncatedArc, hom: FieldHom | None = None):
    """Values of every ``F_{i,g}`` at ``arc`` (ordered by level, then generator)."""
    if arc.level != J.level:
        raise LevelOutOfRange(f"arc level {arc.level} differs from jet level {J.level}")
    if tuple(arc.names) != tuple(J.base_ctx.names):
        raise ContextMismatch(f"arc variables {arc.names} vs {J.base_ctx.names}")
    if arc.field != J.field:
        if hom is None:
            raise FieldMismatch(f"arc over {arc.field}, ideal over {J.field}: a field hom is required")
        if hom.source != J.field or hom.target != arc.field:
            raise FieldMismatch(f"{hom} does not map {J.field} to {arc.field}")
    elif hom is not None and (hom.source != J.field or hom.target != arc.field):
        raise FieldMismatch(f"{hom} does not map {J.field} to {arc.field}")
    point = arc.jet_assignment()
    return [f.evaluate(point, hom) for f in J.generators()]


def truncate_arc(arc: TruncatedArc, n: int) -> TruncatedArc:
    if n < 0 or n > arc.level:
        raise LevelOutOfRange(f"cannot truncate level {arc.level} to {n}")
    return TruncatedArc(arc.field, n, arc.names, tuple(row[: n + 1] for row in arc.coeffs))


# ---------------------------------------------------------------------------
# iterated jets


class WedgeIdeal:
    """Generators ``F[(i1, i2)][g]``: coefficient of ``t1^i1 t2^i2``."""

    def __init__(self, gens, orders, ctx, F):
        self.gens = tuple(gens)
        self.orders = tuple(orders)
        self.ctx = ctx
        self.base_ctx = self.gens[0].ctx
        self.field = self.gens[0].field
        self.F = dict(F)

    def generators(self):
        n1, n2 = self.orders
        return [f for i1 in range(n1 + 1) for i2 in range(n2 + 1) for f in self.F[(i1, i2)]]

    def ideal(self) -> Ideal:
        return Ideal(self.generators(), self.ctx, self.field)

    def swapped(self) -> dict:
        """Relabel ``x_(i1,i2) -> x_(i2,i1)``; needs equal orders."""
        n1, n2 = self.orders
        if n1 != n2:
            raise ValueError("index swap needs equal orders")
        rename = {}
        for name, (b, (i1, i2)) in zip(self.ctx.names, self.ctx.jet_tags):
            rename[name] = wedge_name(b, i2, i1)
        return {key: [f.embed(self.ctx, rename) for f in row] for key, row in self.F.items()}


def wedge_context(base_ctx: VariableContext, n1: int, n2: int) -> VariableContext:
    names, tags = [], []
    for i1 in range(n1, -1, -1):
        for i2 in range(n2, -1, -1):
            for b in base_ctx.names:
                names.append(wedge_name(b, i1, i2))
                tags.append((b, (i1, i2)))
    return VariableContext(names, tags)


def iterated_jet_ideal(gens, orders) -> WedgeIdeal:
    """Jet ideal in ``t1`` at level ``n1``, then every jet variable in ``t2``."""
    n1, n2 = orders
    if n1 < 0 or n2 < 0:
        raise LevelOutOfRange("orders must be non-negative")
    gens, base_ctx, K = _shared_ring(gens)
    J = jet_ideal(gens, n1)
    wctx = wedge_context(base_ctx, n1, n2)
    assignment = {}
    for name, (b, i1) in zip(J.ctx.names, J.ctx.jet_tags):
        assignment[name] = [Polynomial.variable(wctx, K, wedge_name(b, i1, i2)) for i2 in range(n2 + 1)]
    F = {}
    for i1 in range(n1 + 1):
        cols = [substitute_truncated(f, assignment, n2, wctx) for f in J.F[i1]]
        for i2 in range(n2 + 1):
            F[(i1, i2)] = [c[i2] for c in cols]
    return WedgeIdeal(gens, (n1, n2), wctx, F)


def base_change_ideal(J: JetIdeal, h: FieldHom) -> JetIdeal:
    """Apply ``h`` to every coefficient of every jet generator."""
    if h.source != J.field:
        raise DescriptorMismatch(f"hom source {h.source} is not {J.field}")
    gens = [g.map_coefficients(h) for g in J.gens]
    F = [[f.map_coefficients(h) for f in row] for row in J.F]
    return JetIdeal(gens, J.level, J.ctx, F)
