"""Jacobian matrices and the non-smooth locus by the Jacobian criterion."""

from __future__ import annotations

from itertools import combinations

from .errors import BadCodim, ContextMismatch
from .groebner import Ideal
from .poly import Polynomial


class JacobianMatrix:
    """Rows are generators, columns are the context variables."""

    def __init__(self, gens, entries):
        self.gens = tuple(gens)
        self.ctx = self.gens[0].ctx
        self.field = self.gens[0].field
        self.entries = tuple(tuple(row) for row in entries)

    @property
    def shape(self):
        return len(self.entries), len(self.ctx)

    def __getitem__(self, idx):
        g, v = idx
        if isinstance(v, str):
            v = self.ctx.index(v)
        return self.entries[g][v]

    def strings(self):
        return [[str(e) for e in row] for row in self.entries]

    def minors(self, size: int):
        """All ``size x size`` minors, rows and columns in index order."""
        rows, cols = self.shape
        for rs in combinations(range(rows), size):
            for cs in combinations(range(cols), size):
                yield _det([[self.entries[r][c] for c in cs] for r in rs])

    def evaluate(self, point):
        return [[e.evaluate(point) for e in row] for row in self.entries]


def _det(m):
    # cofactor expansion; minors here are at most a few rows
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if m[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _det(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] * 0
    return total


def jacobian_matrix(gens) -> JacobianMatrix:
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ctx, K = gens[0].ctx, gens[0].field
    for g in gens:
        if g.ctx != ctx or g.field != K:
            raise ContextMismatch("generators live in different rings")
    return JacobianMatrix(gens, [[g.derivative(v) for v in ctx.names] for g in gens])


def nonsmooth_ideal(gens, codim: int = 1) -> Ideal:
    """``gens`` together with every nonzero ``codim``-minor of the Jacobian."""
    gens = list(gens)
    jac = jacobian_matrix(gens)
    if codim < 1 or codim > min(len(gens), len(jac.ctx)):
        raise BadCodim(f"codimension {codim} outside 1..{min(len(gens), len(jac.ctx))}")
    extra = []
    seen = set()
    for minor in jac.minors(codim):
        if minor.is_zero() or minor in seen:
            continue
        seen.add(minor)
        extra.append(minor)
    return Ideal(gens + extra, jac.ctx, jac.field)


def jacobian_minor_unit(gens, solve, point) -> bool:
    """Whether the square minor on variables ``solve`` is nonzero at ``point``."""
    jac = jacobian_matrix(gens)
    cols = [jac.ctx.index(v) for v in solve]
    sub = [[jac.entries[r][c] for c in cols] for r in range(len(gens))]
    det = _det(sub) if sub else Polynomial.constant(jac.ctx, jac.field, 1)
    return not det.evaluate(point).is_zero()
