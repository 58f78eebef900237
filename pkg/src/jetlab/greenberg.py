"""Hensel lifting of truncated arcs and brute-force Greenberg scans over F_p.

Two level conventions meet here.  Jet level ``n`` means "modulo t^(n+1)";
the Greenberg modulus ``nu`` means "modulo t^nu", so ``nu = n + 1``.  All
public functions in this module take ``nu`` where the statement is about
images in ``X(F_q[t]/t^nu)`` and jet levels everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import ceil

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    ContextMismatch,
    FieldMismatch,
    LevelOutOfRange,
    ResidualNonzero,
    SingularCenter,
)
from .fields import FieldElement, PrimeField, is_prime
from .jets import TruncatedArc, jet_ideal, jet_name, truncate_arc
from .poly import Polynomial

__all__ = [
    "DEFAULT_BUDGET",
    "LiftProblem",
    "GreenbergScanReport",
    "hensel_lift",
    "enumerate_jets",
    "image_truncation",
    "greenberg_scan",
    "smooth_center_lifts",
    "nu_to_level",
    "level_to_nu",
]

DEFAULT_BUDGET = 10**7


def nu_to_level(nu: int) -> int:
    return nu - 1


def level_to_nu(n: int) -> int:
    return n + 1


def _ring(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ctx, K = gens[0].ctx, gens[0].field
    for g in gens:
        if g.ctx != ctx or g.field != K:
            raise ContextMismatch("generators live in different rings")
    return gens, ctx, K


# ---------------------------------------------------------------------------
# Hensel lifting


@dataclass
class LiftProblem:
    """Lift ``arc`` (exact modulo ``t^nu``) to level ``target``.

    ``solve`` names one base variable per generator; their Jacobian minor
    must be a unit at the residue point.  Coefficients of the remaining
    variables above the input are taken from ``arc`` (zero-padded).
    """

    gens: list
    arc: TruncatedArc
    nu: int
    target: int
    solve: tuple

    def __post_init__(self):
        self.gens = list(self.gens)
        self.solve = tuple(self.solve)
        if len(self.solve) != len(self.gens):
            raise ValueError(f"{len(self.gens)} generators need as many solved variables, got {self.solve}")
        if self.nu < 1:
            raise LevelOutOfRange("nu must be at least 1")
        if self.target < self.nu - 1:
            raise LevelOutOfRange(f"target level {self.target} is below the input level {self.nu - 1}")


def _solve_linear(K, M, b):
    n = len(M)
    A = [list(row) + [b[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not K.is_zero(A[r][col])), None)
        if piv is None:
            raise SingularCenter("Jacobian minor is singular at the residue point")
        A[col], A[piv] = A[piv], A[col]
        inv = K.inv(A[col][col])
        A[col] = [K.mul(x, inv) for x in A[col]]
        for r in range(n):
            if r != col and not K.is_zero(A[r][col]):
                f = A[r][col]
                A[r] = [K.sub(x, K.mul(f, y)) for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def hensel_lift(problem: LiftProblem) -> TruncatedArc:
    """Newton-Hensel lifting on the solved variables.

    At every level ``k >= 1`` the jet equation ``F_k`` is affine in the
    level-``k`` coefficients with the Jacobian at the residue point as
    linear part, so each step is one exact linear solve against that fixed
    matrix (Newton's method with the derivative frozen at the centre).
    """
    gens, base_ctx, K = _ring(problem.gens)
    arc = problem.arc
    if arc.field != K:
        raise FieldMismatch(f"arc over {arc.field}, equations over {K}")
    if tuple(arc.names) != tuple(base_ctx.names):
        raise ContextMismatch(f"arc variables {arc.names} vs {base_ctx.names}")
    nu, N = problem.nu, problem.target
    top = max(N, nu - 1)
    solved = set(problem.solve)
    for v in solved:
        base_ctx.index(v)
    coeffs = {}
    for name, row in zip(arc.names, arc.coeffs):
        vec = list(row[: top + 1]) + [K.zero()] * (top + 1 - len(row))
        if name in solved:
            vec[nu:] = [K.zero()] * (top + 1 - nu)
        coeffs[name] = vec

    J = jet_ideal(gens, top)

    def point():
        return {jet_name(n, i): FieldElement(K, c) for n, vec in coeffs.items() for i, c in enumerate(vec)}

    pt = point()
    for i in range(nu):
        for f in J.F[i]:
            if not f.evaluate(pt).is_zero():
                raise ResidualNonzero(f"input arc does not satisfy the equations modulo t^{nu}")

    residue = {n: FieldElement(K, vec[0]) for n, vec in coeffs.items()}
    M = [[g.derivative(v).evaluate(residue).value for v in problem.solve] for g in gens]
    if not _det_nonzero(K, M):
        raise SingularCenter(f"Jacobian minor on {problem.solve} vanishes at the residue point")

    for k in range(max(nu, 1), N + 1):
        pt = point()
        rhs = [K.neg(f.evaluate(pt).value) for f in J.F[k]]
        sol = _solve_linear(K, M, rhs)
        for v, c in zip(problem.solve, sol):
            coeffs[v][k] = c
    out = TruncatedArc(K, top, tuple(base_ctx.names), tuple(tuple(coeffs[n]) for n in base_ctx.names))
    return truncate_arc(out, N) if N < top else out


def _det_nonzero(K, M) -> bool:
    try:
        _solve_linear(K, M, [K.zero()] * len(M))
    except SingularCenter:
        return False
    return True


# ---------------------------------------------------------------------------
# enumeration over F_p


def _prime_field(gens, q):
    if not is_prime(q):
        raise FieldMismatch(f"only prime fields are supported, got q={q}")
    K = gens[0].field
    if isinstance(K, PrimeField) and K.p != q:
        raise FieldMismatch(f"equations over {K} cannot be enumerated over F_{q}")
    return PrimeField(q)


def _check_budget(q, nvars, n, budget):
    size = q ** (nvars * (n + 1))
    if size > budget:
        raise BudgetExceeded(f"{q}^{nvars * (n + 1)} = {size} grid points exceed the budget {budget}")


def _grid(q, d):
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q**d, dtype=np.int64)
    weights = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // weights[None, :]) % q


def _columns(base_names, level):
    return [jet_name(b, i) for i in range(level + 1) for b in base_names]


def _levelwise(J, q, n):
    """Point arrays for every level ``0..n``; columns ordered (level, base)."""
    names = J.base_ctx.names
    d = len(names)
    grid = _grid(q, d)
    out = []
    prev = None
    for i in range(n + 1):
        if prev is None:
            cand = grid
        else:
            cand = np.hstack([np.repeat(prev, len(grid), axis=0), np.tile(grid, (len(prev), 1))])
        cand = np.ascontiguousarray(cand, dtype=np.int64)
        exps, coeffs, offsets = kernels.compile_mod_p(J.F[i], _columns(names, i), q)
        if len(coeffs) or len(offsets) > 1:
            mask = kernels.common_zeros(exps, coeffs, offsets, cand, q).astype(bool)
            cand = cand[mask]
        out.append(cand)
        prev = cand
    return out


def _grid_scan(J, q, n, impl=None):
    impl = impl or kernels
    names = J.base_ctx.names
    cols = _columns(names, n)
    exps, coeffs, offsets = kernels.compile_mod_p(J.generators(), cols, q)
    hits = impl.grid_zeros(exps, coeffs, offsets, len(cols), q)
    weights = q ** np.arange(len(cols) - 1, -1, -1, dtype=np.int64)
    return (np.asarray(hits, dtype=np.int64)[:, None] // weights[None, :]) % q


def _rows_to_arcs(rows, names, n, F):
    d = len(names)
    arcs = set()
    for row in rows.tolist():
        vecs = tuple(tuple(row[i * d + j] for i in range(n + 1)) for j in range(d))
        arcs.add(TruncatedArc(F, n, tuple(names), vecs))
    return arcs


def enumerate_jets(gens, q: int, n: int, budget: int = DEFAULT_BUDGET, strategy: str = "levelwise"):
    """All points of the level-``n`` jet scheme over ``F_q`` (``q`` prime).

    ``levelwise`` extends level-``(i-1)`` points by every value of the new
    coefficients; ``grid`` evaluates every jet equation on the whole grid.
    Both are exhaustive and return the same set.
    """
    gens, base_ctx, _ = _ring(gens)
    if n < 0:
        raise LevelOutOfRange("jet level must be non-negative")
    F = _prime_field(gens, q)
    _check_budget(q, len(base_ctx), n, budget)
    J = jet_ideal(gens, n)
    if strategy == "levelwise":
        rows = _levelwise(J, q, n)[-1]
    elif strategy == "grid":
        rows = _grid_scan(J, q, n)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return _rows_to_arcs(rows, base_ctx.names, n, F)


def image_truncation(S, n: int):
    """Truncations of the arcs in ``S`` to level ``n``, deduplicated."""
    S = list(S)
    if not S:
        return set()
    levels = {a.level for a in S}
    if len(levels) != 1:
        raise LevelOutOfRange(f"mixed levels {sorted(levels)}")
    return {truncate_arc(a, n) for a in S}


@dataclass
class GreenbergScanReport:
    """Image sizes ``|im(X(F_q[t]/t^(m+1)) -> X(F_q[t]/t^nu))|`` for each ``m``."""

    q: int
    nu: int
    m_max: int
    levels: list
    sizes: list
    stabilization_level: int | None
    a_candidate: int | None
    images: dict = dc_field(default_factory=dict, repr=False)

    @property
    def target_level(self) -> int:
        return nu_to_level(self.nu)

    @property
    def monotone(self) -> bool:
        return all(a >= b for a, b in zip(self.sizes, self.sizes[1:]))

    @property
    def stabilized(self) -> bool:
        return self.stabilization_level is not None

    def summary(self) -> str:
        pairs = ", ".join(f"m={m}: {s}" for m, s in zip(self.levels, self.sizes))
        if self.stabilized:
            stab = (
                f"stable from m={self.stabilization_level} "
                f"(a*={self.a_candidate}: level a*nu-1={self.a_candidate * self.nu - 1})"
            )
        else:
            stab = "stabilization not observed"
        return f"q={self.q} nu={self.nu} (jet level {self.target_level}); {pairs}; {stab}"

    def to_dict(self):
        return {
            "q": self.q,
            "nu": self.nu,
            "target_level": self.target_level,
            "m_max": self.m_max,
            "levels": list(self.levels),
            "sizes": list(self.sizes),
            "stabilization_level": self.stabilization_level,
            "a_candidate": self.a_candidate,
            "monotone": self.monotone,
        }


def greenberg_scan(gens, q: int, nu: int, m_max: int, budget: int = DEFAULT_BUDGET) -> GreenbergScanReport:
    """Empirical Greenberg scan; ``a*`` is evidence, not a proof."""
    gens, base_ctx, _ = _ring(gens)
    if nu < 1:
        raise LevelOutOfRange("nu must be at least 1")
    target = nu_to_level(nu)
    if m_max < target:
        raise LevelOutOfRange(f"m_max={m_max} is below the target level {target}")
    F = _prime_field(gens, q)
    _check_budget(q, len(base_ctx), m_max, budget)
    J = jet_ideal(gens, m_max)
    per_level = _levelwise(J, q, m_max)
    d = len(base_ctx)
    width = d * (target + 1)
    levels, sizes, images = [], [], {}
    for m in range(target, m_max + 1):
        img = np.unique(per_level[m][:, :width], axis=0) if len(per_level[m]) else per_level[m][:, :width]
        levels.append(m)
        sizes.append(int(len(img)))
        images[m] = _rows_to_arcs(img, base_ctx.names, target, F)
    stab = None
    for k in range(len(sizes) - 1):
        if all(s == sizes[k] for s in sizes[k:]):
            stab = levels[k]
            break
    a = None if stab is None else ceil((stab + 1) / nu)
    return GreenbergScanReport(q, nu, m_max, levels, sizes, stab, a, images)


def _pick_solve(gens, base_ctx, residue):
    K = gens[0].field
    for combo in combinations(base_ctx.names, len(gens)):
        M = [[g.derivative(v).evaluate(residue).value for v in combo] for g in gens]
        if _det_nonzero(K, M):
            return combo
    return None


def smooth_center_lifts(gens, q: int, nu: int, target: int):
    """Hensel lifts to ``target`` of every level-``(nu-1)`` F_q-point whose
    residue point has a unit Jacobian minor.  Returns ``(point, lift)`` pairs."""
    gens = reduce_mod_p(gens, q)
    base_ctx = gens[0].ctx
    level = nu_to_level(nu)
    out = []
    for pt in sorted(enumerate_jets(gens, q, level), key=lambda a: a.coeffs):
        solve = _pick_solve(gens, base_ctx, pt.residue_point())
        if solve is None:
            continue
        lift = hensel_lift(LiftProblem(gens, pt, nu, target, solve))
        out.append((pt, lift))
    return out


def reduce_mod_p(gens, q: int):
    """Map equations over QQ (denominators prime to ``q``) or F_q into ``F_q``."""
    gens, _, K = _ring(gens)
    F = _prime_field(gens, q)
    if K == F:
        return gens
    out = []
    for g in gens:
        terms = {}
        for m, c in g.terms.items():
            v = kernels.coefficient_mod_p(K, c, q)
            if v:
                terms[m] = v
        out.append(Polynomial(g.ctx, F, terms))
    return out
