"""Buchberger's algorithm and the ideal-theoretic decision procedures built on it.

Everything here is exact.  Internally a basis element is a pair
``(lead_monomial, terms)`` with ``terms`` a monic raw term dict; the public
types are :class:`Ideal` and :class:`GroebnerBasis`.
"""

from __future__ import annotations

import heapq
import logging
from contextlib import contextmanager
from contextvars import ContextVar
from itertools import combinations

from .errors import ContextMismatch, StepLimitExceeded, UnitIdeal
from .poly import DEGREVLEX, MonomialOrder, Polynomial, VariableContext, p_add

log = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_STEP_LIMIT",
    "step_limit_scope",
    "Ideal",
    "GroebnerBasis",
    "buchberger_reduced",
    "normal_form",
    "s_polynomial",
    "check_confluence",
    "ideal_member",
    "radical_member",
    "saturate",
    "eliminate",
    "krull_dimension",
    "ideal_equal",
    "intersect",
    "ideal_quotient",
]

DEFAULT_STEP_LIMIT = 200_000
_step_limit: ContextVar[int] = ContextVar("step_limit", default=DEFAULT_STEP_LIMIT)


@contextmanager
def step_limit_scope(limit: int):
    """Override the default pair-reduction cap for the enclosed computations."""
    token = _step_limit.set(limit)
    try:
        yield
    finally:
        _step_limit.reset(token)


class Ideal:
    """Ideal of ``field[ctx]`` given by generators (zero generators dropped)."""

    def __init__(self, gens, ctx: VariableContext | None = None, field=None):
        gens = list(gens)
        if ctx is None or field is None:
            if not gens:
                raise ValueError("an empty ideal needs an explicit context and field")
            ctx = ctx or gens[0].ctx
            field = field or gens[0].field
        for g in gens:
            if g.ctx != ctx or g.field != field:
                raise ContextMismatch(f"generator {g} is not in {field}[{', '.join(ctx.names)}]")
        self.ctx = ctx
        self.field = field
        self.gens = tuple(g for g in gens if not g.is_zero())
        self._gb_cache: dict = {}

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __add__(self, other):
        extra = other.gens if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.gens + tuple(extra), self.ctx, self.field)

    def __contains__(self, f):
        return ideal_member(f, self)

    def groebner(self, order: MonomialOrder = DEGREVLEX, step_limit: int | None = None) -> "GroebnerBasis":
        gb = self._gb_cache.get(order)
        if gb is None:
            gb = buchberger_reduced(self, order, step_limit)
            self._gb_cache[order] = gb
        return gb

    def contains_one(self, step_limit: int | None = None) -> bool:
        return self.groebner(step_limit=step_limit).is_unit()


class GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` under ``order``."""

    def __init__(self, ideal: Ideal, order: MonomialOrder, elements, steps: int = 0):
        self.ideal = ideal
        self.order = order
        self._elements = elements
        self.steps = steps
        ctx, K = ideal.ctx, ideal.field
        self.basis = [Polynomial(ctx, K, t) for _, t in elements]

    @property
    def leading_monomials(self):
        return [lm for lm, _ in self._elements]

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(p.to_str(self.order) for p in self.basis)}])"

    def is_unit(self) -> bool:
        return len(self._elements) == 1 and not any(self._elements[0][0])

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def strings(self):
        return [p.to_str(self.order) for p in self.basis]


# ---------------------------------------------------------------------------
# raw kernels


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _monic(K, terms, key):
    lm = max(terms, key=key)
    lc = terms[lm]
    if not K.is_one(lc):
        inv = K.inv(lc)
        terms = {m: K.mul(c, inv) for m, c in terms.items()}
    return lm, terms


def _reduce(K, terms: dict, G, key) -> dict:
    """Full reduction of ``terms`` by the monic elements ``G``."""
    p = dict(terms)
    r = {}
    sub, mul, is_zero = K.sub, K.mul, K.is_zero
    zero = K.zero()
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, g in G:
            if _divides(lm, m):
                break
        else:
            r[m] = c
            del p[m]
            continue
        q = tuple(x - y for x, y in zip(m, lm))
        for mg, cg in g.items():
            mm = tuple(x + y for x, y in zip(mg, q))
            v = sub(p.get(mm, zero), mul(c, cg))
            if is_zero(v):
                p.pop(mm, None)
            else:
                p[mm] = v
    return r


def _spoly(K, f, g):
    (lf, tf), (lg, tg) = f, g
    lcm = _lcm(lf, lg)
    qf = tuple(x - y for x, y in zip(lcm, lf))
    qg = tuple(x - y for x, y in zip(lcm, lg))
    a = {tuple(x + y for x, y in zip(m, qf)): c for m, c in tf.items()}
    b = {tuple(x + y for x, y in zip(m, qg)): K.neg(c) for m, c in tg.items()}
    return p_add(K, a, b)


def _buchberger(K, polys, key, step_limit):
    G = []
    for t in polys:
        t = _reduce(K, t, G, key) if G else dict(t)
        if t:
            G.append(_monic(K, t, key))
    if any(not any(lm) for lm, _ in G):
        return [((0,) * len(G[0][0]), {(0,) * len(G[0][0]): K.one()})], 0

    pending = set()
    heap = []

    def push(i, j):
        lcm = _lcm(G[i][0], G[j][0])
        pending.add((i, j))
        heapq.heappush(heap, (key(lcm), i, j))

    for j in range(len(G)):
        for i in range(j):
            push(i, j)

    steps = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = G[i][0], G[j][0]
        if _coprime(li, lj):
            continue
        lcm = _lcm(li, lj)
        skip = False
        for k in range(len(G)):
            if k == i or k == j:
                continue
            if _divides(G[k][0], lcm):
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    skip = True
                    break
        if skip:
            continue
        steps += 1
        if steps > step_limit:
            raise StepLimitExceeded(f"more than {step_limit} S-pair reductions")
        h = _reduce(K, _spoly(K, G[i], G[j]), G, key)
        if not h:
            continue
        G.append(_monic(K, h, key))
        n = len(G) - 1
        if not any(G[n][0]):
            return [G[n]], steps
        for k in range(n):
            push(k, n)
    return _interreduce(K, G, key), steps


def _interreduce(K, G, key):
    G = sorted(G, key=lambda e: key(e[0]))
    minimal = []
    for lm, t in G:
        if not any(_divides(lm2, lm) for lm2, _ in minimal):
            minimal.append((lm, t))
    out = []
    for k, (lm, t) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        tail = {m: c for m, c in t.items() if m != lm}
        tail = _reduce(K, tail, others, key)
        tail[lm] = t[lm]
        out.append(_monic(K, tail, key))
    out.sort(key=lambda e: key(e[0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# public operations


def buchberger_reduced(
    I: Ideal, order: MonomialOrder = DEGREVLEX, step_limit: int | None = None
) -> GroebnerBasis:
    """Reduced Gröbner basis, normal selection strategy with index tie-break."""
    if step_limit is None:
        step_limit = _step_limit.get()
    K = I.field
    if not I.gens:
        return GroebnerBasis(I, order, [], 0)
    elements, steps = _buchberger(K, [g.terms for g in I.gens], order.key, step_limit)
    log.debug("groebner: %d generators -> %d elements in %d steps", len(I.gens), len(elements), steps)
    return GroebnerBasis(I, order, elements, steps)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ctx != G.ideal.ctx or f.field != G.ideal.field:
        raise ContextMismatch("polynomial and basis live in different rings")
    return Polynomial(f.ctx, f.field, _reduce(f.field, f.terms, G._elements, G.order.key))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    K = f.field
    a = _monic(K, f.terms, order.key)
    b = _monic(K, g.terms, order.key)
    return Polynomial(f.ctx, K, _spoly(K, a, b))


def check_confluence(G: GroebnerBasis) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    K = G.ideal.field
    els = G._elements
    for a, b in combinations(els, 2):
        if _reduce(K, _spoly(K, a, b), els, G.order.key):
            return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    K = G.ideal.field
    for k, (lm, t) in enumerate(G._elements):
        if not K.is_one(t[lm]):
            return False
        for j, (lm2, _) in enumerate(G._elements):
            if j != k and any(_divides(lm2, m) for m in t):
                return False
    return True


def ideal_member(f: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX, step_limit=None) -> bool:
    if f.ctx != I.ctx or f.field != I.field:
        raise ContextMismatch("polynomial and ideal live in different rings")
    if f.is_zero():
        return True
    return I.groebner(order, step_limit).contains(f)


def _with_fresh(I: Ideal, front: bool):
    w = I.ctx.fresh_name("w")
    ctx2 = I.ctx.extended([w], front=front)
    gens = [g.embed(ctx2) for g in I.gens]
    return ctx2, w, gens


def radical_member(f: Polynomial, I: Ideal, step_limit=None) -> bool:
    """Rabinowitsch: ``f`` in rad(I) iff ``1`` in ``I + (1 - w f)``."""
    if f.ctx != I.ctx or f.field != I.field:
        raise ContextMismatch("polynomial and ideal live in different rings")
    if f.is_zero():
        return True
    ctx2, w, gens = _with_fresh(I, front=False)
    wv = Polynomial.variable(ctx2, I.field, w)
    J = Ideal(gens + [1 - wv * f.embed(ctx2)], ctx2, I.field)
    return J.contains_one(step_limit)


def saturate(I: Ideal, f: Polynomial, step_limit=None) -> Ideal:
    """``I : f^inf`` by eliminating ``w`` from ``I + (1 - w f)``."""
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.ctx != I.ctx or f.field != I.field:
        raise ContextMismatch("polynomial and ideal live in different rings")
    ctx2, w, gens = _with_fresh(I, front=True)
    wv = Polynomial.variable(ctx2, I.field, w)
    J = Ideal(gens + [1 - wv * f.embed(ctx2)], ctx2, I.field)
    order = MonomialOrder("block", outer=[0])
    G = buchberger_reduced(J, order, step_limit)
    kept = [g.restrict(I.ctx) for g in G.basis if not any(m[0] for m in g.terms)]
    return Ideal(kept, I.ctx, I.field)


def eliminate(I: Ideal, names, step_limit=None) -> Ideal:
    """``I`` intersected with the subring free of ``names`` (same context)."""
    names = list(names)
    idx = [I.ctx.index(n) for n in names]
    if not names:
        return Ideal(I.groebner(step_limit=step_limit).basis, I.ctx, I.field)
    order = MonomialOrder("block", outer=idx)
    G = buchberger_reduced(I, order, step_limit)
    kept = [g for g in G.basis if not any(m[k] for m in g.terms for k in idx)]
    return Ideal(kept, I.ctx, I.field)


def krull_dimension(I: Ideal, step_limit=None) -> int:
    """Largest set of variables independent modulo the initial ideal."""
    G = I.groebner(step_limit=step_limit)
    if G.is_unit():
        raise UnitIdeal("the ideal contains 1")
    n = len(I.ctx)
    supports = []
    for lm in G.leading_monomials:
        mask = 0
        for k, e in enumerate(lm):
            if e:
                mask |= 1 << k
        supports.append(mask)
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            mask = 0
            for k in subset:
                mask |= 1 << k
            if all(s & ~mask for s in supports):
                return size
    return 0


def ideal_equal(I: Ideal, J: Ideal, step_limit=None) -> bool:
    """Mutual generator membership."""
    return all(ideal_member(g, J, step_limit=step_limit) for g in I.gens) and all(
        ideal_member(g, I, step_limit=step_limit) for g in J.gens
    )


def intersect(I: Ideal, J: Ideal, step_limit=None) -> Ideal:
    """``I ∩ J`` by eliminating ``s`` from ``s I + (1 - s) J``."""
    if I.ctx != J.ctx or I.field != J.field:
        raise ContextMismatch("ideals live in different rings")
    s = I.ctx.fresh_name("s")
    ctx2 = I.ctx.extended([s], front=True)
    sv = Polynomial.variable(ctx2, I.field, s)
    gens = [sv * g.embed(ctx2) for g in I.gens] + [(1 - sv) * g.embed(ctx2) for g in J.gens]
    if not gens:
        return Ideal([], I.ctx, I.field)
    G = buchberger_reduced(Ideal(gens, ctx2, I.field), MonomialOrder("block", outer=[0]), step_limit)
    kept = [g.restrict(I.ctx) for g in G.basis if not any(m[0] for m in g.terms)]
    return Ideal(kept, I.ctx, I.field)


def ideal_quotient(I: Ideal, f: Polynomial, step_limit=None) -> Ideal:
    """``I : f = {g : g f in I}``, i.e. ``(I ∩ (f)) / f``."""
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    meet = intersect(I, Ideal([f]), step_limit)
    K = I.field
    gens = []
    for g in meet.gens:
        q, r = _divide_exact(K, g, f)
        if r:
            raise ArithmeticError("intersection element not divisible by f")
        gens.append(q)
    return Ideal(gens, I.ctx, I.field)


def _divide_exact(K, g: Polynomial, f: Polynomial):
    key = DEGREVLEX.key
    lm, t = _monic(K, f.terms, key)
    lc = f.terms[lm]
    p = dict(g.terms)
    q: dict = {}
    while p:
        m = max(p, key=key)
        if not _divides(lm, m):
            return None, True
        c = p[m]
        e = tuple(x - y for x, y in zip(m, lm))
        q[e] = K.div(c, lc)
        shifted = {tuple(x + y for x, y in zip(mm, e)): K.neg(K.mul(cc, c)) for mm, cc in t.items()}
        p = p_add(K, p, shifted)
    return Polynomial(g.ctx, K, q), False
