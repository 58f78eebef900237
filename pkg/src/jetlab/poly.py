"""Sparse multivariate polynomials over the exact fields of :mod:`jetlab.fields`.

Terms live in a plain ``dict`` mapping exponent tuples to raw field payloads.
The module-level ``p_*`` helpers work directly on such dicts and are what the
Gröbner engine uses; :class:`Polynomial` is the immutable public wrapper.
"""

from __future__ import annotations

import re
from collections import defaultdict
from functools import lru_cache

from .errors import ContextMismatch, MissingAssignment, ParseError, UnknownVariable
from .fields import Field, FieldElement, FieldHom, join_terms, term_body

__all__ = [
    "VariableContext",
    "MonomialOrder",
    "Polynomial",
    "poly_mul",
    "partial_derivative",
    "substitute_truncated",
    "parse_polynomial",
    "parse_constant",
    "parse_univariate",
]


class VariableContext:
    """Ordered variable names, optionally tagged as jet variables.

    ``jet_tags[k]`` is ``None`` for a plain variable or ``(base, level)``
    where ``level`` is an int (or a pair for iterated jets).
    """

    __slots__ = ("names", "jet_tags", "_index", "_hash")

    def __init__(self, names, jet_tags=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ContextMismatch(f"duplicate variable names: {dup}")
        if jet_tags is None:
            jet_tags = (None,) * len(names)
        jet_tags = tuple(jet_tags)
        if len(jet_tags) != len(names):
            raise ValueError("one jet tag per variable")
        real = [t for t in jet_tags if t is not None]
        if len(set(real)) != len(real):
            raise ContextMismatch("jet tags must be unique")
        self.names = names
        self.jet_tags = jet_tags
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((names, jet_tags))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, VariableContext)
            and self.names == other.names
            and self.jet_tags == other.jet_tags
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VariableContext({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def fresh_name(self, stem: str = "w", avoid=()) -> str:
        taken = set(self.names) | set(avoid)
        if stem not in taken:
            return stem
        k = 0
        while f"{stem}_{k}" in taken:
            k += 1
        return f"{stem}_{k}"

    def extended(self, new_names, front: bool = False) -> "VariableContext":
        new_names = tuple(new_names)
        if front:
            return VariableContext(new_names + self.names, (None,) * len(new_names) + self.jet_tags)
        return VariableContext(self.names + new_names, self.jet_tags + (None,) * len(new_names))


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Lex or degrevlex, optionally split into two blocks for elimination.

    ``priority`` lists variable indices from most to least significant
    (default: context order).  A block order compares the ``outer`` indices
    first by degrevlex, then the rest by ``inner``.
    """

    def __init__(self, kind: str = "degrevlex", priority=None, outer=None, inner: str = "degrevlex"):
        if kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and not outer:
            raise ValueError("block order needs a non-empty outer block")
        self.kind = kind
        self.priority = None if priority is None else tuple(priority)
        self.outer = None if outer is None else tuple(sorted(outer))
        self.inner = inner
        self.key = lru_cache(maxsize=1 << 16)(self._make_key())

    def _make_key(self):
        prio = self.priority
        if self.kind == "block":
            outer = self.outer
            outer_set = set(outer)
            inner_kind = self.inner

            def key(e):
                rest = [i for i in (prio or range(len(e))) if i not in outer_set]
                o = tuple(e[i] for i in outer)
                r = tuple(e[i] for i in rest)
                return (_degrevlex(o), _lex(r) if inner_kind == "lex" else _degrevlex(r))

            return key
        base = _lex if self.kind == "lex" else _degrevlex
        if prio is None:
            return base
        return lambda e: base(tuple(e[i] for i in prio))

    def _ident(self):
        return (self.kind, self.priority, self.outer, self.inner)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, outer={self.outer}, inner={self.inner})"
        return f"MonomialOrder({self.kind})"

    @classmethod
    def elimination(cls, ctx: VariableContext, names, inner: str = "degrevlex") -> "MonomialOrder":
        return cls("block", outer=[ctx.index(n) for n in names], inner=inner)


def _lex(e):
    return e


def _degrevlex(e):
    return (sum(e), tuple(-x for x in reversed(e)))


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


# ---------------------------------------------------------------------------
# raw term-dict helpers


def p_add(K, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    add, is_zero = K.add, K.is_zero
    for m, c in b.items():
        if m in out:
            s = add(out[m], c)
            if is_zero(s):
                del out[m]
            else:
                out[m] = s
        else:
            out[m] = c
    return out


def p_neg(K, a: dict) -> dict:
    neg = K.neg
    return {m: neg(c) for m, c in a.items()}


def p_sub(K, a: dict, b: dict) -> dict:
    return p_add(K, a, p_neg(K, b))


def p_mul(K, a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    add, mul, is_zero = K.add, K.mul, K.is_zero
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            c = mul(ca, cb)
            if m in out:
                out[m] = add(out[m], c)
            else:
                out[m] = c
    return {m: c for m, c in out.items() if not is_zero(c)}


def p_scale(K, a: dict, c) -> dict:
    if K.is_zero(c):
        return {}
    if K.is_one(c):
        return dict(a)
    mul = K.mul
    return {m: mul(x, c) for m, x in a.items()}


def p_derivative(K, a: dict, k: int) -> dict:
    out = {}
    for m, c in a.items():
        e = m[k]
        if e == 0:
            continue
        c = K.mul(c, K.from_int(e))
        if K.is_zero(c):
            continue
        m2 = list(m)
        m2[k] -= 1
        out[tuple(m2)] = c
    return out


def p_evaluate(K, terms: dict, values, T: Field, cmap):
    """Evaluate at raw ``values`` in ``T``; ``cmap`` sends K-payloads to T."""
    acc = T.zero()
    cache: dict = {}
    for m, c in terms.items():
        t = cmap(c)
        for k, e in enumerate(m):
            if e:
                key = (k, e)
                pw = cache.get(key)
                if pw is None:
                    pw = cache[key] = T.pow(values[k], e)
                t = T.mul(t, pw)
        acc = T.add(acc, t)
    return acc


# ---------------------------------------------------------------------------
# Polynomial


class Polynomial:
    """Immutable sparse polynomial over ``field`` in the variables of ``ctx``."""

    __slots__ = ("ctx", "field", "terms", "_hash")

    def __init__(self, ctx: VariableContext, field: Field, terms=None):
        self.ctx = ctx
        self.field = field
        self.terms = {} if terms is None else terms
        self._hash = None

    # construction ------------------------------------------------------------
    @classmethod
    def constant(cls, ctx, field, c):
        v = field.coerce(c)
        if field.is_zero(v):
            return cls(ctx, field, {})
        return cls(ctx, field, {(0,) * len(ctx): v})

    @classmethod
    def variable(cls, ctx, field, name):
        k = ctx.index(name)
        e = [0] * len(ctx)
        e[k] = 1
        return cls(ctx, field, {tuple(e): field.one()})

    @classmethod
    def from_terms(cls, ctx, field, items):
        """Build from ``(exponents, coefficient)`` pairs, summing duplicates."""
        out: dict = {}
        for m, c in items:
            m = tuple(m)
            if len(m) != len(ctx):
                raise ContextMismatch("exponent vector length differs from the context size")
            c = field.coerce(c) if not isinstance(c, FieldElement) else c.value
            out = p_add(field, out, {m: c}) if not field.is_zero(c) else out
        return cls(ctx, field, out)

    def _like(self, terms):
        return Polynomial(self.ctx, self.field, terms)

    def _coerce(self, other) -> dict:
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{other.ctx} vs {self.ctx}")
            if other.field != self.field:
                raise ContextMismatch(f"field {other.field} vs {self.field}")
            return other.terms
        return Polynomial.constant(self.ctx, self.field, other).terms

    # arithmetic ------------------------------------------------------------------
    def __add__(self, other):
        return self._like(p_add(self.field, self.terms, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._like(p_sub(self.field, self.terms, self._coerce(other)))

    def __rsub__(self, other):
        return self._like(p_sub(self.field, self._coerce(other), self.terms))

    def __neg__(self):
        return self._like(p_neg(self.field, self.terms))

    def __mul__(self, other):
        return self._like(p_mul(self.field, self.terms, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = other.value if isinstance(other, FieldElement) else self.field.coerce(other)
        return self._like(p_scale(self.field, self.terms, self.field.inv(c)))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.constant(self.ctx, self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            try:
                return self.terms == self._coerce(other)
            except Exception:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, self.field, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # queries --------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, exponents) -> FieldElement:
        return FieldElement(self.field, self.terms.get(tuple(exponents), self.field.zero()))

    def constant_term(self) -> FieldElement:
        return self.coefficient((0,) * len(self.ctx))

    def variables(self) -> list:
        used = [False] * len(self.ctx)
        for m in self.terms:
            for k, e in enumerate(m):
                if e:
                    used[k] = True
        return [n for n, u in zip(self.ctx.names, used) if u]

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        m = max(self.terms, key=order.key)
        return m, FieldElement(self.field, self.terms[m])

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # transformations --------------------------------------------------------------
    def derivative(self, var: str) -> "Polynomial":
        return self._like(p_derivative(self.field, self.terms, self.ctx.index(var)))

    def map_coefficients(self, hom: FieldHom) -> "Polynomial":
        if hom.source != self.field:
            from .errors import DescriptorMismatch

            raise DescriptorMismatch(f"hom source {hom.source} is not {self.field}")
        T = hom.target
        out = {}
        for m, c in self.terms.items():
            v = hom.apply_raw(c)
            if not T.is_zero(v):
                out[m] = v
        return Polynomial(self.ctx, T, out)

    def embed(self, ctx: VariableContext, rename=None) -> "Polynomial":
        """Move into ``ctx``, mapping each used variable by name (or ``rename``)."""
        rename = rename or {}
        idx = [ctx.index(rename.get(n, n)) for n in self.ctx.names]
        zero = [0] * len(ctx)
        out = {}
        for m, c in self.terms.items():
            e = list(zero)
            for k, x in enumerate(m):
                if x:
                    e[idx[k]] += x
            out[tuple(e)] = c
        return Polynomial(ctx, self.field, out)

    def restrict(self, ctx: VariableContext) -> "Polynomial":
        """Inverse of :meth:`embed` for polynomials free of the dropped variables."""
        keep = [self.ctx.index(n) for n in ctx.names]
        keep_set = set(keep)
        out = {}
        for m, c in self.terms.items():
            if any(e for k, e in enumerate(m) if k not in keep_set):
                raise ContextMismatch("polynomial uses variables outside the target context")
            out[tuple(m[k] for k in keep)] = c
        return Polynomial(ctx, self.field, out)

    def evaluate(self, point, hom: FieldHom | None = None) -> FieldElement:
        """Evaluate at ``point`` (name -> element); ``hom`` maps coefficients."""
        T = hom.target if hom is not None else self.field
        cmap = hom.apply_raw if hom is not None else (lambda c: c)
        values = []
        for n in self.ctx.names:
            if n not in point:
                if any(m[self.ctx.index(n)] for m in self.terms):
                    raise MissingAssignment(f"no value for {n!r}")
                values.append(T.zero())
                continue
            v = point[n]
            values.append(T.coerce(v))
        return FieldElement(T, p_evaluate(self.field, self.terms, values, T, cmap))

    def substitute(self, mapping) -> "Polynomial":
        """Substitute polynomials (in a common context) for variables."""
        target = None
        for v in mapping.values():
            if isinstance(v, Polynomial):
                target = v
                break
        ctx = target.ctx if target is not None else self.ctx
        K = self.field
        images = []
        for n in self.ctx.names:
            if n in mapping:
                v = mapping[n]
                images.append(v if isinstance(v, Polynomial) else Polynomial.constant(ctx, K, v))
            else:
                images.append(Polynomial.variable(ctx, K, n))
        out = Polynomial(ctx, K, {})
        for m, c in self.terms.items():
            t = Polynomial.constant(ctx, K, FieldElement(K, c))
            for k, e in enumerate(m):
                if e:
                    t = t * images[k] ** e
            out = out + t
        return out

    # printing ------------------------------------------------------------------------
    def to_str(self, order: MonomialOrder = DEGREVLEX) -> str:
        K = self.field
        parts = []
        for m, c in self.sorted_terms(order):
            parts.append(term_body(K, c, _format_monomial(self.ctx.names, m)))
        return join_terms(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r} over {self.field})"


def _format_monomial(names, m) -> str:
    out = []
    for n, e in zip(names, m):
        if e == 1:
            out.append(n)
        elif e:
            out.append(f"{n}^{e}")
    return "*".join(out)


def _check_same(f: Polynomial, g: Polynomial):
    if f.ctx != g.ctx or f.field != g.field:
        raise ContextMismatch("polynomials live in different rings")


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    _check_same(f, g)
    return f * g


def partial_derivative(f: Polynomial, v: str) -> Polynomial:
    return f.derivative(v)


# ---------------------------------------------------------------------------
# truncated power-series substitution


def _series_add(K, a, b):
    return [p_add(K, x, y) for x, y in zip(a, b)]


def _series_mul(K, a, b, n):
    out = [{} for _ in range(n + 1)]
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = b[j]
            if y:
                out[i + j] = p_add(K, out[i + j], p_mul(K, x, y))
    return out


def _horner(K, terms, positions, k, series, n, zero_mono):
    if k == len(positions):
        ((_, c),) = terms
        return [{zero_mono: c}] + [{} for _ in range(n)]
    pos = positions[k]
    groups = defaultdict(list)
    for m, c in terms:
        groups[m[pos]].append((m, c))
    acc = None
    for d in range(max(groups), -1, -1):
        if acc is not None:
            acc = _series_mul(K, acc, series[pos], n)
        if d in groups:
            inner = _horner(K, groups[d], positions, k + 1, series, n, zero_mono)
            acc = inner if acc is None else _series_add(K, acc, inner)
    return acc


def substitute_truncated(f: Polynomial, assignment, n: int, ctx: VariableContext | None = None):
    """Coefficients ``[F_0, ..., F_n]`` of ``f(sum_i c_i t^i) mod t^(n+1)``.

    ``assignment`` maps each variable of ``f`` to a length ``n+1`` sequence of
    polynomials in a common target context (plain constants are allowed when
    ``ctx`` is given).  Evaluation is Horner's rule over the truncated
    power-series ring, one variable at a time.
    """
    if n < 0:
        raise ValueError("level must be non-negative")
    K = f.field
    used = f.variables()
    for v in used:
        if v not in assignment:
            raise MissingAssignment(f"no coefficient vector for {v!r}")
    if ctx is None:
        for vec in assignment.values():
            for c in vec:
                if isinstance(c, Polynomial):
                    ctx = c.ctx
                    break
            if ctx is not None:
                break
    if ctx is None:
        ctx = VariableContext(())
    zero_mono = (0,) * len(ctx)
    series = {}
    for v in used:
        vec = list(assignment[v])
        if len(vec) != n + 1:
            raise ContextMismatch(f"coefficient vector for {v!r} has length {len(vec)}, expected {n + 1}")
        raw = []
        for c in vec:
            if isinstance(c, Polynomial):
                if c.ctx != ctx or c.field != K:
                    raise ContextMismatch(f"coefficient for {v!r} lives in another ring")
                raw.append(c.terms)
            else:
                raw.append(Polynomial.constant(ctx, K, c).terms)
        series[f.ctx.index(v)] = raw
    if not f.terms:
        return [Polynomial(ctx, K, {}) for _ in range(n + 1)]
    positions = [f.ctx.index(v) for v in used]
    out = _horner(K, list(f.terms.items()), positions, 0, series, n, zero_mono)
    return [Polynomial(ctx, K, t) for t in out]


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, ctx, field):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.field = field
        self.gens = field.generator_names()

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, column=tok[2] + 1)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("division only by nonzero constants", tok)
                value = value / FieldElement(self.field, rhs.terms[(0,) * len(self.ctx)])
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if tok[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected an integer exponent", tok)
            e = int(tok[1])
            if neg:
                if not base.is_constant() or base.is_zero():
                    self.fail("negative exponent on a non-constant", tok)
                c = FieldElement(self.field, base.terms[(0,) * len(self.ctx)])
                return Polynomial.constant(self.ctx, self.field, c.inverse() ** e)
            return base ** e
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Polynomial.constant(self.ctx, self.field, int(val))
        if kind == "name":
            if val in self.ctx:
                return Polynomial.variable(self.ctx, self.field, val)
            if val in self.gens:
                return Polynomial.constant(self.ctx, self.field, FieldElement(self.field, self.gens[val]))
            self.fail(f"unknown identifier {val!r}", tok)
        if kind == "op" and val == "(":
            v = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return v
        if kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected {val!r}", tok)


def parse_polynomial(text: str, ctx: VariableContext, field: Field) -> Polynomial:
    """Parse ``x^5 + y*z^5 - a`` style text; field generators are constants."""
    clash = set(ctx.names) & set(field.generator_names())
    if clash:
        raise ParseError(f"names used both as variables and field generators: {sorted(clash)}")
    return _Parser(text, ctx, field).parse()


def parse_constant(text: str, field: Field):
    p = parse_polynomial(text, VariableContext(()), field)
    return p.terms.get((), field.zero())


def parse_univariate(text: str, field: Field, name: str):
    """Dense coefficient tuple (low degree first) of a polynomial in ``name``."""
    p = parse_polynomial(text, VariableContext((name,)), field)
    if not p.terms:
        return ()
    deg = max(m[0] for m in p.terms)
    return tuple(p.terms.get((k,), field.zero()) for k in range(deg + 1))
