"""Exact coefficient fields, built as towers over QQ or a prime field.

Each layer of a tower is either a rational function field or a simple
algebraic extension of the layer below.

A field object is a descriptor that also knows how to do arithmetic on raw
payloads.  Polynomials store plain Python payloads to
keep the Gröbner inner loop free of wrapper allocations; the public
:class:`FieldElement` wraps a payload together with its field.

Payload conventions
-------------------
* ``Rationals``: :class:`fractions.Fraction`.
* ``PrimeField(p)``: ``int`` in ``range(p)``.
* ``RationalFunctionField``: ``(num, den)``, dense coefficient tuples over the
  base field (low degree first), ``den`` monic and coprime to ``num``.
* ``SimpleExtension``: dense tuple over the base of length ``< deg m``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import (
    DescriptorMismatch,
    FieldError,
    NonInvertible,
    NotPrime,
    ParseError,
    WrongCharacteristic,
    ZeroInversion,
)

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "RationalFunctionField",
    "SimpleExtension",
    "FieldElement",
    "FieldHom",
    "QQ",
    "field_inverse",
    "hom_apply",
    "is_pth_power",
    "is_prime",
    "parse_field",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# dense univariate helpers (coefficients over a field K, low degree first)


def u_strip(K, a):
    a = list(a)
    while a and K.is_zero(a[-1]):
        a.pop()
    return tuple(a)


def u_add(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return u_strip(K, out)


def u_neg(K, a):
    return tuple(K.neg(c) for c in a)


def u_sub(K, a, b):
    return u_add(K, a, u_neg(K, b))


def u_scale(K, a, c):
    if K.is_zero(c):
        return ()
    return u_strip(K, [K.mul(x, c) for x in a])


def u_mul(K, a, b):
    if not a or not b:
        return ()
    zero = K.zero()
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return u_strip(K, out)


def u_divmod(K, a, b):
    if not b:
        raise ZeroInversion("division by the zero polynomial")
    a = list(a)
    db = len(b) - 1
    inv_lead = K.inv(b[-1])
    if len(a) - 1 < db:
        return (), tuple(a)
    q = [K.zero()] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv_lead)
        q[k - db] = c
        for j in range(db + 1):
            a[k - db + j] = K.sub(a[k - db + j], K.mul(c, b[j]))
    return u_strip(K, q), u_strip(K, a[:db])


def u_monic(K, a):
    if not a:
        return a
    return u_scale(K, a, K.inv(a[-1]))


def u_gcd(K, a, b):
    while b:
        a, b = b, u_divmod(K, a, b)[1]
    return u_monic(K, a)


def u_xgcd(K, a, b):
    """Return ``(g, s, t)`` with ``g = s*a + t*b``, ``g`` not normalized."""
    r0, r1 = a, b
    s0, s1 = (K.one(),), ()
    t0, t1 = (), (K.one(),)
    while r1:
        q, r = u_divmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, u_sub(K, s0, u_mul(K, q, s1))
        t0, t1 = t1, u_sub(K, t0, u_mul(K, q, t1))
    return r0, s0, t0


def u_deriv(K, a):
    return u_strip(K, [K.mul(K.from_int(i), a[i]) for i in range(1, len(a))])


def u_horner(T, coeffs, x, coeff_map):
    """Evaluate ``coeffs`` at ``x`` in field ``T``, mapping coefficients first."""
    acc = T.zero()
    for c in reversed(coeffs):
        acc = T.add(T.mul(acc, x), coeff_map(c))
    return acc


def _atomic(s: str) -> bool:
    return not any(ch in s for ch in " +-/*") or (s.startswith("(") and s.endswith(")") and _balanced_inner(s))


def _balanced_inner(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(s) - 1:
                return False
    return True


def wrap(s: str) -> str:
    return s if _atomic(s) else f"({s})"


def join_terms(parts) -> str:
    """Join ``(negative, body)`` pairs into ``a + b - c`` form."""
    if not parts:
        return "0"
    out = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def term_body(K, c, monomial: str):
    """``(negative, text)`` for coefficient ``c`` times a printed monomial."""
    neg, mag = K.split_sign(c)
    if not monomial:
        return neg, K.format(mag)
    if mag == K.one():
        return neg, monomial
    return neg, f"{wrap(K.format(mag))}*{monomial}"


def format_univariate(K, coeffs, name: str) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if K.is_zero(c):
            continue
        mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
        parts.append(term_body(K, c, mono))
    return join_terms(parts)


# ---------------------------------------------------------------------------
# fields


class Field:
    characteristic: int = 0
    base: "Field | None" = None

    # identity -----------------------------------------------------------
    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.grammar()

    def __str__(self):
        return self.grammar()

    # construction ---------------------------------------------------------
    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    def coerce(self, x):
        """Raw payload for ``x``; numbers, strings and elements of this field are accepted."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise DescriptorMismatch(f"element of {x.field} is not in {self}")
            return x.value
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_fraction(x)
        if isinstance(x, str):
            from .poly import parse_constant

            return parse_constant(x, self)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def from_fraction(self, q: Fraction):
        num = self.from_int(q.numerator)
        if q.denominator == 1:
            return num
        return self.div(num, self.from_int(q.denominator))

    def element(self, value) -> "FieldElement":
        return FieldElement(self, value)

    # tower ------------------------------------------------------------------
    def layers(self):
        """Tower from the prime field up to ``self``."""
        out = []
        f = self
        while f is not None:
            out.append(f)
            f = f.base
        return out[::-1]

    def prime_field(self) -> "Field":
        return self.layers()[0]

    def generator_names(self) -> dict:
        """Map each tower generator name to its payload in ``self``."""
        names = {}
        for layer in self.layers():
            if layer.base is None:
                continue
            names[layer.name] = self.lift_from(layer, layer.gen())
        return names

    def lift_from(self, layer: "Field", v):
        """Embed a payload of a lower tower layer into ``self``."""
        if layer == self:
            return v
        if self.base is None:
            raise DescriptorMismatch(f"{layer} is not a subfield of {self}")
        return self.embed_base(self.base.lift_from(layer, v))

    def embed_base(self, v):
        raise DescriptorMismatch(f"{self} has no base field")

    # arithmetic defaults ------------------------------------------------------
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_one(self, a) -> bool:
        return a == self.one()

    def split_sign(self, a):
        return False, a

    def grammar(self) -> str:
        raise NotImplementedError


class Rationals(Field):
    characteristic = 0

    def _key(self):
        return ("QQ",)

    def grammar(self):
        return "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroInversion("inverse of 0 in QQ")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroInversion("division by 0 in QQ")
        return a / b

    def split_sign(self, a):
        return (a < 0), abs(a)

    def format(self, a):
        return str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def _key(self):
        return ("Fp", self.p)

    def grammar(self):
        return f"Fp({self.p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def is_zero(self, a):
        return a == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroInversion(f"inverse of 0 in {self}")
        return pow(a, -1, self.p)

    def format(self, a):
        return str(a)


class RationalFunctionField(Field):
    """``base(name)``: reduced quotients of univariate polynomials."""

    def __init__(self, base: Field, name: str):
        self.base = base
        self.name = name
        self.characteristic = base.characteristic

    def _key(self):
        return ("frac", self.base._key(), self.name)

    def grammar(self):
        return f"{self.base.grammar()}({self.name})"

    def _make(self, num, den):
        K = self.base
        if not den:
            raise ZeroInversion(f"zero denominator in {self}")
        if not num:
            return ((), (K.one(),))
        if len(den) > 1:
            g = u_gcd(K, num, den)
            if len(g) > 1:
                num = u_divmod(K, num, g)[0]
                den = u_divmod(K, den, g)[0]
        lead = den[-1]
        if not K.is_one(lead):
            il = K.inv(lead)
            num = u_scale(K, num, il)
            den = u_scale(K, den, il)
        return (num, den)

    def zero(self):
        return ((), (self.base.one(),))

    def one(self):
        return ((self.base.one(),), (self.base.one(),))

    def gen(self):
        return ((self.base.zero(), self.base.one()), (self.base.one(),))

    def from_int(self, n):
        return self.embed_base(self.base.from_int(n))

    def embed_base(self, c):
        K = self.base
        return (u_strip(K, (c,)), (K.one(),))

    def is_zero(self, a):
        return not a[0]

    def add(self, a, b):
        K = self.base
        if not a[0]:
            return b
        if not b[0]:
            return a
        if a[1] == b[1]:
            return self._make(u_add(K, a[0], b[0]), a[1])
        num = u_add(K, u_mul(K, a[0], b[1]), u_mul(K, b[0], a[1]))
        return self._make(num, u_mul(K, a[1], b[1]))

    def neg(self, a):
        return (u_neg(self.base, a[0]), a[1])

    def mul(self, a, b):
        K = self.base
        if not a[0] or not b[0]:
            return self.zero()
        if len(a[1]) == 1 and len(b[1]) == 1:
            return (u_mul(K, a[0], b[0]), a[1])
        return self._make(u_mul(K, a[0], b[0]), u_mul(K, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroInversion(f"inverse of 0 in {self}")
        return self._make(a[1], a[0])

    def derivative(self, a):
        """Formal d/d(name) of a rational function."""
        K = self.base
        num = u_sub(K, u_mul(K, u_deriv(K, a[0]), a[1]), u_mul(K, a[0], u_deriv(K, a[1])))
        return self._make(num, u_mul(K, a[1], a[1]))

    def split_sign(self, a):
        if a[0]:
            neg, _ = self.base.split_sign(a[0][-1])
            if neg:
                return True, self.neg(a)
        return False, a

    def format(self, a):
        num = format_univariate(self.base, a[0], self.name)
        if len(a[1]) == 1:
            return num
        den = format_univariate(self.base, a[1], self.name)
        neg, mag = self.split_sign(a)
        if neg:
            return "-" + self.format(mag)
        return f"{wrap(num)}/{wrap(den)}"


class SimpleExtension(Field):
    """``base[name]/(m(name))`` for a monic modulus ``m``.

    ``certified`` is True when irreducibility of ``m`` was proved at
    construction; otherwise it was asserted by the caller and a reducible
    modulus surfaces later as :class:`NonInvertible`.
    """

    def __init__(self, base: Field, modulus, name: str, assume_irreducible: bool = True):
        modulus = u_strip(base, modulus)
        if len(modulus) < 2:
            raise FieldError("extension modulus must have degree >= 1")
        if not base.is_one(modulus[-1]):
            raise FieldError("extension modulus must be monic")
        self.base = base
        self.modulus = modulus
        self.name = name
        self.degree = len(modulus) - 1
        self.characteristic = base.characteristic
        self.certified = _certify_irreducible(base, modulus)
        if not self.certified and not assume_irreducible:
            raise FieldError(f"could not certify irreducibility of the modulus of {name}")
        self.assume_irreducible = not self.certified

    def _key(self):
        return ("ext", self.base._key(), self.modulus, self.name)

    def grammar(self):
        m = format_univariate(self.base, self.modulus, self.name)
        return f"{self.base.grammar()}[{self.name}]/({m})"

    def _reduce(self, a):
        if len(a) <= self.degree:
            return a
        return u_divmod(self.base, a, self.modulus)[1]

    def zero(self):
        return ()

    def one(self):
        return (self.base.one(),)

    def gen(self):
        return self._reduce((self.base.zero(), self.base.one()))

    def from_int(self, n):
        return self.embed_base(self.base.from_int(n))

    def embed_base(self, c):
        return u_strip(self.base, (c,))

    def is_zero(self, a):
        return not a

    def add(self, a, b):
        return u_add(self.base, a, b)

    def neg(self, a):
        return u_neg(self.base, a)

    def sub(self, a, b):
        return u_sub(self.base, a, b)

    def mul(self, a, b):
        return self._reduce(u_mul(self.base, a, b))

    def inv(self, a):
        if not a:
            raise ZeroInversion(f"inverse of 0 in {self}")
        K = self.base
        g, s, _ = u_xgcd(K, a, self.modulus)
        if len(g) > 1:
            raise NonInvertible(
                f"{format_univariate(K, a, self.name)} shares a factor with the modulus of {self}"
            )
        return self._reduce(u_scale(K, s, K.inv(g[0])))

    def split_sign(self, a):
        if len(a) == 1:
            neg, _ = self.base.split_sign(a[0])
            if neg:
                return True, self.neg(a)
        return False, a

    def format(self, a):
        return format_univariate(self.base, a, self.name)


def _certify_irreducible(K: Field, m) -> bool:
    d = len(m) - 1
    if d == 1:
        return True
    if isinstance(K, PrimeField):
        return _ben_or(K, m)
    # x^p - c over a char-p field is irreducible iff c is not a p-th power
    p = K.characteristic
    if p and d == p and all(K.is_zero(c) for c in m[1:-1]) and isinstance(K, RationalFunctionField):
        if isinstance(K.base, PrimeField):
            return not _rff_is_pth_power(K, K.neg(m[0]))
    return False


def _ben_or(K: PrimeField, m) -> bool:
    # gcd(m, x^(p^i) - x) == 1 for all i <= deg/2
    p = K.p
    x = (0, 1)
    power = x
    for _ in range(1, (len(m) - 1) // 2 + 1):
        power = _u_powmod(K, power, p, m)
        g = u_gcd(K, m, u_sub(K, power, x))
        if len(g) > 1:
            return False
    return True


def _u_powmod(K, a, e, m):
    result = (K.one(),)
    while e:
        if e & 1:
            result = u_divmod(K, u_mul(K, result, a), m)[1]
        e >>= 1
        if e:
            a = u_divmod(K, u_mul(K, a, a), m)[1]
    return result


QQ = Rationals()


# ---------------------------------------------------------------------------
# elements


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DescriptorMismatch(f"{other.field} vs {self.field}")
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.coerce(other)
            except (ZeroInversion, FieldError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.grammar()}, {self})"


def field_inverse(x: FieldElement) -> FieldElement:
    return x.inverse()


def is_pth_power(x: FieldElement) -> bool:
    """Whether ``x`` in ``Fp(s)`` is a p-th power, via d/ds x == 0."""
    K = x.field
    if K.characteristic == 0:
        raise WrongCharacteristic("p-th powers are only meaningful in characteristic p")
    if not isinstance(K, RationalFunctionField) or not isinstance(K.base, PrimeField):
        raise FieldError(f"is_pth_power expects a field Fp(s), got {K}")
    return _rff_is_pth_power(K, x.value)


def _rff_is_pth_power(K: RationalFunctionField, v) -> bool:
    return K.is_zero(K.derivative(v))


# ---------------------------------------------------------------------------
# homomorphisms


class FieldHom:
    """Ring map between towers, fixed by the images of tower generators.

    ``images`` maps generator names of the source tower to elements (or raw
    payloads, or strings) of the target.  Unmapped generators go to the
    target generator of the same name, which gives identities and
    inclusions such as ``QQ -> QQ(s)`` for free.
    """

    def __init__(self, source: Field, target: Field, images=None):
        if source.characteristic != target.characteristic:
            raise DescriptorMismatch(
                f"characteristics differ: {source} has {source.characteristic}, "
                f"{target} has {target.characteristic}"
            )
        self.source = source
        self.target = target
        images = dict(images or {})
        tgt_names = target.generator_names()
        self._images = {}
        for layer in source.layers()[1:]:
            if layer.name in images:
                img = images.pop(layer.name)
                img = target.coerce(img) if not _is_raw(target, img) else img
            elif layer.name in tgt_names:
                img = tgt_names[layer.name]
            else:
                raise DescriptorMismatch(f"no image given for generator {layer.name!r}")
            self._images[layer.name] = img
            if isinstance(layer, SimpleExtension):
                val = u_horner(target, layer.modulus, img, lambda c, L=layer.base: self._apply(L, c))
                if not target.is_zero(val):
                    raise FieldError(
                        f"image of {layer.name} does not satisfy its minimal polynomial in {target}"
                    )
        if images:
            raise DescriptorMismatch(f"unknown source generators: {sorted(images)}")

    def _apply(self, layer: Field, v):
        T = self.target
        if isinstance(layer, Rationals):
            return T.from_fraction(v)
        if isinstance(layer, PrimeField):
            return T.from_int(v)
        img = self._images[layer.name]
        cmap = lambda c: self._apply(layer.base, c)  # noqa: E731
        if isinstance(layer, RationalFunctionField):
            num = u_horner(T, v[0], img, cmap)
            den = u_horner(T, v[1], img, cmap)
            if T.is_zero(den):
                raise ZeroInversion(f"denominator maps to 0 under {self}")
            return T.div(num, den)
        return u_horner(T, v, img, cmap)

    def apply_raw(self, v):
        return self._apply(self.source, v)

    def __call__(self, x):
        return hom_apply(self, x)

    def __repr__(self):
        imgs = ", ".join(f"{k}->{self.target.format(v)}" for k, v in self._images.items())
        return f"FieldHom({self.source} -> {self.target}: {imgs})"

    @classmethod
    def identity(cls, field: Field) -> "FieldHom":
        return cls(field, field)


def _is_raw(field, v) -> bool:
    if isinstance(v, (FieldElement, str)):
        return False
    if isinstance(field, Rationals):
        return isinstance(v, Fraction)
    if isinstance(field, PrimeField):
        return False
    return isinstance(v, tuple)


def hom_apply(h: FieldHom, x: FieldElement) -> FieldElement:
    if x.field != h.source:
        raise DescriptorMismatch(f"{x.field} is not the source {h.source}")
    return FieldElement(h.target, h.apply_raw(x.value))


# ---------------------------------------------------------------------------
# grammar:  QQ | Fp(p) followed by (name) or [name]/(poly) layers

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_BASE_RE = re.compile(r"\s*(QQ|Fp\s*\(\s*(\d+)\s*\))\s*")
_FRAC_RE = re.compile(r"\(\s*(" + _NAME + r")\s*\)\s*")
_EXT_RE = re.compile(r"\[\s*(" + _NAME + r")\s*\]\s*/\s*\(")


def parse_field(text: str) -> Field:
    """Parse ``QQ``, ``Fp(5)``, ``Fp(2)(a)``, ``Fp(2)(a)[x0]/(x0^2-a)``..."""
    m = _BASE_RE.match(text)
    if not m:
        raise ParseError(f"expected QQ or Fp(p) in field {text!r}", column=1)
    if m.group(2) is not None:
        try:
            field: Field = PrimeField(int(m.group(2)))
        except NotPrime as exc:
            raise ParseError(str(exc), column=m.start(2) + 1) from None
    else:
        field = QQ
    pos = m.end()
    while pos < len(text):
        fm = _FRAC_RE.match(text, pos)
        if fm:
            field = RationalFunctionField(field, _fresh(field, fm.group(1), fm.start(1)))
            pos = fm.end()
            continue
        em = _EXT_RE.match(text, pos)
        if em:
            name = _fresh(field, em.group(1), em.start(1))
            depth, k = 1, em.end()
            while k < len(text) and depth:
                depth += {"(": 1, ")": -1}.get(text[k], 0)
                k += 1
            if depth:
                raise ParseError("unbalanced parenthesis in minimal polynomial", column=em.end())
            from .poly import parse_univariate

            try:
                coeffs = parse_univariate(text[em.end() : k - 1], field, name)
            except ParseError as exc:
                col = None if exc.column is None else exc.column + em.end()
                raise ParseError(exc.message, column=col) from None
            coeffs = u_monic(field, coeffs)
            field = SimpleExtension(field, coeffs, name)
            pos = k
            while pos < len(text) and text[pos].isspace():
                pos += 1
            continue
        raise ParseError(f"unexpected text {text[pos:]!r} in field", column=pos + 1)
    return field


def _fresh(field: Field, name: str, pos: int) -> str:
    if name in field.generator_names() or name in ("QQ", "Fp"):
        raise ParseError(f"generator name {name!r} already used", column=pos + 1)
    return name
