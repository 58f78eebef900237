"""Mod-p evaluation kernels with the compiled extension selected at import.

``BACKEND`` is ``"cython"`` when ``jetlab._kernels`` was built and
``"python"`` otherwise; both expose ``common_zeros`` and ``grid_zeros`` with
identical results.
"""

from __future__ import annotations

import numpy as np

from .fields import PrimeField, Rationals
from .errors import FieldMismatch

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _kernels_py as _impl

    BACKEND = "python"

from . import _kernels_py as python_impl  # noqa: E402

common_zeros = _impl.common_zeros
grid_zeros = _impl.grid_zeros


def coefficient_mod_p(field, c, p: int) -> int:
    if isinstance(field, PrimeField):
        if field.p != p:
            raise FieldMismatch(f"coefficients live in F_{field.p}, not F_{p}")
        return c
    if isinstance(field, Rationals):
        if c.denominator % p == 0:
            raise FieldMismatch(f"coefficient {c} has a denominator divisible by {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    raise FieldMismatch(f"cannot reduce coefficients of {field} modulo {p}")


def compile_mod_p(polys, columns, p: int):
    """Pack polynomials into ``(exps, coeffs, offsets)`` over ``columns``."""
    rows, coeffs, offsets = [], [], [0]
    for f in polys:
        pos = {f.ctx.index(n): columns.index(n) for n in f.variables()}
        for m, c in f.terms.items():
            v = coefficient_mod_p(f.field, c, p)
            if v == 0:
                continue
            e = [0] * len(columns)
            for k, x in enumerate(m):
                if x:
                    e[pos[k]] = x
            rows.append(e)
            coeffs.append(v)
        offsets.append(len(coeffs))
    exps = np.zeros((len(rows), max(len(columns), 1)), dtype=np.int64)
    if rows:
        exps[:, : len(columns)] = np.asarray(rows, dtype=np.int64).reshape(len(rows), len(columns))
    return exps, np.asarray(coeffs, dtype=np.int64), np.asarray(offsets, dtype=np.int64)
