"""Small fixed ideals shared by the Groebner tests and the acceptance run."""

import random

from jetlab.fields import QQ, PrimeField, parse_field
from jetlab.jets import jet_ideal
from jetlab.poly import VariableContext, parse_polynomial
from jetlab.scenarios import random_polynomial

_SOURCES = [
    ("QQ", "x y", ["x*y - 1", "y^2 - 1"]),
    ("QQ", "x y", ["x + y", "y"]),
    ("QQ", "x", ["x^2 - 1"]),
    ("QQ", "x y t", ["x - t", "y - t^2"]),
    ("QQ", "x y", ["y^2 - x^3", "3*x^2", "2*y"]),
    ("QQ", "x y", ["x^2 + y^2 - 1", "2*x", "2*y"]),
    ("QQ", "x y z", ["x*y - z", "y*z - x", "x*z - y"]),
    ("QQ", "x y z", ["x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"]),
    ("QQ", "x y z", ["x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y"]),
    ("QQ", "a b c", ["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"]),
    ("QQ", "x y", ["x^4 + y^4 - 1", "x^2*y - 1"]),
    ("QQ", "x y z", ["x^2 - y", "x^3 - z"]),
    ("QQ", "x y", ["x^2*y - x*y^2 + 1/2", "x^3 - 2*y"]),
    ("Fp(2)(a)", "x y z", ["x^2 + y*z^2 - a", "z^2"]),
    ("Fp(2)(a)", "x y z", ["x^2 + y*z^2 + a", "y*z^2"]),
    ("Fp(3)(a)", "x y z", ["x^3 + y*z^3 - a"]),
    ("Fp(5)", "x y", ["x^2 + y^2 - 1", "x*y - 2"]),
    ("Fp(7)", "x y z", ["x^3 + y^3 + z^3", "x + y + z - 1"]),
    ("Fp(2)", "x y z", ["x*y + z", "x^2 + y^2 + 1", "y*z + x"]),
    ("QQ(s)", "x y", ["s*x^2 - y", "x*y - s"]),
    ("Fp(2)(a)[r]/(r^2 + a)", "x y", ["x^2 + a", "x*y + r"]),
]


def desk_instances():
    out = []
    for field_text, names, gens in _SOURCES:
        K = parse_field(field_text)
        ctx = VariableContext(names.split())
        out.append([parse_polynomial(g, ctx, K) for g in gens])
    # jet ideals make up the rest of the 25
    cusp = parse_polynomial("y^2 - x^3", VariableContext(["x", "y"]), QQ)
    surf = parse_polynomial("x^2 + y*z^2 - a", VariableContext(["x", "y", "z"]), parse_field("Fp(2)(a)"))
    for f, n in ((cusp, 1), (cusp, 2), (surf, 1), (parse_polynomial("x^2 + 1", VariableContext(["x"]), QQ), 3)):
        out.append(list(jet_ideal([f], n).generators()))
    return out


def random_instances(count, seed=0):
    """(f, generators) pairs over QQ and F_5 in two or three variables."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        K = QQ if k % 2 == 0 else PrimeField(5)
        ctx = VariableContext(["x", "y", "z"][: 2 + k % 2])
        gens = [g for g in (random_polynomial(rng, ctx, K, max_degree=3, max_terms=3) for _ in range(2)) if not g.is_zero()]
        if not gens:
            gens = [parse_polynomial("x", ctx, K)]
        # half the targets are forced members
        if k % 3 == 0:
            f = random_polynomial(rng, ctx, K, 2, 2) * gens[0]
            if len(gens) > 1:
                f = f + random_polynomial(rng, ctx, K, 1, 2) * gens[1]
        else:
            f = random_polynomial(rng, ctx, K, max_degree=3, max_terms=3)
        out.append((f, gens))
    return out
