import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jetlab import kernels
from jetlab.greenberg import _columns, _grid, _grid_scan, _levelwise
from jetlab.jets import jet_ideal

compiled = pytest.importorskip("jetlab._kernels") if kernels.BACKEND == "cython" else None


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")


def _packed(spec, n, q):
    J = jet_ideal(spec.gens, n)
    cols = _columns(spec.variables, n)
    return J, cols, kernels.compile_mod_p(J.generators(), cols, q)


def test_python_grid_matches_levelwise(cusp):
    J, cols, _ = _packed(cusp, 2, 5)
    grid = _grid_scan(J, 5, 2, impl=kernels.python_impl)
    level = _levelwise(J, 5, 2)[-1]
    assert {tuple(r) for r in grid.tolist()} == {tuple(r) for r in level.tolist()}


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_grid_parity(cusp, n):
    _, cols, packed = _packed(cusp, n, 5)
    a = kernels.python_impl.grid_zeros(*packed, len(cols), 5)
    b = compiled.grid_zeros(*packed, len(cols), 5)
    assert np.array_equal(np.asarray(a), np.asarray(b))


@pytest.mark.skipif(kernels.BACKEND != "cython", reason="extension not built")
@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(0, 2))
def test_common_zeros_parity(q, n):
    from jetlab.varieties import parse_variety

    spec = parse_variety("field: QQ\nvars: x y z\ngens: x^2 + y*z^2 - 1, x*y*z + 3\n")
    _, cols, packed = _packed(spec, n, q)
    if q ** len(cols) > 200_000:
        return
    pts = np.ascontiguousarray(_grid(q, len(cols)), dtype=np.int64)
    a = kernels.python_impl.common_zeros(*packed, pts, q)
    b = compiled.common_zeros(*packed, pts, q)
    assert np.array_equal(np.asarray(a).astype(bool), np.asarray(b).astype(bool))


def test_large_coefficients_do_not_overflow():
    from jetlab.varieties import parse_variety

    spec = parse_variety("field: Fp(7)\nvars: x y\ngens: x^9*y^9 + 6\n")
    _, cols, packed = _packed(spec, 0, 7)
    pts = np.ascontiguousarray(_grid(7, 2), dtype=np.int64)
    mask = np.asarray(kernels.common_zeros(*packed, pts, 7)).astype(bool)
    want = [(x * y) % 7 in (1, 2, 4) and pow(x * y, 9, 7) == 1 for x, y in pts.tolist()]
    assert mask.tolist() == want


def test_fallback_selected_without_extension():
    code = (
        "import sys; sys.modules['jetlab._kernels'] = None\n"
        "from jetlab import kernels\n"
        "from jetlab.greenberg import enumerate_jets\n"
        "from jetlab.varieties import parse_variety\n"
        "spec = parse_variety('field: QQ\\nvars: x y\\ngens: y^2 - x^3\\n')\n"
        "print(kernels.BACKEND, len(enumerate_jets(spec.gens, 5, 3, strategy='grid')))\n"
    )
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True).stdout
    assert out.split() == ["python", "1125"]
