import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sparsege import kernels
from sparsege.kernels import available_backends

sparse_vec = st.dictionaries(st.integers(0, 15), st.integers(-50, 50).filter(bool), max_size=10)


def _split(d):
    cols = sorted(d)
    return cols, [d[c] for c in cols]


def _dense(d, a, e, b):
    keys = set(d) | set(e)
    out = {j: a * d.get(j, 0) + b * e.get(j, 0) for j in keys}
    return {j: v for j, v in out.items() if v != 0}


def test_backend_is_selected():
    assert kernels.BACKEND in available_backends()


@settings(max_examples=200)
@given(sparse_vec, sparse_vec, st.integers(-5, 5).filter(bool), st.integers(-5, 5).filter(bool))
def test_lincomb_matches_dense(x, y, a, b):
    expected = _dense(x, a, y, b)
    for impl in available_backends().values():
        cols, vals = impl.lincomb(*_split(x), 0, *_split(y), 0, a, b)
        assert cols == sorted(expected)
        assert dict(zip(cols, vals)) == expected


@given(sparse_vec, sparse_vec, st.fractions(max_denominator=7).filter(bool))
def test_lincomb_unit_path_with_fractions(x, y, b):
    expected = _dense(x, 1, y, b)
    for impl in available_backends().values():
        cols, vals = impl.lincomb(*_split(x), 0, *_split(y), 0, 1, b)
        assert dict(zip(cols, vals)) == expected


def test_lincomb_offsets(backend):
    cols, vals = backend.lincomb([0, 2, 5], [1, 2, 3], 1, [0, 2, 4], [7, 2, 1], 1, 1, -1)
    assert (cols, vals) == ([4, 5], [-1, 3])


def test_lincomb_bigints(backend):
    big = 10 ** 40
    cols, vals = backend.lincomb([1], [big], 0, [1, 3], [big, 1], 0, 3, -3)
    assert (cols, vals) == ([3], [-3])


@given(st.dictionaries(st.integers(0, 15), st.floats(-1e3, 1e3, allow_nan=False), max_size=10),
       st.dictionaries(st.integers(0, 15), st.floats(-1e3, 1e3, allow_nan=False), max_size=10),
       st.floats(-10, 10, allow_nan=False))
def test_lincomb_f64_both_backends_agree(x, y, b):
    eps = 1e-10
    results = [impl.lincomb_f64(*_split(x), 0, *_split(y), 0, 1.0, b, eps)
               for impl in available_backends().values()]
    assert all(r == results[0] for r in results)
    cols, vals = results[0]
    for j, v in zip(cols, vals):
        assert abs(v) > eps
        assert v == x.get(j, 0.0) + b * y.get(j, 0.0)


def test_lincomb_f64_drops_below_eps(backend):
    cols, vals = backend.lincomb_f64([0, 1], [1.0, 1.0], 0, [0, 1], [1.0, 1.0 + 1e-12], 0, 1.0, -1.0, 1e-10)
    assert cols == [] and vals == []


def test_env_var_forces_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, SPARSEGE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import sparsege; print(sparsege.BACKEND)"],
                         capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"
