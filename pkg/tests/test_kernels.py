"""The compiled kernels must agree with the pure-Python fallback, witness for witness."""
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlat import kernels
from qlat.lattice import boolean, chain, product

pytestmark = pytest.mark.skipif(kernels.compiled is None, reason="compiled extension not built")

LATTICES = [chain(2), chain(3), chain(4), boolean(2), product([chain(2), chain(3)])]
PY, CY = kernels.pure, kernels.compiled


@st.composite
def tables(draw, max_total=81):
    X = draw(st.sampled_from(LATTICES))
    Y = draw(st.sampled_from(LATTICES))
    n = draw(st.integers(1, 3).filter(lambda k: X.size**k <= max_total))
    total = X.size**n
    # bias toward order-preserving-ish tables so witnesses are not always at index 0
    if draw(st.booleans()):
        vals = np.array([min(sum(d), Y.size - 1) for d in itertools.product(range(X.size), repeat=n)],
                        dtype=np.int32)
        flips = draw(st.lists(st.tuples(st.integers(0, total - 1), st.integers(0, Y.size - 1)), max_size=3))
        for i, v in flips:
            vals[i] = v
    else:
        vals = np.array(draw(st.lists(st.integers(0, Y.size - 1), min_size=total, max_size=total)),
                        dtype=np.int32)
    phi = np.array(draw(st.lists(st.integers(0, Y.size - 1), min_size=X.size, max_size=X.size)),
                   dtype=np.int32)
    return n, X, Y, vals, phi


def both(name, *args):
    a = getattr(PY, name)(*args)
    b = getattr(CY, name)(*args)
    return tuple(np.asarray(a).tolist()) if isinstance(a, np.ndarray) else a, \
        tuple(np.asarray(b).tolist()) if isinstance(b, np.ndarray) else b


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(LATTICES), st.integers(0, 3), st.data())
def test_dnf_table(Y, n, data):
    alpha = np.array(data.draw(st.lists(st.integers(0, Y.size - 1), min_size=1 << n, max_size=1 << n)),
                     dtype=np.int32)
    a, b = both("dnf_table", alpha, n, Y.size, Y.meet, Y.join, Y.top)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(tables())
def test_compose_table(t):
    n, X, Y, vals, phi = t
    # compose Y-valued p over Y^n with phi: X -> Y; reuse vals as a table on X^n with X == Y
    p = np.array([v % X.size for v in vals], dtype=np.int32)
    inner = np.array([v % X.size for v in phi], dtype=np.int32)
    a, b = both("compose_table", p, inner, n, X.size, X.size)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(tables())
def test_median_witness(t):
    n, X, Y, vals, phi = t
    a, b = both("median_witness", vals, n, X.size, X.bottom, X.top, phi, Y.meet, Y.join)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(tables())
def test_order_witness(t):
    n, X, Y, vals, _ = t
    a, b = both("order_witness", vals, n, X.size, X.leq, Y.leq)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(tables(), st.booleans(), st.data())
def test_homogeneity_witness(t, meet, data):
    n, X, Y, vals, phi = t
    mask = np.array(data.draw(st.lists(st.integers(0, 1), min_size=X.size, max_size=X.size)), dtype=np.uint8)
    xop, yop = (X.meet, Y.meet) if meet else (X.join, Y.join)
    a, b = both("homogeneity_witness", vals, n, X.size, xop, yop, phi, mask)
    assert a == b


@settings(max_examples=150, deadline=None)
@given(tables(), st.booleans())
def test_horizontal_witness(t, meet):
    n, X, Y, vals, _ = t
    if meet:
        args = (X.join, Y.meet, X.leq, True, X.top)
    else:
        args = (X.meet, Y.join, X.leq, False, X.bottom)
    a, b = both("horizontal_witness", vals, n, X.size, *args)
    assert a == b


@settings(max_examples=100, deadline=None)
@given(tables(max_total=27), st.booleans())
def test_comonotone_witness(t, meet):
    n, X, Y, vals, phi = t
    if not Y.is_chain:
        Y = chain(3)
        phi = phi % 3
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int32).reshape(-1, n)
    xop, yop = (X.meet, Y.meet) if meet else (X.join, Y.join)
    vals = vals % Y.size
    a, b = both("comonotone_witness", vals, n, X.size, phi, Y.leq, perms, xop, yop)
    assert a == b


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if kernels.compiled is not None:
        assert kernels.BACKEND == "cython" or kernels.dnf_table is PY.dnf_table
