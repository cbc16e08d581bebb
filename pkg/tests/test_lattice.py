import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qlat.lattice import (
    LatticeError,
    SizeGuardError,
    TupleCursor,
    UnaryMap,
    boolean,
    bracket,
    chain,
    clip_ceil,
    clip_floor,
    convex_hull,
    explicit,
    index_tuple,
    join_const,
    make_lattice,
    med,
    meet_const,
    product,
    substitute,
    tuple_index,
    tuple_surgery,
    unary_predicates,
)

# 0 < a < c < 1 and 0 < b < 1, b incomparable to a and c
N5_ROWS = [
    [1, 1, 1, 1, 1],
    [0, 1, 0, 1, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]
# diamond M3: three pairwise incomparable atoms
M3_ROWS = [
    [1, 1, 1, 1, 1],
    [0, 1, 0, 0, 1],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
    [0, 0, 0, 0, 1],
]


def _brute_bounds(rows):
    m = len(rows)
    lower = lambda a, b: [c for c in range(m) if rows[c][a] and rows[c][b]]
    upper = lambda a, b: [c for c in range(m) if rows[a][c] and rows[b][c]]
    glb = {(a, b): next(c for c in lower(a, b) if all(rows[d][c] for d in lower(a, b)))
           for a in range(m) for b in range(m)}
    lub = {(a, b): next(c for c in upper(a, b) if all(rows[c][d] for d in upper(a, b)))
           for a in range(m) for b in range(m)}
    return glb, lub


def _first_distributivity_failure(rows):
    glb, lub = _brute_bounds(rows)
    for a, b, c in itertools.product(range(len(rows)), repeat=3):
        if glb[a, lub[b, c]] != lub[glb[a, b], glb[a, c]]:
            return a, b, c
    return None


ALL_LATTICES = [chain(1), chain(2), chain(3), chain(4), boolean(0), boolean(2), boolean(3),
                product([chain(2), chain(3)]), product([chain(3), chain(3)])]


@pytest.mark.parametrize("L", ALL_LATTICES, ids=repr)
def test_lattice_invariants(L):
    s = range(L.size)
    for a in s:
        assert L.le(a, a)
        assert L.le(L.bottom, a) and L.le(a, L.top)
    for a, b in itertools.product(s, repeat=2):
        if a != b:
            assert not (L.le(a, b) and L.le(b, a))
        m, j = L.meet[a, b], L.join[a, b]
        assert L.le(m, a) and L.le(m, b) and L.le(a, j) and L.le(b, j)
        assert all(L.le(c, m) for c in s if L.le(c, a) and L.le(c, b))
        assert all(L.le(j, c) for c in s if L.le(a, c) and L.le(b, c))
    for a, b, c in itertools.product(s, repeat=3):
        if L.le(a, b) and L.le(b, c):
            assert L.le(a, c)
        assert L.meet[a, L.join[b, c]] == L.join[L.meet[a, b], L.meet[a, c]]


def test_chain2():
    L = chain(2)
    assert L.size == 2 and L.le(0, 1) and not L.le(1, 0)
    assert L.meet.tolist() == [[0, 0], [0, 1]]
    assert L.join.tolist() == [[0, 1], [1, 1]]


def test_boolean2_is_diamond():
    L = boolean(2)
    assert L.size == 4
    a, b = 1, 2
    assert not L.le(a, b) and not L.le(b, a)
    assert L.meet[a, b] == L.bottom and L.join[a, b] == L.top
    assert not L.is_chain


def test_pentagon_rejected_with_first_witness():
    expected = _first_distributivity_failure(N5_ROWS)
    assert expected is not None
    with pytest.raises(LatticeError) as exc:
        explicit(N5_ROWS)
    assert exc.value.reason == "not distributive"
    # N5 rows are already a linear extension, so witness indices match the file
    assert exc.value.witness == expected


def test_m3_rejected():
    with pytest.raises(LatticeError, match="not distributive"):
        explicit(M3_ROWS)


@pytest.mark.parametrize("rows,reason", [
    ([[1, 0], [0, 1]], "not bounded"),
    ([[0, 1], [0, 1]], "not reflexive"),
    ([[1, 1], [1, 1]], "not antisymmetric"),
    ([[1, 1, 0], [0, 1, 1], [0, 0, 1]], "not transitive"),
    # two maximal elements above a common bottom plus an extra top missing
    ([[1, 1, 1, 1, 1, 1], [0, 1, 0, 1, 1, 1], [0, 0, 1, 1, 1, 1], [0, 0, 0, 1, 0, 1],
      [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 1]], "no least upper bound"),
])
def test_explicit_rejects(rows, reason):
    with pytest.raises(LatticeError, match=reason):
        explicit(rows)


def test_explicit_relabels_bottom_and_top():
    # file order: top, bottom, middle
    rows = [[1, 0, 0], [1, 1, 1], [1, 0, 1]]
    L = explicit(rows, labels=["t", "b", "m"])
    assert L.labels == ("b", "m", "t")
    assert L.relabeling == (1, 2, 0)
    assert L == chain(3)


def test_make_lattice_specs():
    assert make_lattice({"kind": "chain", "size": 3}) == chain(3)
    assert make_lattice({"kind": "boolean", "atoms": 2}) == boolean(2)
    P = make_lattice({"kind": "product", "factors": [{"kind": "chain", "size": 2}] * 2})
    assert P == boolean(2)
    with pytest.raises(LatticeError):
        make_lattice({"kind": "explicit", "size": 5, "leq": N5_ROWS})
    with pytest.raises(ValueError):
        boolean(5)


def test_size_guard():
    with pytest.raises(SizeGuardError):
        chain(4).check_tuple_space(10)
    assert chain(10).check_tuple_space(6) == 10**6


def test_med_examples():
    C3, B2 = chain(3), boolean(2)
    assert med(C3, 0, 1, 2) == 1
    for L in (C3, B2):
        for a, b in itertools.product(L.elements, repeat=2):
            assert med(L, a, a, b) == a
    a, b = 1, 2
    expected = B2.join[B2.join[B2.meet[a, b], B2.meet[b, B2.top]], B2.meet[B2.top, a]]
    assert med(B2, a, b, B2.top) == expected == B2.top


@pytest.mark.parametrize("L", ALL_LATTICES, ids=repr)
def test_med_symmetric(L):
    for t in itertools.product(L.elements, repeat=3):
        vals = {med(L, *p) for p in itertools.permutations(t)}
        assert len(vals) == 1


def test_bracket_examples():
    C3 = chain(3)
    assert bracket(C3, (0, 2), 0, 2) == (0, 2)
    assert bracket(C3, (0, 2), 1, 1) == (1, 1)
    assert bracket(C3, (0, 1, 2), 2, 0) == (0, 1, 2)


@pytest.mark.parametrize("L", ALL_LATTICES, ids=repr)
def test_bracket_idempotent_and_bounded(L):
    for lo, hi in itertools.product(L.elements, repeat=2):
        x = tuple(L.elements)
        once = bracket(L, x, lo, hi)
        assert bracket(L, once, lo, hi) == once
        for v in once:
            assert L.le(L.meet[lo, hi], v) and L.le(v, L.join[lo, hi])


def test_surgery_examples():
    C3 = chain(3)
    assert substitute((0, 2), 0, 1) == (1, 2)
    assert clip_floor(C3, (0, 1, 2), 1) == (0, 0, 2)
    assert clip_ceil(C3, (0, 1, 2), 1) == (0, 2, 2)
    assert meet_const(C3, (0, 1, 2), 1) == (0, 1, 1)
    assert join_const(C3, (0, 1, 2), 1) == (1, 1, 2)
    assert tuple_surgery(C3, (0, 2), "substitute", (1, 0)) == (0, 0)
    with pytest.raises(IndexError):
        substitute((0, 2), 2, 1)


def test_product_operations_componentwise():
    A, B = chain(2), chain(3)
    P = product([A, B])
    decode = lambda i: divmod(i, B.size)
    for x, y, z in itertools.product(P.elements, repeat=3):
        (a1, b1), (a2, b2), (a3, b3) = decode(x), decode(y), decode(z)
        assert decode(med(P, x, y, z)) == (med(A, a1, a2, a3), med(B, b1, b2, b3))
    for x, c in itertools.product(P.elements, repeat=2):
        got = [decode(v) for v in clip_floor(P, (x,), c)]
        a, b = decode(x)
        ca, cb = decode(c)
        # clip sends the whole element to bottom only when it is below c in both factors
        assert got == [(0, 0)] if (a <= ca and b <= cb) else got == [(a, b)]


@given(st.integers(1, 5), st.integers(1, 4), st.data())
def test_tuple_index_bijection(size, n, data):
    x = tuple(data.draw(st.lists(st.integers(0, size - 1), min_size=n, max_size=n)))
    i = tuple_index(x, size)
    assert 0 <= i < size**n
    assert index_tuple(i, n, size) == x
    assert i == sum(xi * size ** (n - 1 - k) for k, xi in enumerate(x))
    assert TupleCursor.at(chain(size), x).tuple == x


def test_convex_hull():
    C3 = chain(3)
    assert convex_hull(C3, {0, 2}) == {0, 1, 2}
    B2 = boolean(2)
    assert convex_hull(B2, {1, 2}) == {1, 2}
    assert convex_hull(B2, {0, 3}) == {0, 1, 2, 3}


def test_unary_predicate_examples():
    C3 = chain(3)
    rep = unary_predicates(UnaryMap.identity(C3))
    assert rep.is_order_preserving and rep.is_homomorphism and rep.range_is_convex
    assert rep.satisfies_bracket_condition
    assert not rep.is_order_reversing

    rep = unary_predicates(UnaryMap(C3, C3, [0, 2, 1]))
    assert not rep.is_order_preserving
    assert not rep.satisfies_bracket_condition

    rep = unary_predicates(UnaryMap(C3, C3, [0, 2, 2]))
    assert rep.is_order_preserving and rep.satisfies_bracket_condition
    assert rep.is_homomorphism
    assert rep.range == {0, 2} and not rep.range_is_convex


def test_monotone_chain_maps_are_homomorphisms():
    for a, b in [(2, 3), (3, 3), (3, 4)]:
        X, Y = chain(a), chain(b)
        for t in itertools.product(range(b), repeat=a):
            phi = UnaryMap(X, Y, t)
            rep = unary_predicates(phi)
            if rep.is_order_preserving:
                assert rep.is_homomorphism


def test_unary_map_validation():
    with pytest.raises(ValueError):
        UnaryMap(chain(2), chain(2), [0])
    with pytest.raises(ValueError):
        UnaryMap(chain(2), chain(2), [0, 2])
    phi = UnaryMap(chain(3), chain(3), [0, 0, 2])
    assert phi.compose(phi) == phi
    assert np.array_equal(phi.table, [0, 0, 2])
