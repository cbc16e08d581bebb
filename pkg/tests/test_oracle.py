import itertools

import pytest

from qlat import oracle
from qlat.lattice import UnaryMap, boolean, chain
from qlat.polyfn import FunctionTable, subset_order_witness
from qlat.quasipoly import remark_counterexample

C2, C3, B2 = chain(2), chain(3), boolean(2)


def _monotone_count(n, Y):
    return sum(subset_order_witness(v, n, Y) is None
               for v in itertools.product(Y.elements, repeat=1 << n))


def test_polynomial_counts():
    assert len(oracle.enumerate_polynomials(2, C2)) == 6 == _monotone_count(2, C2)
    hand = sum((j - i + 1) ** 2 for i in range(3) for j in range(i, 3))
    assert len(oracle.enumerate_polynomials(2, C3)) == hand == 20 == _monotone_count(2, C3)
    for Y in (C2, C3, B2, chain(4)):
        pairs = sum(Y.le(a, b) for a, b in itertools.product(Y.elements, repeat=2))
        assert len(oracle.enumerate_polynomials(1, Y)) == pairs
    assert len(oracle.enumerate_polynomials(2, B2)) == _monotone_count(2, B2)
    assert len(oracle.enumerate_polynomials(3, C2)) == 20  # Dedekind number M(3)


@pytest.mark.parametrize("n,Y", [(2, C2), (2, C3), (2, B2), (3, C2), (3, C3)])
def test_polynomials_distinct_and_canonical(n, Y):
    forms = oracle.enumerate_polynomials(n, Y)
    assert all(p.canonical for p in forms)
    assert len({p.table.key() for p in forms}) == len(forms)


def test_bracket_map_examples():
    assert len(oracle.enumerate_bracket_maps(C2, C2)) == 4
    maps = oracle.enumerate_bracket_maps(C3, C3)
    brute = [t for t in itertools.product(range(3), repeat=3)
             if all(min(t[0], t[2]) <= v <= max(t[0], t[2]) for v in t)]
    assert sorted(tuple(m.table.tolist()) for m in maps) == sorted(brute)
    assert len(maps) == 17 < 27
    assert (0, 2, 1) not in {tuple(m.table.tolist()) for m in maps}
    for c in range(3):
        assert (c, c, c) in {tuple(m.table.tolist()) for m in maps}


def test_budget_enforced():
    with pytest.raises(oracle.BudgetExceeded):
        oracle.enumerate_bracket_maps(chain(4), chain(4), oracle.EnumerationBudget(max_candidates=10))
    with pytest.raises(ValueError):
        oracle.EnumerationBudget(max_candidates=0)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("QLAT_BUDGET", "1234")
    assert oracle.EnumerationBudget().max_candidates == 1234


def test_quasi_membership_examples(xor):
    assert not oracle.oracle_quasi_membership(xor)
    f, p, phi = remark_counterexample()
    assert oracle.oracle_quasi_membership(f)
    q, psi = oracle.quasi_witness(f)
    assert q.table.compose_inner(psi) == f
    g = p.table.compose_inner(UnaryMap(C2, C3, [0, 2]))
    assert oracle.oracle_quasi_membership(g)


def test_transformed_membership_examples(med3):
    assert oracle.oracle_transformed_membership(med3)
    f, _, _ = remark_counterexample()
    assert not oracle.oracle_transformed_membership(f)
    for c in C3.elements:
        assert oracle.oracle_transformed_membership(FunctionTable(2, C2, C3, [c] * 4))
    p, psi = oracle.transformed_witness(med3)
    assert p.table.compose_outer(psi) == med3


def test_function_space_exhaustive():
    tables = list(oracle.function_space(2, C2, C2))
    assert len(tables) == 16
    assert [t.values.tolist() for t in tables] == [list(v) for v in itertools.product((0, 1), repeat=4)]
    assert sum(1 for _ in oracle.function_space(2, C3, C3)) == 19683


def test_function_space_sampling():
    budget = oracle.EnumerationBudget(max_candidates=3000, seed=7)
    a = [t.key() for t in oracle.function_space(2, B2, C3, budget)]
    b = [t.key() for t in oracle.function_space(2, B2, C3, budget)]
    c = [t.key() for t in oracle.function_space(2, B2, C3, oracle.EnumerationBudget(max_candidates=3000, seed=8))]
    assert a == b and a != c
    assert len(a) == len(set(a)) == 3000


@pytest.mark.slow
def test_function_space_sample_size():
    budget = oracle.EnumerationBudget(max_candidates=10**5, seed=0)
    assert sum(1 for _ in oracle.function_space(2, B2, C3, budget)) == 10**5
