import pytest

from qlat import suites
from qlat.polyfn import FunctionTable
from qlat.lattice import chain


def test_run_suite_small_all_pass():
    results = suites.run_suite("all", max_elems=2, max_arity=2)
    names = [r.name for r in results]
    assert names == sorted(names)
    assert all(r.passed for r in results), [r.to_json() for r in results if not r.passed]
    assert "horizontal-search" in names


def test_run_suite_rejects_unknown():
    with pytest.raises(ValueError):
        suites.run_suite("everything")


def test_disagreement_serialized():
    res = suites.SuiteResult("x")
    f = FunctionTable(1, chain(2), chain(2), [1, 0])
    res.fail(f, "reason")
    out = res.to_json()
    assert not out["passed"] and out["disagreements"] == [{"values": [1, 0], "arity": 1, "reason": "reason"}]


def test_horizontal_search_asserts_nothing():
    res = suites.SuiteResult("h")
    for sp in suites.quasi_spaces():
        suites.horizontal_search(suites.oracle.function_space(*sp), res)
    assert res.passed and res.checked > 0
    assert isinstance(res.notes["counterexamples"], list)
