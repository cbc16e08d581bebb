"""Exhaustive equivalence batteries: recognizers against each other and against the oracles."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import oracle
from .lattice import Lattice, UnaryMap, boolean, chain, is_homomorphism, tuple_grid
from .polyfn import (
    FunctionTable,
    PolynomialForm,
    is_median_decomposable,
    is_polynomial,
    is_sugeno,
    order_check,
    polynomial_property_report,
)
from .quasipoly import (
    Factorization,
    bracket_function,
    bracket_unary,
    canonical_factorization,
    hat,
    is_quasi_polynomial,
    is_transformed_polynomial,
    med_values,
    promote_to_polynomial,
    quasi_property_report,
    quasi_sugeno_factorization,
    remark_counterexample,
    verify_factorization,
    is_quasi_idempotent,
    quasi_idempotency_check,
)

Space = tuple[int, Lattice, Lattice]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    disagreements: list[tuple[FunctionTable | None, str]] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def fail(self, f, why: str):
        self.disagreements.append((f, why))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "disagreements": [
                {"values": f.values.tolist() if f is not None else None,
                 "arity": f.arity if f is not None else None, "reason": why}
                for f, why in self.disagreements
            ],
            **({"notes": self.notes} if self.notes else {}),
        }


def polynomial_spaces() -> list[tuple[Space, oracle.EnumerationBudget | None]]:
    C2, C3, B2 = chain(2), chain(3), boolean(2)
    return [
        ((2, C2, C2), None),
        ((3, C2, C2), None),
        ((2, C3, C3), None),
        ((2, B2, B2), oracle.EnumerationBudget(max_candidates=10**5, seed=0)),
    ]


def quasi_spaces() -> list[Space]:
    C2, C3 = chain(2), chain(3)
    return [(2, C2, C2), (3, C2, C2), (2, C3, C3), (2, C3, C2), (2, C2, C3)]


def chain_spaces(max_elems: int, max_arity: int, square: bool = False) -> list[Space]:
    out = []
    for n in range(1, max_arity + 1):
        for a in range(2, max_elems + 1):
            for b in range(2, max_elems + 1):
                if square and a != b:
                    continue
                out.append((n, chain(a), chain(b)))
    return out


def _space_label(space: Space) -> str:
    n, X, Y = space
    return f"{X!r}^{n}->{Y!r}"


def _functions(space: Space, budget=None) -> Iterable[FunctionTable]:
    return oracle.function_space(*space, budget)


# -- polynomial characterizations ------------------------------------------


def median_and_homogeneity(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """polynomial <=> median decomposable <=> order-preserving and hull-homogeneous."""
    res = result or SuiteResult("median-homogeneity")
    for f in functions:
        res.checked += 1
        a = bool(is_polynomial(f))
        b = bool(is_median_decomposable(f))
        c = bool(polynomial_property_report(f)["homogeneity_characterization"])
        if not a == b == c:
            res.fail(f, f"polynomial={a} median={b} homogeneity={c}")
    return res


def comonotone_chains(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """On chains: polynomial <=> hull-idempotent and comonotonic min/maxitive."""
    res = result or SuiteResult("comonotone-chains")
    for f in functions:
        rep = polynomial_property_report(f)
        verdict = rep["comonotone_characterization"].holds
        if verdict is None:
            continue
        res.checked += 1
        a = bool(is_polynomial(f))
        if a != verdict:
            res.fail(f, f"polynomial={a} comonotone={verdict}")
    return res


# -- quasi-polynomial characterizations ------------------------------------


def quasi_median_vs_oracle(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    res = result or SuiteResult("quasi-median-oracle")
    for f in functions:
        res.checked += 1
        a = bool(is_quasi_polynomial(f))
        b = oracle.oracle_quasi_membership(f)
        if a != b:
            res.fail(f, f"quasi_median={a} oracle={b}")
    return res


def factorization_sets(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """{(p, phi): p o phi = f} equals {(p, phi): <p>_f = p_f and <phi>_p = delta_f}."""
    res = result or SuiteResult("factorization-sets")
    cache: dict = {}
    for f in functions:
        if not is_quasi_polynomial(f):
            continue
        n, X, Y = f.arity, f.domain, f.codomain
        key = (n, X, Y)
        if key not in cache:
            cache[key] = (oracle.enumerate_polynomials(n, Y), oracle.enumerate_bracket_maps(X, Y))
        polys, maps = cache[key]
        res.checked += 1
        canon = canonical_factorization(f)
        pf, delta = canon.p.table, canon.phi
        lo, hi = f.at_bottom(), f.at_top()
        composes, bracketed = set(), set()
        for a, p in enumerate(polys):
            p_ok = bracket_function(p.table, lo, hi) == pf
            for b, phi in enumerate(maps):
                if verify_factorization(f, Factorization(p, phi)):
                    composes.add((a, b))
                if p_ok and bracket_unary(phi, p.table.at_bottom(), p.table.at_top()) == delta:
                    bracketed.add((a, b))
        if composes != bracketed:
            res.fail(f, f"{len(composes ^ bracketed)} pairs differ")
        if not composes:
            res.fail(f, "no factorization found for a quasi-polynomial function")
    return res


def sugeno_factorizations(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    res = result or SuiteResult("quasi-sugeno")
    for f in functions:
        if not is_quasi_polynomial(f):
            continue
        res.checked += 1
        fac = quasi_sugeno_factorization(f)
        if not (is_sugeno(fac.p.table) and fac.p.table.compose_inner(fac.phi) == f):
            res.fail(f, "Sugeno factorization does not reproduce f")
        if fac.phi != f.diagonal():
            res.fail(f, "inner map is not the diagonal section")
    return res


def homogeneity_decompositions(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """Under order preservation and a homomorphic diagonal, each pairing <=> quasi-polynomial."""
    res = result or SuiteResult("quasi-homogeneity")
    names = ("homogeneous_pair", "meet_homogeneous_join_decomposable", "meet_decomposable_join_homogeneous")
    for f in functions:
        rep = quasi_property_report(f)
        if not rep["hypotheses"]:
            continue
        res.checked += 1
        q = bool(is_quasi_polynomial(f))
        for name in names:
            if bool(rep[name]) != q:
                res.fail(f, f"{name}={bool(rep[name])} quasi_polynomial={q}")
    return res


def quasi_comonotone(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    res = result or SuiteResult("quasi-comonotone")
    for f in functions:
        if not f.codomain.is_chain:
            continue
        rep = quasi_property_report(f)
        if not rep["hypotheses"]:
            continue
        res.checked += 1
        q = bool(is_quasi_polynomial(f))
        if rep["quasi_comonotonic_pair"].holds != q:
            res.fail(f, f"comonotone_pair={rep['quasi_comonotonic_pair'].holds} quasi_polynomial={q}")
    return res


def hat_agreement(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """DNF and CNF hats coincide on quasi-polynomial functions; records the first
    order-preserving non-quasi-polynomial function whose hats also coincide."""
    res = result or SuiteResult("hat-agreement")
    for f in functions:
        q = bool(is_quasi_polynomial(f))
        same = hat(f, "dnf") == hat(f, "cnf")
        if q:
            res.checked += 1
            if not same:
                res.fail(f, "hat(dnf) != hat(cnf) on a quasi-polynomial function")
        elif same and "converse_counterexample" not in res.notes and order_check(f):
            res.notes["converse_counterexample"] = {
                "arity": f.arity, "domain": f.domain.spec, "codomain": f.codomain.spec,
                "values": f.values.tolist(),
            }
    return res


def horizontal_search(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """Search only: order-preserving f with both horizontal decompositions that is not
    quasi-polynomial. Nothing is asserted; hits are recorded in ``notes``."""
    res = result or SuiteResult("horizontal-search")
    hits = res.notes.setdefault("counterexamples", [])
    for f in functions:
        rep = quasi_property_report(f)
        if not (rep["order_preserving"] and rep["horizontally_meet_decomposable"]
                and rep["horizontally_join_decomposable"]):
            continue
        res.checked += 1
        if not is_quasi_polynomial(f) and len(hits) < 10:
            hits.append({"arity": f.arity, "domain": f.domain.spec, "codomain": f.codomain.spec,
                         "values": f.values.tolist()})
    return res


def transformed_vs_oracle(functions: Iterable[FunctionTable], result: SuiteResult | None = None) -> SuiteResult:
    """With a homomorphic diagonal: quasi-idempotent and quasi-polynomial <=> some psi o p."""
    res = result or SuiteResult("transformed-oracle")
    for f in functions:
        if not is_homomorphism(f.diagonal()):
            continue
        res.checked += 1
        rep = is_transformed_polynomial(f)
        b = oracle.oracle_transformed_membership(f)
        if rep.oracle_decided or bool(rep) != b:
            res.fail(f, f"criterion={bool(rep)} oracle={b}")
    return res


def transformed_identities(space: Space, result: SuiteResult | None = None) -> SuiteResult:
    """For every psi o p: f = delta_f o p; on X = Y the promotion criterion matches is_polynomial."""
    res = result or SuiteResult("transformed-identities")
    n, X, Y = space
    seen = set()
    for key, (p, psi) in oracle.transformed_image(n, X, Y, oracle.EnumerationBudget()).items():
        f = p.table.compose_outer(psi)
        res.checked += 1
        if p.table.compose_outer(f.diagonal()) != f:
            res.fail(f, "f != delta_f o p")
        if X == Y and key not in seen:
            seen.add(key)
            rep = promote_to_polynomial(f)
            if not rep["agree"]:
                res.fail(f, "promotion criterion disagrees with is_polynomial")
    return res


def quasi_promotion(space: Space, result: SuiteResult | None = None) -> SuiteResult:
    """Promotion criterion <=> is_polynomial for every quasi-polynomial f: X^n -> X."""
    res = result or SuiteResult("quasi-promotion")
    n, X, Y = space
    if X != Y:
        return res
    for key, (p, phi) in oracle.quasi_image(n, X, Y, oracle.EnumerationBudget()).items():
        f = FunctionTable(n, X, Y, np.frombuffer(key, dtype=np.int32))
        res.checked += 1
        if not promote_to_polynomial(f)["agree"]:
            res.fail(f, "promotion criterion disagrees with is_polynomial")
    return res


# -- identities over all forms and bracket maps -----------------------------


def _grid_index(grid: np.ndarray, size: int) -> np.ndarray:
    idx = np.zeros(len(grid), dtype=np.int64)
    for k in range(grid.shape[1]):
        idx = idx * size + grid[:, k]
    return idx


def polynomial_identities(space: Space, result: SuiteResult | None = None) -> SuiteResult:
    """Monotonicity, diagonal and homogeneity identities of every polynomial over Y,
    and the composition identities of every ``p o phi`` with a bracket map phi."""
    res = result or SuiteResult("identities")
    n, X, Y = space
    grid = tuple_grid(n, Y.size).astype(np.int64)
    elems = np.arange(Y.size)
    for p in oracle.enumerate_polynomials(n, Y):
        pt = p.table
        pv = pt.values
        lo, hi = pt.at_bottom(), pt.at_top()
        res.checked += 1
        if not order_check(pt):
            res.fail(pt, "polynomial not order-preserving")
        dp = pt.diagonal().table
        if not np.array_equal(dp, med_values(Y, lo, elems, hi)):
            res.fail(pt, "diagonal differs from bracket")
        if any(dp[c] != c for c in pt.range()):
            res.fail(pt, "not idempotent on its range")
        if not np.array_equal(pv, pv[_grid_index(med_values(Y, lo, grid, hi), Y.size)]):
            res.fail(pt, "p(x) != p(<x>_p)")
        for c in Y.elements:
            cb = Y.med(lo, c, hi)
            if not np.array_equal(pv[_grid_index(Y.join[grid, c], Y.size)], Y.join[pv, cb]):
                res.fail(pt, f"join-shift identity fails at c={c}")
            if not np.array_equal(pv[_grid_index(Y.meet[grid, c], Y.size)], Y.meet[pv, cb]):
                res.fail(pt, f"meet-shift identity fails at c={c}")
        sugeno = is_sugeno(pt)
        for phi in oracle.enumerate_bracket_maps(X, Y):
            f = pt.compose_inner(phi)
            f0, f1 = f.at_bottom(), f.at_top()
            phi0, phi1 = phi(X.bottom), phi(X.top)
            lhs = med_values(Y, f0, pv, f1)
            rhs = pv[_grid_index(med_values(Y, phi0, grid, phi1), Y.size)]
            if not np.array_equal(lhs, rhs):
                res.fail(f, "<p(x)>_f != p(<x>_phi)")
            if bracket_function(f, f0, f1) != f:
                res.fail(f, "f != <f>_f")
            delta = f.diagonal()
            if bracket_unary(phi, lo, hi) != delta:
                res.fail(f, "delta_f != <phi>_p")
            if pt.compose_inner(delta) != f:
                res.fail(f, "f != p o delta_f")
            if sugeno and phi != delta:
                res.fail(f, "Sugeno p but phi != delta_f")
    return res


def remark_fixture(result: SuiteResult | None = None) -> SuiteResult:
    res = result or SuiteResult("remark-counterexample")
    f, p, phi = remark_counterexample()
    res.checked = 1
    C = f.domain
    m = 1
    if not is_quasi_polynomial(f):
        res.fail(f, "not quasi-polynomial")
    if is_quasi_idempotent(f):
        res.fail(f, "unexpectedly quasi-idempotent")
    if f((C.top, C.bottom)) != m or m in f.diagonal().range():
        res.fail(f, "value m at (top, bottom) should lie outside the diagonal range")
    wit = quasi_idempotency_check(f).witness
    if wit is None or wit[1] != m:
        res.fail(f, f"unexpected quasi-idempotency witness {wit}")
    if is_transformed_polynomial(f) or oracle.oracle_transformed_membership(f):
        res.fail(f, "unexpectedly a transformed polynomial function")
    return res


def xor_fixture(result: SuiteResult | None = None) -> SuiteResult:
    res = result or SuiteResult("xor-hat")
    C2 = chain(2)
    xor = FunctionTable(2, C2, C2, [0, 1, 1, 0])
    res.checked = 1
    if hat(xor, "dnf") != (0, 0, 0, 1):
        res.fail(xor, f"hat dnf = {hat(xor, 'dnf')}, expected AND")
    if hat(xor, "cnf") != (0, 1, 1, 1):
        res.fail(xor, f"hat cnf = {hat(xor, 'cnf')}, expected OR")
    return res


# -- suite drivers ----------------------------------------------------------

SUITES = ("core", "chains", "transformed", "all")


def run_suite(suite: str, max_elems: int = 3, max_arity: int = 2, seed: int = 0,
              progress: Callable[[str], None] | None = None) -> list[SuiteResult]:
    """Run a named battery over chain spaces bounded by ``max_elems``/``max_arity``."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    budget = oracle.EnumerationBudget(seed=seed)
    say = progress or (lambda s: None)
    spaces = chain_spaces(max_elems, max_arity)
    squares = [s for s in spaces if s[1] == s[2]]
    results: list[SuiteResult] = []

    def over(name, fn, spaces_):
        res = SuiteResult(name)
        for sp in spaces_:
            say(f"{name}: {_space_label(sp)}")
            fn(list(_functions(sp, budget)), res)
        results.append(res)

    if suite in ("core", "all"):
        over("median-homogeneity", median_and_homogeneity, squares)
        over("quasi-median-oracle", quasi_median_vs_oracle, spaces)
        over("quasi-homogeneity", homogeneity_decompositions, spaces)
        over("hat-agreement", hat_agreement, spaces)
        over("factorization-sets", factorization_sets, spaces)
        over("horizontal-search", horizontal_search, spaces)
        over("quasi-sugeno", sugeno_factorizations, spaces)
        ident = SuiteResult("identities")
        for sp in spaces:
            say(f"identities: {_space_label(sp)}")
            polynomial_identities(sp, ident)
        results.append(ident)
        results.append(xor_fixture())
    if suite in ("chains", "all"):
        over("comonotone-chains", comonotone_chains, squares)
        over("quasi-comonotone", quasi_comonotone, spaces)
    if suite in ("transformed", "all"):
        over("transformed-oracle", transformed_vs_oracle, spaces)
        tid = SuiteResult("transformed-identities")
        qpr = SuiteResult("quasi-promotion")
        for sp in spaces:
            say(f"transformed identities: {_space_label(sp)}")
            transformed_identities(sp, tid)
            quasi_promotion(sp, qpr)
        results.extend([tid, qpr])
        if max_elems >= 3:
            results.append(remark_fixture())
    return sorted(results, key=lambda r: r.name)
