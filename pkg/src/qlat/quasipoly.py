"""Quasi-polynomial and transformed polynomial functions ``X^n -> Y``.

A quasi-polynomial function is ``p o phi`` (polynomial ``p`` over Y applied to
a unary ``phi`` whose values stay between ``phi(0)`` and ``phi(1)``); a
transformed polynomial function is ``psi o p`` with ``p`` polynomial over X.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .lattice import Lattice, UnaryMap, convex_hull, is_homomorphism, satisfies_bracket_condition
from .polyfn import (
    MAX_COMONOTONE_ARITY,
    FunctionTable,
    PolynomialForm,
    comonotone_check,
    goodstein_extend,
    homogeneity_check,
    is_polynomial,
    is_sugeno,
    median_check,
    order_check,
)
from . import kernels
from .report import Check, Report

KINDS = ("generic", "sugeno", "transformed")


class NotQuasiPolynomialError(ValueError):
    def __init__(self, witness):
        super().__init__(f"not quasi-median decomposable at (x, k) = {witness}")
        self.witness = witness


class NotTransformedError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    """``f = p o phi`` (generic/sugeno) or ``f = phi o p`` (transformed).

    For the transformed kind ``p`` lives over the domain lattice and ``phi``
    holds the outer transform.
    """

    p: PolynomialForm
    phi: UnaryMap
    kind: str = "generic"
    verified: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown factorization kind {self.kind!r}")
        if self.kind != "transformed" and not satisfies_bracket_condition(self.phi):
            raise ValueError("inner map does not satisfy the bracket condition")

    def compose(self) -> FunctionTable:
        if self.kind == "transformed":
            return self.p.table.compose_outer(self.phi)
        return self.p.table.compose_inner(self.phi)


@dataclass
class QuasiReport(Report):
    factorization: Factorization | None = None
    oracle_decided: bool = False

    def to_json(self) -> dict:
        out = super().to_json()
        if self.oracle_decided:
            out["oracle_decided"] = True
        return out


def diagonal(f: FunctionTable) -> UnaryMap:
    return f.diagonal()


def med_values(Y: Lattice, lo: int, v: np.ndarray, hi: int) -> np.ndarray:
    m, j = Y.meet, Y.join
    return j[j[m[lo, v], m[v, hi]], m[hi, lo]]


def bracket_function(g: FunctionTable, lo: int, hi: int) -> FunctionTable:
    """``x -> med(lo, g(x), hi)``."""
    return FunctionTable(g.arity, g.domain, g.codomain, med_values(g.codomain, lo, g.values, hi))


def bracket_unary(phi: UnaryMap, lo: int, hi: int) -> UnaryMap:
    return UnaryMap(phi.domain, phi.codomain, med_values(phi.codomain, lo, phi.table, hi))


def hat(f: FunctionTable, mode: str = "dnf") -> tuple[int, ...]:
    """Order-preserving data on binary tuples built from f's binary values.

    ``dnf`` joins over the coordinates set in ``e`` of meets over the unset
    ones; ``cnf`` nests the other way round. Indexed by subset bitmask.
    """
    if mode not in ("dnf", "cnf"):
        raise ValueError("mode must be 'dnf' or 'cnf'")
    Y, n = f.codomain, f.arity
    full = (1 << n) - 1
    vals = f.binary_values()
    out = []
    for e in range(1 << n):
        ones, zeros = e, full ^ e
        outer_op, inner_op = (Y.join, Y.meet) if mode == "dnf" else (Y.meet, Y.join)
        outer_sub, inner_sub = (ones, zeros) if mode == "dnf" else (zeros, ones)
        acc = None
        a = outer_sub
        while True:
            inner = None
            b = inner_sub
            while True:
                v = vals[a | b]
                inner = v if inner is None else int(inner_op[inner, v])
                if b == 0:
                    break
                b = (b - 1) & inner_sub
            acc = inner if acc is None else int(outer_op[acc, inner])
            if a == 0:
                break
            a = (a - 1) & outer_sub
        out.append(acc)
    return tuple(out)


def is_quasi_polynomial(f: FunctionTable) -> QuasiReport:
    chk = median_check(f, f.diagonal())
    rep = QuasiReport({"quasi_polynomial": chk}, "quasi_polynomial")
    if chk:
        rep.factorization = _canonical(f)
    return rep


def _canonical(f: FunctionTable) -> Factorization:
    p = goodstein_extend(hat(f, "dnf"), f.codomain, f.arity)
    delta = f.diagonal()
    ok = p.table.compose_inner(delta) == f
    return Factorization(p, delta, "generic", ok)


def canonical_factorization(f: FunctionTable) -> Factorization:
    chk = median_check(f, f.diagonal())
    if not chk:
        raise NotQuasiPolynomialError(chk.witness)
    fac = _canonical(f)
    if not fac.verified:
        raise AssertionError("canonical factorization failed to reproduce f")
    return fac


def verify_factorization(f: FunctionTable, cand: Factorization) -> bool:
    if cand.p.arity != f.arity:
        raise ValueError("arity mismatch")
    if cand.kind == "transformed":
        if cand.p.lattice != f.domain or cand.phi.domain != f.domain or cand.phi.codomain != f.codomain:
            raise ValueError("lattice mismatch")
    elif cand.p.lattice != f.codomain or cand.phi.domain != f.domain or cand.phi.codomain != f.codomain:
        raise ValueError("lattice mismatch")
    return cand.compose() == f


def enumerate_factorizations(f: FunctionTable, budget: oracle.EnumerationBudget | None = None) -> list[Factorization]:
    """Every (p, phi) with p polynomial over Y, phi satisfying the bracket condition, p o phi = f."""
    budget = budget or oracle.EnumerationBudget()
    polys = oracle.enumerate_polynomials(f.arity, f.codomain, budget)
    maps = oracle.enumerate_bracket_maps(f.domain, f.codomain, budget)
    if len(polys) * len(maps) > budget.max_candidates:
        raise oracle.BudgetExceeded(f"{len(polys)} x {len(maps)} candidate pairs")
    out = []
    for p in polys:
        pt = p.table
        for phi in maps:
            if pt.compose_inner(phi) == f:
                out.append(Factorization(p, phi, "generic", True))
    return out


def quasi_sugeno_factorization(f: FunctionTable) -> Factorization:
    """Replace ``p_f`` by the Sugeno integral agreeing with it off the two corners."""
    base = canonical_factorization(f)
    Y = f.codomain
    g = list(base.p.alpha)
    g[0], g[-1] = Y.bottom, Y.top
    q = goodstein_extend(g, Y, f.arity)
    fac = Factorization(q, base.phi, "sugeno", q.table.compose_inner(base.phi) == f)
    if not (fac.verified and is_sugeno(q.table)):
        raise AssertionError("Sugeno factorization failed to reproduce f")
    return fac


def horizontal_check(f: FunctionTable, meet: bool) -> Check:
    """meet: ``f(x) == f(x v c) ^ f([x]^c)``; join: ``f(x) == f(x ^ c) v f([x]_c)``."""
    X, Y = f.domain, f.codomain
    if meet:
        args = (X.join, Y.meet, X.leq, True, X.top)
    else:
        args = (X.meet, Y.join, X.leq, False, X.bottom)
    i, c = kernels.horizontal_witness(f.values, f.arity, X.size, *args)
    return Check(True) if i < 0 else Check(False, (f.tuple_at(i), c))


def quasi_property_report(f: FunctionTable) -> QuasiReport:
    delta = f.diagonal()
    hom = is_homomorphism(delta)
    checks = {
        "order_preserving": order_check(f),
        "delta_homomorphism": Check(hom),
        "quasi_meet_homogeneous": homogeneity_check(f, True, delta),
        "quasi_join_homogeneous": homogeneity_check(f, False, delta),
        "horizontally_meet_decomposable": horizontal_check(f, True),
        "horizontally_join_decomposable": horizontal_check(f, False),
    }
    if f.codomain.is_chain and f.arity <= MAX_COMONOTONE_ARITY:
        checks["quasi_comonotonic_minitive"] = comonotone_check(f, True, delta)
        checks["quasi_comonotonic_maxitive"] = comonotone_check(f, False, delta)
    else:
        checks["quasi_comonotonic_minitive"] = Check(None)
        checks["quasi_comonotonic_maxitive"] = Check(None)
    c = {k: bool(v) for k, v in checks.items()}
    checks["hypotheses"] = Check(c["order_preserving"] and hom)
    checks["homogeneous_pair"] = Check(c["quasi_meet_homogeneous"] and c["quasi_join_homogeneous"])
    checks["meet_homogeneous_join_decomposable"] = Check(
        c["quasi_meet_homogeneous"] and c["horizontally_join_decomposable"])
    checks["meet_decomposable_join_homogeneous"] = Check(
        c["horizontally_meet_decomposable"] and c["quasi_join_homogeneous"])
    if checks["quasi_comonotonic_minitive"].holds is None:
        checks["quasi_comonotonic_pair"] = Check(None)
    else:
        checks["quasi_comonotonic_pair"] = Check(
            c["quasi_comonotonic_minitive"] and c["quasi_comonotonic_maxitive"])
    return QuasiReport(checks)


def is_unary_polynomial(phi: UnaryMap) -> bool:
    if phi.domain != phi.codomain:
        raise ValueError("unary polynomial test needs domain == codomain")
    rng = phi.range()
    return phi.compose(phi) == phi and is_homomorphism(phi) and convex_hull(phi.codomain, rng) == rng


def quasi_idempotency_check(f: FunctionTable) -> Check:
    """Witness is ``(x, f(x))`` for the first value outside the diagonal's range."""
    drange = f.diagonal().range()
    for i, v in enumerate(f.values.tolist()):
        if v not in drange:
            return Check(False, (f.tuple_at(i), v))
    return Check(True)


def is_quasi_idempotent(f: FunctionTable) -> bool:
    return f.diagonal().range() == f.range()


def right_inverse(phi: UnaryMap) -> dict[int, int]:
    """Minimum-index preimage for every value in the range of ``phi``."""
    h: dict[int, int] = {}
    for x, y in enumerate(phi.table.tolist()):
        h.setdefault(y, x)
    return dict(sorted(h.items()))


def is_transformed_polynomial(f: FunctionTable, budget: oracle.EnumerationBudget | None = None) -> QuasiReport:
    delta = f.diagonal()
    hom = is_homomorphism(delta)
    checks = {"delta_homomorphism": Check(hom)}
    if hom:
        qi = quasi_idempotency_check(f)
        qp = median_check(f, delta)
        checks["quasi_idempotent"] = qi
        checks["quasi_polynomial"] = qp
        checks["transformed_polynomial"] = Check(bool(qi and qp))
        return QuasiReport(checks, "transformed_polynomial")
    checks["transformed_polynomial"] = Check(oracle.oracle_transformed_membership(f, budget))
    return QuasiReport(checks, "transformed_polynomial", oracle_decided=True)


def transformed_factorization(f: FunctionTable) -> Factorization:
    """``psi = delta_f`` and ``p`` the polynomial over X with DNF coefficients ``h(f(e_I))``."""
    delta = f.diagonal()
    if not is_homomorphism(delta):
        raise NotTransformedError("diagonal section is not a lattice homomorphism")
    if not is_transformed_polynomial(f):
        raise NotTransformedError("function is not a transformed polynomial function")
    h = right_inverse(delta)
    X = f.domain
    coeffs = tuple(h[v] for v in f.binary_values())
    p = PolynomialForm(f.arity, X, coeffs).canonicalize()
    fac = Factorization(p, delta, "transformed", p.table.compose_outer(delta) == f)
    if not fac.verified:
        raise AssertionError("transformed factorization failed to reproduce f")
    return fac


def promote_to_polynomial(f: FunctionTable) -> Report:
    """Polynomial test for quasi-/transformed polynomial ``f: X^n -> X`` via its diagonal."""
    if f.domain != f.codomain:
        raise ValueError("promotion needs domain == codomain")
    if not (median_check(f, f.diagonal()) or oracle.oracle_transformed_membership(f)):
        raise ValueError("function is neither quasi-polynomial nor transformed polynomial")
    delta = f.diagonal()
    bad = [c for c in sorted(f.range()) if delta(c) != c]
    drange = delta.range()
    checks = {
        "range_idempotent": Check(not bad, (bad[0],) if bad else None),
        "delta_homomorphism": Check(is_homomorphism(delta)),
        "delta_range_convex": Check(convex_hull(f.domain, drange) == drange),
    }
    checks["criterion"] = Check(all(bool(v) for v in checks.values()))
    checks["polynomial"] = is_polynomial(f)["polynomial"]
    checks["agree"] = Check(checks["criterion"].holds == checks["polynomial"].holds)
    return Report(checks, "criterion")


def remark_counterexample(Y: Lattice | None = None) -> tuple[FunctionTable, PolynomialForm, UnaryMap]:
    """Three-element-chain analogue of the step-utility example that is not quasi-idempotent.

    ``phi`` jumps from bottom to top at the middle element ``m`` and
    ``p = med(x1 ^ x2, m, x1 v x2)``; returns ``(f, p, phi)`` with ``f = p o phi``.
    """
    from .lattice import chain

    C = Y or chain(3)
    m = 1
    phi = UnaryMap(C, C, [C.top if C.leq[m, x] else C.bottom for x in C.elements])
    # med(x1^x2, m, x1vx2) = (x1^x2) v (m^x1) v (m^x2) on a distributive lattice
    p = PolynomialForm(2, C, (C.bottom, m, m, C.top)).canonicalize()
    return p.table.compose_inner(phi), p, phi
