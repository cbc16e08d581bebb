"""Brute-force enumerators and membership oracles.

Nothing here uses the characterization theorems: membership is decided by
building every composition and looking the table up.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .lattice import Lattice, UnaryMap
from .polyfn import FunctionTable, PolynomialForm

DEFAULT_CAP = 10**6
SAMPLE_BLOCK = 1024


class BudgetExceeded(RuntimeError):
    pass


def _default_cap() -> int:
    return int(os.environ.get("QLAT_BUDGET", DEFAULT_CAP))


@dataclass(frozen=True)
class EnumerationBudget:
    max_candidates: int = field(default_factory=_default_cap)
    max_checks: int = 10**9
    seed: int = 0

    def __post_init__(self):
        if self.max_candidates <= 0 or self.max_checks <= 0:
            raise ValueError("budget caps must be positive")


def _budget(budget: EnumerationBudget | None) -> EnumerationBudget:
    return budget if budget is not None else EnumerationBudget()


def enumerate_polynomials(n: int, Y: Lattice, budget: EnumerationBudget | None = None) -> list[PolynomialForm]:
    """One canonical form per polynomial function ``Y^n -> Y``.

    Backtracks over order-preserving maps from the subset lattice of ``[n]``
    to ``Y``, assigning bitmasks in increasing order.
    """
    budget = _budget(budget)
    full = 1 << n
    out: list[PolynomialForm] = []
    vals = [0] * full
    leq = Y.leq

    def fill(m: int):
        if m == full:
            if len(out) >= budget.max_candidates:
                raise BudgetExceeded(f"more than {budget.max_candidates} polynomial forms")
            alpha = tuple(vals)
            beta = tuple(alpha[(full - 1) ^ i] for i in range(full))
            out.append(PolynomialForm(n, Y, alpha, beta, True))
            return
        subs = [vals[m & ~(1 << k)] for k in range(n) if m >> k & 1]
        for v in Y.elements:
            if all(leq[s, v] for s in subs):
                vals[m] = v
                fill(m + 1)

    fill(0)
    return out


def enumerate_bracket_maps(X: Lattice, Y: Lattice, budget: EnumerationBudget | None = None) -> list[UnaryMap]:
    """All ``phi: X -> Y`` with every value between ``phi(bottom)`` and ``phi(top)``."""
    budget = _budget(budget)
    if Y.size**X.size > budget.max_candidates:
        raise BudgetExceeded(f"{Y.size}^{X.size} unary maps exceed the candidate cap")
    out = []
    for t in itertools.product(range(Y.size), repeat=X.size):
        lo, hi = t[X.bottom], t[X.top]
        if all(Y.med(lo, v, hi) == v for v in t):
            out.append(UnaryMap(X, Y, t))
    return out


def all_unary_maps(X: Lattice, Y: Lattice, budget: EnumerationBudget | None = None) -> list[UnaryMap]:
    budget = _budget(budget)
    if Y.size**X.size > budget.max_candidates:
        raise BudgetExceeded(f"{Y.size}^{X.size} unary maps exceed the candidate cap")
    return [UnaryMap(X, Y, t) for t in itertools.product(range(Y.size), repeat=X.size)]


@lru_cache(maxsize=64)
def quasi_image(n: int, X: Lattice, Y: Lattice, budget: EnumerationBudget) -> dict[bytes, tuple[PolynomialForm, UnaryMap]]:
    """Every table ``p o phi`` mapped to the first (p, phi) producing it."""
    polys = enumerate_polynomials(n, Y, budget)
    maps = enumerate_bracket_maps(X, Y, budget)
    if len(polys) * len(maps) > budget.max_candidates:
        raise BudgetExceeded(f"{len(polys)} x {len(maps)} compositions exceed the candidate cap")
    image: dict[bytes, tuple[PolynomialForm, UnaryMap]] = {}
    for p in polys:
        pv = p.table.values
        for phi in maps:
            key = _compose_values(pv, phi.table, n, X.size, Y.size).tobytes()
            image.setdefault(key, (p, phi))
    return image


@lru_cache(maxsize=64)
def transformed_image(n: int, X: Lattice, Y: Lattice, budget: EnumerationBudget) -> dict[bytes, tuple[PolynomialForm, UnaryMap]]:
    """Every table ``psi o p`` (p polynomial on X, psi any map X -> Y)."""
    polys = enumerate_polynomials(n, X, budget)
    maps = all_unary_maps(X, Y, budget)
    if len(polys) * len(maps) > budget.max_candidates:
        raise BudgetExceeded(f"{len(polys)} x {len(maps)} compositions exceed the candidate cap")
    image: dict[bytes, tuple[PolynomialForm, UnaryMap]] = {}
    for p in polys:
        pv = p.table.values
        for psi in maps:
            image.setdefault(psi.table[pv].astype(np.int32).tobytes(), (p, psi))
    return image


def _compose_values(pv: np.ndarray, phi: np.ndarray, n: int, xsize: int, ysize: int) -> np.ndarray:
    # independent of the kernel path: index arithmetic on the full grid
    grid = np.array(list(itertools.product(range(xsize), repeat=n)), dtype=np.int64).reshape(-1, n)
    idx = np.zeros(len(grid), dtype=np.int64)
    for k in range(n):
        idx = idx * ysize + phi[grid[:, k]]
    return np.ascontiguousarray(pv[idx], dtype=np.int32)


def quasi_witness(f: FunctionTable, budget: EnumerationBudget | None = None):
    """A pair ``(p, phi)`` with ``p o phi == f``, or None."""
    return quasi_image(f.arity, f.domain, f.codomain, _budget(budget)).get(f.key())


def oracle_quasi_membership(f: FunctionTable, budget: EnumerationBudget | None = None) -> bool:
    return quasi_witness(f, budget) is not None


def transformed_witness(f: FunctionTable, budget: EnumerationBudget | None = None):
    """A pair ``(p, psi)`` with ``psi o p == f``, or None."""
    return transformed_image(f.arity, f.domain, f.codomain, _budget(budget)).get(f.key())


def oracle_transformed_membership(f: FunctionTable, budget: EnumerationBudget | None = None) -> bool:
    return transformed_witness(f, budget) is not None


def space_size(n: int, X: Lattice, Y: Lattice) -> int:
    return Y.size ** (X.size**n)


def function_space(n: int, X: Lattice, Y: Lattice, budget: EnumerationBudget | None = None) -> Iterator[FunctionTable]:
    """Every table ``X^n -> Y`` in lexicographic value order, or a seeded sample.

    Sampling draws blocks from a Philox generator keyed by ``(seed, block)``,
    so any block can be regenerated without replaying the ones before it.
    """
    budget = _budget(budget)
    width = X.check_tuple_space(n)
    if space_size(n, X, Y) <= budget.max_candidates:
        for vals in itertools.product(range(Y.size), repeat=width):
            yield FunctionTable(n, X, Y, vals)
        return
    seen: set[bytes] = set()
    block = 0
    while len(seen) < budget.max_candidates:
        gen = np.random.Generator(np.random.Philox(key=np.array([budget.seed, block], dtype=np.uint64)))
        rows = gen.integers(0, Y.size, size=(SAMPLE_BLOCK, width), dtype=np.int32)
        for row in rows:
            k = row.tobytes()
            if k in seen:
                continue
            seen.add(k)
            yield FunctionTable(n, X, Y, row)
            if len(seen) >= budget.max_candidates:
                return
        block += 1
