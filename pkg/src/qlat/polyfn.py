"""Function tables, lattice polynomial functions and their normal forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping, Sequence

import numpy as np

from . import kernels
from .lattice import Lattice, UnaryMap, convex_hull, index_tuple, tuple_index
from .report import Check, Report

MAX_COMONOTONE_ARITY = 4


class NotOrderPreservingError(ValueError):
    def __init__(self, witness: tuple[int, int]):
        lo, hi = witness
        super().__init__(f"binary data not order-preserving: subset {lo:#b} below {hi:#b}")
        self.witness = witness


class FunctionTable:
    """A total map ``X^n -> Y`` stored densely in cursor order."""

    __slots__ = ("arity", "domain", "codomain", "values", "__weakref__")

    def __init__(self, arity: int, domain: Lattice, codomain: Lattice, values):
        total = domain.check_tuple_space(arity)
        v = np.asarray(values, dtype=np.int32).reshape(-1)
        if len(v) != total:
            raise ValueError(f"expected {total} values, got {len(v)}")
        if total and (v.min() < 0 or v.max() >= codomain.size):
            raise ValueError("value outside the codomain")
        if v.flags.writeable or not v.flags.c_contiguous:
            v = np.array(v)
            v.setflags(write=False)
        self.arity = arity
        self.domain = domain
        self.codomain = codomain
        self.values = v

    @classmethod
    def from_callable(cls, n: int, X: Lattice, Y: Lattice, fn: Callable[..., int]) -> "FunctionTable":
        vals = [fn(*x) for x in itertools.product(range(X.size), repeat=n)]
        return cls(n, X, Y, vals)

    def index(self, x: Sequence[int]) -> int:
        return tuple_index(x, self.domain.size)

    def tuple_at(self, i: int) -> tuple[int, ...]:
        return index_tuple(i, self.arity, self.domain.size)

    def __call__(self, *x) -> int:
        if len(x) == 1 and isinstance(x[0], (tuple, list)):
            x = tuple(x[0])
        return int(self.values[self.index(x)])

    def __len__(self) -> int:
        return len(self.values)

    def key(self) -> bytes:
        return self.values.tobytes()

    def __eq__(self, other):
        return (isinstance(other, FunctionTable) and self.arity == other.arity
                and self.domain == other.domain and self.codomain == other.codomain
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.arity, self.domain, self.codomain, self.key()))

    def __repr__(self):
        return f"FunctionTable(n={self.arity}, {self.domain!r}->{self.codomain!r}, {self.values.tolist()})"

    def range(self) -> frozenset[int]:
        return frozenset(np.unique(self.values).tolist())

    def diagonal(self) -> UnaryMap:
        n, s = self.arity, self.domain.size
        step = sum(s**k for k in range(n))
        return UnaryMap(self.domain, self.codomain, self.values[np.arange(s) * step])

    def at_bottom(self) -> int:
        return int(self.values[0])

    def at_top(self) -> int:
        return int(self.values[-1])

    def binary_index(self, mask: int) -> int:
        """Cursor index of ``e_I`` where bit ``k`` of ``mask`` puts the top at coordinate ``k``."""
        X = self.domain
        return tuple_index([X.top if mask >> k & 1 else X.bottom for k in range(self.arity)], X.size)

    def binary_values(self) -> tuple[int, ...]:
        return tuple(int(self.values[self.binary_index(m)]) for m in range(1 << self.arity))

    def compose_inner(self, phi: UnaryMap) -> "FunctionTable":
        """``self`` applied to ``phi`` coordinatewise: ``x -> self(phi(x_1), ..., phi(x_n))``."""
        if phi.codomain != self.domain:
            raise ValueError("phi codomain must equal the table's domain")
        vals = kernels.compose_table(self.values, phi.table, self.arity, phi.domain.size, self.domain.size)
        return FunctionTable(self.arity, phi.domain, self.codomain, vals)

    def compose_outer(self, psi: UnaryMap) -> "FunctionTable":
        """``psi`` applied to the output: ``x -> psi(self(x))``."""
        if psi.domain != self.codomain:
            raise ValueError("psi domain must equal the table's codomain")
        return FunctionTable(self.arity, self.domain, psi.codomain, psi.table[self.values])


def subset_order_witness(values: Sequence[int], n: int, Y: Lattice) -> tuple[int, int] | None:
    """First pair of bitmasks ``I < J`` (as sets) with ``values[I] </= values[J]``."""
    for i in range(1 << n):
        for j in range(i + 1, 1 << n):
            if j & i == i and not Y.leq[values[i], values[j]]:
                return i, j
    return None


@dataclass(frozen=True)
class PolynomialForm:
    """DNF coefficients ``alpha`` (optionally CNF ``beta``) indexed by subset bitmask.

    Bit ``k`` of the mask stands for coordinate ``k`` (0-based).
    """

    arity: int
    lattice: Lattice
    alpha: tuple[int, ...]
    beta: tuple[int, ...] | None = None
    canonical: bool = False

    def __post_init__(self):
        if len(self.alpha) != 1 << self.arity:
            raise ValueError(f"alpha needs {1 << self.arity} coefficients")
        if self.beta is not None and len(self.beta) != 1 << self.arity:
            raise ValueError(f"beta needs {1 << self.arity} coefficients")
        if self.canonical and subset_order_witness(self.alpha, self.arity, self.lattice) is not None:
            raise ValueError("canonical form requires order-preserving alpha")

    @cached_property
    def table(self) -> FunctionTable:
        Y = self.lattice
        vals = kernels.dnf_table(np.asarray(self.alpha, dtype=np.int32), self.arity, Y.size,
                                 Y.meet, Y.join, Y.top)
        return FunctionTable(self.arity, Y, Y, vals)

    def __call__(self, *x) -> int:
        if len(x) == 1 and isinstance(x[0], (tuple, list)):
            x = tuple(x[0])
        return eval_dnf(self, x)

    def canonicalize(self) -> "PolynomialForm":
        """The canonical form of the same function: ``alpha'(J) = join of alpha(I), I <= J``."""
        Y, n = self.lattice, self.arity
        acc = []
        for j in range(1 << n):
            v = Y.bottom
            for i in range(j + 1):
                if i & j == i:
                    v = int(Y.join[v, self.alpha[i]])
            acc.append(v)
        return goodstein_extend(acc, Y, n)


def eval_dnf(p: PolynomialForm, x: Sequence[int]) -> int:
    Y = p.lattice
    acc = Y.bottom
    for mask, a in enumerate(p.alpha):
        term = a
        for k in range(p.arity):
            if mask >> k & 1:
                term = Y.meet[term, x[k]]
        acc = Y.join[acc, term]
    return int(acc)


def eval_cnf(p: PolynomialForm, x: Sequence[int]) -> int:
    if p.beta is None:
        raise ValueError("form carries no CNF coefficients")
    Y = p.lattice
    acc = Y.top
    for mask, b in enumerate(p.beta):
        term = b
        for k in range(p.arity):
            if mask >> k & 1:
                term = Y.join[term, x[k]]
        acc = Y.meet[acc, term]
    return int(acc)


def _complement_values(values: Sequence[int], n: int) -> tuple[int, ...]:
    full = (1 << n) - 1
    return tuple(values[full ^ m] for m in range(1 << n))


def canonical_forms(f: FunctionTable) -> PolynomialForm:
    """Read ``alpha(I) = f(e_I)`` and ``beta(I) = f(e_{[n]-I})`` off the binary tuples."""
    if f.domain != f.codomain:
        raise ValueError("normal forms need domain == codomain")
    alpha = f.binary_values()
    canonical = subset_order_witness(alpha, f.arity, f.codomain) is None
    return PolynomialForm(f.arity, f.codomain, alpha, _complement_values(alpha, f.arity), canonical)


def goodstein_extend(g, Y: Lattice, n: int) -> PolynomialForm:
    """Unique polynomial extension of order-preserving data on binary tuples.

    ``g`` is either a sequence indexed by subset bitmask or a mapping from
    0/1 tuples to elements of ``Y``.
    """
    if isinstance(g, Mapping):
        g = [g[tuple(m >> k & 1 for k in range(n))] for m in range(1 << n)]
    g = tuple(int(v) for v in g)
    if len(g) != 1 << n:
        raise ValueError(f"need {1 << n} binary values, got {len(g)}")
    bad = subset_order_witness(g, n, Y)
    if bad is not None:
        raise NotOrderPreservingError(bad)
    return PolynomialForm(n, Y, g, _complement_values(g, n), True)


def is_polynomial(f: FunctionTable) -> Report:
    form = canonical_forms(f)
    diff = np.flatnonzero(form.table.values != f.values)
    if diff.size:
        chk = Check(False, f.tuple_at(int(diff[0])))
    else:
        chk = Check(form.canonical)
    return Report({"polynomial": chk}, "polynomial")


def median_check(f: FunctionTable, phi: UnaryMap) -> Check:
    X, Y = f.domain, f.codomain
    i, k = kernels.median_witness(f.values, f.arity, X.size, X.bottom, X.top, phi.table, Y.meet, Y.join)
    return Check(True) if i < 0 else Check(False, (f.tuple_at(i), k))


def is_median_decomposable(f: FunctionTable) -> Report:
    if f.domain != f.codomain:
        raise ValueError("median decomposability needs domain == codomain")
    chk = median_check(f, UnaryMap.identity(f.domain))
    return Report({"median_decomposable": chk}, "median_decomposable")


def is_sugeno(f: FunctionTable) -> bool:
    Y = f.codomain
    return bool(is_polynomial(f)) and f.at_bottom() == Y.bottom and f.at_top() == Y.top


# -- pointwise property checks shared with the quasi-polynomial module -------


def order_check(f: FunctionTable) -> Check:
    i, j = kernels.order_witness(f.values, f.arity, f.domain.size, f.domain.leq, f.codomain.leq)
    return Check(True) if i < 0 else Check(False, (f.tuple_at(i), f.tuple_at(j)))


def homogeneity_check(f: FunctionTable, meet: bool, phi: UnaryMap, consts=None) -> Check:
    """``f(x op c) == f(x) op phi(c)`` for ``c`` in ``consts`` (all of X by default)."""
    X, Y = f.domain, f.codomain
    mask = np.zeros(X.size, dtype=np.uint8)
    mask[list(consts) if consts is not None else slice(None)] = 1
    xop, yop = (X.meet, Y.meet) if meet else (X.join, Y.join)
    i, c = kernels.homogeneity_witness(f.values, f.arity, X.size, xop, yop, phi.table, mask)
    return Check(True) if i < 0 else Check(False, (f.tuple_at(i), c))


def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int32).reshape(-1, n)


def comonotone_check(f: FunctionTable, meet: bool, key: UnaryMap) -> Check:
    """``f(x op x') == f(x) op f(x')`` whenever ``key(x)`` and ``key(x')`` share a simplex."""
    X, Y = f.domain, f.codomain
    perms = _permutations(f.arity)
    xop, yop = (X.meet, Y.meet) if meet else (X.join, Y.join)
    i, i2, p = kernels.comonotone_witness(f.values, f.arity, X.size, key.table, key.codomain.leq,
                                          perms, xop, yop)
    if i < 0:
        return Check(True)
    return Check(False, (f.tuple_at(i), f.tuple_at(i2), tuple(int(s) for s in perms[p])))


def polynomial_property_report(f: FunctionTable) -> Report:
    if f.domain != f.codomain:
        raise ValueError("polynomial properties need domain == codomain")
    X = f.domain
    ident = UnaryMap.identity(X)
    hull = sorted(convex_hull(X, f.range()))
    delta = f.diagonal()
    bad = [c for c in hull if delta(c) != c]
    checks = {
        "order_preserving": order_check(f),
        "hull_idempotent": Check(not bad, (bad[0],) if bad else None),
        "meet_homogeneous": homogeneity_check(f, True, ident, hull),
        "join_homogeneous": homogeneity_check(f, False, ident, hull),
    }
    if X.is_chain and f.arity <= MAX_COMONOTONE_ARITY:
        checks["comonotonic_minitive"] = comonotone_check(f, True, ident)
        checks["comonotonic_maxitive"] = comonotone_check(f, False, ident)
    else:
        checks["comonotonic_minitive"] = Check(None)
        checks["comonotonic_maxitive"] = Check(None)
    checks["homogeneity_characterization"] = Check(
        bool(checks["order_preserving"] and checks["meet_homogeneous"] and checks["join_homogeneous"]))
    if checks["comonotonic_minitive"].holds is None:
        checks["comonotone_characterization"] = Check(None)
    else:
        checks["comonotone_characterization"] = Check(bool(
            checks["hull_idempotent"] and checks["comonotonic_minitive"] and checks["comonotonic_maxitive"]))
    return Report(checks)
