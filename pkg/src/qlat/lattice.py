"""Finite bounded distributive lattices stored as dense order/meet/join tables.

Elements are integer indices ``0..size-1``. After construction the bottom is
always ``0`` and the top always ``size - 1``; explicit orders are relabeled
along a linear extension so that index order refines the lattice order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

MAX_TUPLE_SPACE = 10**6
MAX_BOOLEAN_ATOMS = 4


class LatticeError(ValueError):
    """An explicit order failed one of the lattice invariants."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(f"{message}: witness {witness}" if witness else message)
        self.reason = message
        self.witness = witness


class SizeGuardError(ValueError):
    pass


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Lattice:
    """A validated finite bounded distributive lattice.

    ``leq[a, b]`` is 1 iff ``a <= b``; ``meet`` and ``join`` are the
    precomputed binary operation tables.
    """

    __slots__ = ("size", "leq", "meet", "join", "labels", "spec", "relabeling", "_key", "_chain")

    def __init__(self, leq, meet, join, labels=None, spec=None, relabeling=None):
        self.size = int(len(leq))
        self.leq = _freeze(np.asarray(leq, dtype=np.uint8))
        self.meet = _freeze(np.asarray(meet, dtype=np.int32))
        self.join = _freeze(np.asarray(join, dtype=np.int32))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.size))
        self.spec = spec
        self.relabeling = tuple(relabeling) if relabeling is not None else None
        self._key = (self.size, self.leq.tobytes())
        self._chain = None

    bottom = 0

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def elements(self) -> range:
        return range(self.size)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    @property
    def is_chain(self) -> bool:
        if self._chain is None:
            self._chain = bool(np.all(self.leq | self.leq.T))
        return self._chain

    def med(self, a: int, b: int, c: int) -> int:
        m, j = self.meet, self.join
        return int(j[j[m[a, b], m[b, c]], m[c, a]])

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.spec and self.spec.get("kind") == "chain":
            return f"chain({self.size})"
        if self.spec and self.spec.get("kind") == "boolean":
            return f"boolean({self.spec['atoms']})"
        return f"Lattice(size={self.size})"

    def check_tuple_space(self, n: int) -> int:
        """Return ``size**n``, refusing tuple spaces beyond the desk-scale guard."""
        total = self.size**n
        if total > MAX_TUPLE_SPACE:
            raise SizeGuardError(f"{self!r}^{n} has {total} tuples (limit {MAX_TUPLE_SPACE})")
        return total


# -- constructors -----------------------------------------------------------


def chain(k: int) -> Lattice:
    if k < 1:
        raise ValueError("a chain needs at least one element")
    idx = np.arange(k)
    leq = idx[:, None] <= idx[None, :]
    return Lattice(
        leq,
        np.minimum(idx[:, None], idx[None, :]),
        np.maximum(idx[:, None], idx[None, :]),
        spec={"kind": "chain", "size": k},
    )


def boolean(atoms: int) -> Lattice:
    """Powerset of ``atoms`` atoms; element index is the subset bitmask."""
    if not 0 <= atoms <= MAX_BOOLEAN_ATOMS:
        raise ValueError(f"boolean lattices support 0..{MAX_BOOLEAN_ATOMS} atoms")
    idx = np.arange(2**atoms)
    a, b = idx[:, None], idx[None, :]
    labels = []
    for m in idx:
        if m == 0:
            labels.append("0")
        elif m == idx[-1]:
            labels.append("1")
        else:
            labels.append("".join("abcd"[i] for i in range(atoms) if m >> i & 1))
    return Lattice((a & b) == a, a & b, a | b, labels=labels, spec={"kind": "boolean", "atoms": atoms})


def product(factors: Sequence[Lattice]) -> Lattice:
    """Componentwise product; the last factor varies fastest in the index."""
    if not factors:
        raise ValueError("product needs at least one factor")
    sizes = [f.size for f in factors]
    elems = list(itertools.product(*(range(s) for s in sizes)))
    index = {e: i for i, e in enumerate(elems)}
    m = len(elems)
    leq = np.zeros((m, m), dtype=np.uint8)
    meet = np.zeros((m, m), dtype=np.int32)
    join = np.zeros((m, m), dtype=np.int32)
    for i, e in enumerate(elems):
        for j, g in enumerate(elems):
            leq[i, j] = all(f.leq[a, b] for f, a, b in zip(factors, e, g))
            meet[i, j] = index[tuple(int(f.meet[a, b]) for f, a, b in zip(factors, e, g))]
            join[i, j] = index[tuple(int(f.join[a, b]) for f, a, b in zip(factors, e, g))]
    labels = ["(" + ",".join(f.labels[a] for f, a in zip(factors, e)) + ")" for e in elems]
    spec = {"kind": "product", "factors": [f.spec for f in factors]}
    return Lattice(leq, meet, join, labels=labels, spec=spec)


def explicit(leq_rows: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> Lattice:
    """Validate an arbitrary order matrix and build the lattice it describes.

    Raises :class:`LatticeError` carrying the first failing witness.
    """
    leq = np.array(leq_rows, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
        raise LatticeError("leq must be a non-empty square matrix")
    m = leq.shape[0]
    for a in range(m):
        if not leq[a, a]:
            raise LatticeError("not reflexive", (a, a, a))
    for a, b in itertools.product(range(m), repeat=2):
        if a != b and leq[a, b] and leq[b, a]:
            raise LatticeError("not antisymmetric", (a, b, a))
    for a, b, c in itertools.product(range(m), repeat=3):
        if leq[a, b] and leq[b, c] and not leq[a, c]:
            raise LatticeError("not transitive", (a, b, c))

    bottoms = [a for a in range(m) if leq[a].all()]
    tops = [a for a in range(m) if leq[:, a].all()]
    if not bottoms or not tops:
        raise LatticeError("not bounded", tuple(bottoms or tops))

    meet = np.zeros((m, m), dtype=np.int32)
    join = np.zeros((m, m), dtype=np.int32)
    for a, b in itertools.product(range(m), repeat=2):
        lower = [c for c in range(m) if leq[c, a] and leq[c, b]]
        glb = [c for c in lower if all(leq[d, c] for d in lower)]
        upper = [c for c in range(m) if leq[a, c] and leq[b, c]]
        lub = [c for c in upper if all(leq[c, d] for d in upper)]
        if not glb:
            raise LatticeError("no greatest lower bound", (a, b))
        if not lub:
            raise LatticeError("no least upper bound", (a, b))
        meet[a, b], join[a, b] = glb[0], lub[0]
    for a, b, c in itertools.product(range(m), repeat=3):
        if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
            raise LatticeError("not distributive", (a, b, c))

    # linear extension: strictly larger elements have strictly larger down-sets
    order = sorted(range(m), key=lambda a: (int(leq[:, a].sum()), a))
    new = {old: i for i, old in enumerate(order)}
    perm = np.array(order)
    leq2 = leq[np.ix_(perm, perm)]
    meet2 = np.vectorize(new.get)(meet[np.ix_(perm, perm)])
    join2 = np.vectorize(new.get)(join[np.ix_(perm, perm)])
    lab = [labels[o] for o in order] if labels is not None else [str(o) for o in order]
    spec = {"kind": "explicit", "size": m, "leq": leq2.astype(int).tolist()}
    return Lattice(leq2, meet2, join2, labels=lab, spec=spec, relabeling=order)


def make_lattice(spec: dict) -> Lattice:
    """Build a lattice from its JSON description (see the README for the schema)."""
    kind = spec.get("kind")
    if kind == "chain":
        return chain(int(spec["size"]))
    if kind == "boolean":
        return boolean(int(spec["atoms"]))
    if kind == "product":
        return product([make_lattice(f) for f in spec["factors"]])
    if kind == "explicit":
        rows = spec["leq"]
        if "size" in spec and spec["size"] != len(rows):
            raise LatticeError(f"size {spec['size']} does not match {len(rows)} leq rows")
        return explicit(rows, spec.get("labels"))
    raise ValueError(f"unknown lattice kind {kind!r}")


# -- element and tuple operations ------------------------------------------


def med(L: Lattice, a: int, b: int, c: int) -> int:
    return L.med(a, b, c)


def bracket(L: Lattice, x: Sequence[int], lo: int, hi: int) -> tuple[int, ...]:
    """Componentwise ``med(lo, x_i, hi)``; reversed or incomparable bounds are fine."""
    return tuple(L.med(lo, xi, hi) for xi in x)


def substitute(x: Sequence[int], k: int, c: int) -> tuple[int, ...]:
    if not 0 <= k < len(x):
        raise IndexError(f"coordinate {k} out of range for arity {len(x)}")
    y = list(x)
    y[k] = c
    return tuple(y)


def meet_const(L: Lattice, x: Sequence[int], c: int) -> tuple[int, ...]:
    return tuple(int(L.meet[xi, c]) for xi in x)


def join_const(L: Lattice, x: Sequence[int], c: int) -> tuple[int, ...]:
    return tuple(int(L.join[xi, c]) for xi in x)


def clip_floor(L: Lattice, x: Sequence[int], c: int) -> tuple[int, ...]:
    """Send every component ``<= c`` to the bottom."""
    return tuple(L.bottom if L.leq[xi, c] else xi for xi in x)


def clip_ceil(L: Lattice, x: Sequence[int], c: int) -> tuple[int, ...]:
    """Send every component ``>= c`` to the top."""
    return tuple(L.top if L.leq[c, xi] else xi for xi in x)


def tuple_surgery(L: Lattice, x: Sequence[int], kind: str, arg) -> tuple[int, ...]:
    """Dispatch by name; ``substitute`` takes ``arg=(k, c)`` with 0-based ``k``."""
    if kind == "substitute":
        k, c = arg
        return substitute(x, k, c)
    ops = {"meet_const": meet_const, "join_const": join_const,
           "clip_floor": clip_floor, "clip_ceil": clip_ceil}
    if kind not in ops:
        raise ValueError(f"unknown surgery {kind!r}")
    return ops[kind](L, x, arg)


def convex_hull(L: Lattice, subset: Iterable[int]) -> frozenset[int]:
    s = list(subset)
    return frozenset(c for c in L.elements if any(L.leq[a, c] for a in s) and any(L.leq[c, b] for b in s))


# -- tuple indexing ---------------------------------------------------------


def tuple_index(x: Sequence[int], size: int) -> int:
    """Mixed-radix index with the last coordinate varying fastest."""
    i = 0
    for xi in x:
        i = i * size + xi
    return i


def index_tuple(i: int, n: int, size: int) -> tuple[int, ...]:
    out = [0] * n
    for k in range(n - 1, -1, -1):
        i, out[k] = divmod(i, size)
    return tuple(out)


@dataclass(frozen=True)
class TupleCursor:
    arity: int
    domain: Lattice
    index: int = 0

    @classmethod
    def at(cls, domain: Lattice, x: Sequence[int]) -> "TupleCursor":
        return cls(len(x), domain, tuple_index(x, domain.size))

    @property
    def tuple(self) -> tuple[int, ...]:
        return index_tuple(self.index, self.arity, self.domain.size)


_GRID_CACHE: dict[tuple[int, int], np.ndarray] = {}


def tuple_grid(n: int, size: int) -> np.ndarray:
    """All tuples of ``{0..size-1}^n`` as rows, in cursor order."""
    key = (n, size)
    if key not in _GRID_CACHE:
        if size**n > MAX_TUPLE_SPACE:
            raise SizeGuardError(f"{size}^{n} tuples exceeds {MAX_TUPLE_SPACE}")
        grid = np.array(list(itertools.product(range(size), repeat=n)), dtype=np.int32).reshape(size**n, n)
        _GRID_CACHE[key] = _freeze(grid)
    return _GRID_CACHE[key]


# -- unary maps -------------------------------------------------------------


class UnaryMap:
    """A total map between two lattices, stored as a table of codomain indices."""

    __slots__ = ("domain", "codomain", "table")

    def __init__(self, domain: Lattice, codomain: Lattice, table: Sequence[int]):
        t = np.asarray(table, dtype=np.int32).reshape(-1)
        if len(t) != domain.size:
            raise ValueError(f"table has {len(t)} entries, domain has {domain.size}")
        if len(t) and (t.min() < 0 or t.max() >= codomain.size):
            raise ValueError("table entry outside the codomain")
        self.domain = domain
        self.codomain = codomain
        self.table = _freeze(t)

    @classmethod
    def identity(cls, L: Lattice) -> "UnaryMap":
        return cls(L, L, range(L.size))

    @classmethod
    def constant(cls, X: Lattice, Y: Lattice, c: int) -> "UnaryMap":
        return cls(X, Y, [c] * X.size)

    def __call__(self, a: int) -> int:
        return int(self.table[a])

    def __eq__(self, other):
        return (isinstance(other, UnaryMap) and self.domain == other.domain
                and self.codomain == other.codomain and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.domain, self.codomain, self.table.tobytes()))

    def __repr__(self):
        return f"UnaryMap({self.table.tolist()})"

    def range(self) -> frozenset[int]:
        return frozenset(int(v) for v in self.table)

    def compose(self, inner: "UnaryMap") -> "UnaryMap":
        """``self`` after ``inner``."""
        return UnaryMap(inner.domain, self.codomain, self.table[inner.table])


@dataclass(frozen=True)
class UnaryReport:
    is_order_preserving: bool
    is_order_reversing: bool
    is_homomorphism: bool
    range: frozenset
    convex_hull_of_range: frozenset
    range_is_convex: bool
    satisfies_bracket_condition: bool


def is_order_preserving_map(phi: UnaryMap) -> bool:
    X, Y, t = phi.domain, phi.codomain, phi.table
    return all(Y.leq[t[a], t[b]] for a in X.elements for b in X.elements if X.leq[a, b])


def is_order_reversing_map(phi: UnaryMap) -> bool:
    X, Y, t = phi.domain, phi.codomain, phi.table
    return all(Y.leq[t[b], t[a]] for a in X.elements for b in X.elements if X.leq[a, b])


def is_homomorphism(phi: UnaryMap) -> bool:
    X, Y, t = phi.domain, phi.codomain, phi.table
    for a in X.elements:
        for b in X.elements:
            if t[X.meet[a, b]] != Y.meet[t[a], t[b]] or t[X.join[a, b]] != Y.join[t[a], t[b]]:
                return False
    return True


def satisfies_bracket_condition(phi: UnaryMap) -> bool:
    """``phi == <phi>_phi``: every value lies between ``phi(0)`` and ``phi(1)``."""
    X, Y, t = phi.domain, phi.codomain, phi.table
    lo, hi = t[X.bottom], t[X.top]
    return all(Y.med(lo, v, hi) == v for v in t)


def unary_predicates(phi: UnaryMap) -> UnaryReport:
    rng = phi.range()
    hull = convex_hull(phi.codomain, rng)
    return UnaryReport(
        is_order_preserving=is_order_preserving_map(phi),
        is_order_reversing=is_order_reversing_map(phi),
        is_homomorphism=is_homomorphism(phi),
        range=rng,
        convex_hull_of_range=hull,
        range_is_convex=hull == rng,
        satisfies_bracket_condition=satisfies_bracket_condition(phi),
    )
