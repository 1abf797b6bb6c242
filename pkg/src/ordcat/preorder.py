"""Finite preorders and monotone maps: the Ord backend.

Elements of a preorder of size ``n`` are the integers ``0..n-1``.  Values
are immutable; every operation returns fresh objects.

The constructions here are the finite 2-limits and 2-colimits used by the
relation calculus: products, coproducts, pullbacks, comma objects,
coinserters and the (so, ff) image factorisation.
"""

from itertools import permutations, product as iproduct

import numpy as np

from . import _kernels as K
from .errors import NotAPreorder, NotMonotone, PreconditionError, ShapeMismatch


def _frozen_bool(a, shape=None):
    arr = np.array(a, dtype=bool)
    if shape is not None:
        arr = arr.reshape(shape)
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


class FinPreorder:
    """A finite preorder given by its boolean ``leq`` matrix."""

    __slots__ = ("leq",)

    def __init__(self, leq, check=True):
        leq = np.asarray(leq, dtype=bool)
        if leq.ndim != 2:
            leq = leq.reshape((0, 0)) if leq.size == 0 else leq
        if leq.shape[0] != leq.shape[1]:
            raise ShapeMismatch(f"order matrix must be square, got {leq.shape}")
        leq = _frozen_bool(leq)
        if check:
            n = leq.shape[0]
            bad = np.flatnonzero(~leq[np.arange(n), np.arange(n)])
            if len(bad):
                raise NotAPreorder(f"not reflexive at {int(bad[0])}")
            if not np.array_equal(K.rt_closure(leq), leq):
                i, j = np.argwhere(K.rt_closure(leq) & ~leq)[0]
                raise NotAPreorder(f"not transitive: {int(i)} <= {int(j)} is implied but missing")
        self.leq = leq

    @property
    def size(self):
        return self.leq.shape[0]

    def __len__(self):
        return self.size

    def __repr__(self):
        pairs = [(int(i), int(j)) for i, j in np.argwhere(self.leq) if i != j]
        return f"FinPreorder(size={self.size}, strict={pairs})"

    def __eq__(self, other):
        return isinstance(other, FinPreorder) and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))

    def le(self, i, j):
        return bool(self.leq[i, j])

    def equivalent(self, i, j):
        return bool(self.leq[i, j] and self.leq[j, i])

    def is_antisymmetric(self):
        return not np.any(self.leq & self.leq.T & ~np.eye(self.size, dtype=bool))

    def is_discrete(self):
        return np.array_equal(self.leq, np.eye(self.size, dtype=bool))

    def is_symmetric(self):
        return np.array_equal(self.leq, self.leq.T)

    def opposite(self):
        return FinPreorder(self.leq.T, check=False)

    def restrict(self, elements):
        """Sub-preorder on ``elements`` (listed in the given order)."""
        idx = np.asarray(list(elements), dtype=np.int64)
        return FinPreorder(self.leq[np.ix_(idx, idx)], check=False)

    # -- named instances ----------------------------------------------------

    @classmethod
    def discrete(cls, n):
        return cls(np.eye(n, dtype=bool), check=False)

    @classmethod
    def chain(cls, n):
        return cls(np.triu(np.ones((n, n), dtype=bool)), check=False)

    @classmethod
    def indiscrete(cls, n):
        return cls(np.ones((n, n), dtype=bool), check=False)

    @classmethod
    def empty(cls):
        return cls.discrete(0)

    @classmethod
    def point(cls):
        return cls.discrete(1)


def closure_preorder(size, pairs=()):
    """Smallest preorder on ``size`` elements containing ``pairs``."""
    m = np.zeros((size, size), dtype=bool)
    for i, j in pairs:
        if not (0 <= i < size and 0 <= j < size):
            raise IndexError(f"pair {(i, j)} out of range for size {size}")
        m[i, j] = True
    return FinPreorder(K.rt_closure(m), check=False)


class MonotoneMap:
    """A monotone map between finite preorders, stored as a lookup table."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom, cod, table, check=True):
        t = np.array(table, dtype=np.int64).reshape(-1)
        if len(t) != dom.size:
            raise ShapeMismatch(f"table has {len(t)} entries, domain has {dom.size}")
        if check:
            if len(t) and (t.min() < 0 or t.max() >= cod.size):
                raise ShapeMismatch("table value outside codomain")
            img = cod.leq[np.ix_(t, t)]
            bad = np.argwhere(dom.leq & ~img)
            if len(bad):
                a, b = bad[0]
                raise NotMonotone(f"{a} <= {b} but f({a})={t[a]} is not <= f({b})={t[b]}")
        t.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.table = t

    def __call__(self, i):
        return int(self.table[i])

    def __repr__(self):
        return f"MonotoneMap({self.dom.size}->{self.cod.size}, {self.table.tolist()})"

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneMap)
            and self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.table.tobytes()))

    def __matmul__(self, other):
        """``g @ f`` is the composite ``g . f`` (apply ``f`` first)."""
        if other.cod != self.dom:
            raise ShapeMismatch("composite of non-composable maps")
        return MonotoneMap(other.dom, self.cod, self.table[other.table], check=False)

    def image(self):
        return sorted(set(self.table.tolist()))

    @classmethod
    def identity(cls, X):
        return cls(X, X, np.arange(X.size), check=False)

    @classmethod
    def constant(cls, X, Y, y):
        return cls(X, Y, np.full(X.size, y, dtype=np.int64), check=False)


# --------------------------------------------------------------------------
# hom-preorder and the two classes of morphisms
# --------------------------------------------------------------------------

def _parallel(f, g):
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("maps are not parallel")


def hom_leq(f, g):
    """Pointwise order: ``f <= g`` iff ``f(a) <= g(a)`` for every ``a``."""
    _parallel(f, g)
    return bool(np.all(f.cod.leq[f.table, g.table]))


def hom_equiv(f, g):
    return hom_leq(f, g) and hom_leq(g, f)


def is_ff(f):
    """Fully faithful: ``f(a) <= f(a')`` implies ``a <= a'``."""
    t = f.table
    return bool(np.all(~f.cod.leq[np.ix_(t, t)] | f.dom.leq))


def is_injective(f):
    return len(set(f.table.tolist())) == f.dom.size


def is_ff_mono(f):
    return is_ff(f) and is_injective(f)


def is_so(f):
    # so-morphisms of Ord are taken to be the surjections; the orthogonality
    # property is verified separately in the test suite.
    return len(set(f.table.tolist())) == f.cod.size


def is_equivalence(f):
    """``f`` is an equivalence of preorders (iso in the Ord-enriched sense)."""
    return is_ff(f) and is_so(f)


def so_ff_factorize(f):
    """Factor ``f = m @ e`` through its image with the restricted order."""
    img = f.image()
    where = {y: i for i, y in enumerate(img)}
    I = f.cod.restrict(img)
    e = MonotoneMap(f.dom, I, [where[y] for y in f.table.tolist()], check=False)
    m = MonotoneMap(I, f.cod, img, check=False)
    return e, m


# --------------------------------------------------------------------------
# finite limits and colimits
# --------------------------------------------------------------------------

def _subobject(pairs, leq_a, leq_b):
    pa = np.array([p[0] for p in pairs], dtype=np.int64)
    pb = np.array([p[1] for p in pairs], dtype=np.int64)
    leq = leq_a[np.ix_(pa, pa)] & leq_b[np.ix_(pb, pb)]
    return FinPreorder(leq.reshape(len(pairs), len(pairs)), check=False), pa, pb


def product(X, Y):
    """Componentwise product; element ``(x, y)`` has index ``x * |Y| + y``."""
    pairs = list(iproduct(range(X.size), range(Y.size)))
    P, pa, pb = _subobject(pairs, X.leq, Y.leq)
    return P, MonotoneMap(P, X, pa, check=False), MonotoneMap(P, Y, pb, check=False)


def pair_map(f, h):
    """The pairing ``<f, h>: X -> Y x Z`` into :func:`product`."""
    if f.dom != h.dom:
        raise ShapeMismatch("pairing needs a shared domain")
    P, _, _ = product(f.cod, h.cod)
    return MonotoneMap(f.dom, P, f.table * h.cod.size + h.table, check=False)


def product_map(f, g):
    """``f x g: X x Y -> X' x Y'``."""
    _, p1, p2 = product(f.dom, g.dom)
    return pair_map(f @ p1, g @ p2)


def coproduct(X, Y):
    """Disjoint union, ``X`` first; no order across the summands."""
    n, m = X.size, Y.size
    leq = np.zeros((n + m, n + m), dtype=bool)
    leq[:n, :n] = X.leq
    leq[n:, n:] = Y.leq
    S = FinPreorder(leq, check=False)
    i1 = MonotoneMap(X, S, np.arange(n), check=False)
    i2 = MonotoneMap(Y, S, np.arange(n, n + m), check=False)
    return S, i1, i2


def copair(f, g):
    """``(f g): X + Y -> Z``."""
    if f.cod != g.cod:
        raise ShapeMismatch("copairing needs a shared codomain")
    S, _, _ = coproduct(f.dom, g.dom)
    return MonotoneMap(S, f.cod, np.concatenate([f.table, g.table]), check=False)


def pullback(f, g):
    """Strict (= 2-) pullback of the cospan ``X -f-> Z <-g- Y``."""
    if f.cod != g.cod:
        raise ShapeMismatch("pullback of maps with different codomains")
    pairs = [(x, y) for x in range(f.dom.size) for y in range(g.dom.size)
             if f.table[x] == g.table[y]]
    P, pa, pb = _subobject(pairs, f.dom.leq, g.dom.leq)
    return P, MonotoneMap(P, f.dom, pa, check=False), MonotoneMap(P, g.dom, pb, check=False)


def comma(f, g):
    """Comma object ``f/g``: pairs ``(x, z)`` with ``f(x) <= g(z)``.

    The carrier is listed lexicographically; the projections are returned
    alongside the object.
    """
    if f.cod != g.cod:
        raise ShapeMismatch("comma of maps with different codomains")
    ok = f.cod.leq[np.ix_(f.table, g.table)]
    pairs = [tuple(map(int, p)) for p in np.argwhere(ok)]
    P, pa, pb = _subobject(pairs, f.dom.leq, g.dom.leq)
    return P, MonotoneMap(P, f.dom, pa, check=False), MonotoneMap(P, g.dom, pb, check=False)


def coinserter(a, b):
    """Coinserter of a parallel pair ``a, b: A -> X``.

    Returns ``c: X -> B`` where ``B`` is ``X`` with the order generated by
    ``X.leq`` and all pairs ``(a(t), b(t))``; ``c`` is the identity on points.
    """
    _parallel(a, b)
    m = a.cod.leq.copy()
    m[a.table, b.table] = True
    B = FinPreorder(K.rt_closure(m), check=False)
    return MonotoneMap(a.cod, B, np.arange(a.cod.size), check=False)


def factor_through(c, h):
    """The unique ``lam`` with ``lam @ c == h`` for a coinserter map ``c``.

    Returns ``None`` when ``h`` does not factor monotonically.
    """
    try:
        return MonotoneMap(c.cod, h.cod, h.table)
    except NotMonotone:
        return None


def bicoinserter_check(e):
    """Whether the so-morphism ``e`` is the coinserter of its comma projections.

    The induced comparison from the coinserter to ``cod(e)`` must be an
    equivalence of preorders.
    """
    if not is_so(e):
        raise PreconditionError("bicoinserter_check expects an so-morphism")
    _, p1, p2 = comma(e, e)
    c = coinserter(p1, p2)
    lam = factor_through(c, e)
    return lam is not None and is_equivalence(lam)


# --------------------------------------------------------------------------
# enumeration and isomorphism (small sizes only)
# --------------------------------------------------------------------------

def all_preorders(n):
    """Every preorder on ``{0..n-1}`` (labelled), in a fixed order."""
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = []
    found = set()
    for bits in range(1 << len(offdiag)):
        m = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(offdiag):
            if bits >> k & 1:
                m[i, j] = True
        if np.array_equal(K.rt_closure(m), m):
            key = m.tobytes()
            if key not in found:
                found.add(key)
                seen.append(FinPreorder(m, check=False))
    return seen


def all_monotone_maps(X, Y):
    """Every monotone map ``X -> Y``, by backtracking in index order."""
    out = []
    t = [0] * X.size
    n = X.size

    def extend(i):
        if i == n:
            out.append(MonotoneMap(X, Y, t, check=False))
            return
        for v in range(Y.size):
            if all((not X.leq[j, i] or Y.leq[t[j], v]) and (not X.leq[i, j] or Y.leq[v, t[j]])
                   for j in range(i)):
                t[i] = v
                extend(i + 1)

    extend(0)
    return out


def find_isomorphism(X, Y):
    """A bijection ``X -> Y`` preserving and reflecting order, or ``None``."""
    if X.size != Y.size:
        return None
    if sorted(X.leq.sum(axis=1)) != sorted(Y.leq.sum(axis=1)):
        return None
    for perm in permutations(range(Y.size)):
        p = np.array(perm, dtype=np.int64)
        if np.array_equal(Y.leq[np.ix_(p, p)], X.leq):
            return MonotoneMap(X, Y, p, check=False)
    return None


def is_isomorphic(X, Y):
    return find_isomorphism(X, Y) is not None
