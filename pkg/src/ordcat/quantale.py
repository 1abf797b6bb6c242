"""Finite quantales, V-categories and the (V-Cat)^op constructions.

A finite unital integral quantale is given by tables over ``0..size-1``:
``leq`` (a lattice order), ``tensor`` and the unit index, which must be the
top element.  V-categories store their hom as a table of quantale indices.

Coproducts of V-categories put ``bottom`` across summands; products take
the meet of component homs.
"""

from itertools import product as iproduct

import numpy as np

from . import _kernels as K
from .errors import AxiomError, PreconditionError, ShapeMismatch


def _ro(a, dtype):
    arr = np.ascontiguousarray(np.array(a, dtype=dtype))
    arr.setflags(write=False)
    return arr


class FinQuantale:
    __slots__ = ("name", "leq", "tensor", "unit", "join", "meet", "top", "bottom")

    def __init__(self, leq, tensor, unit, name=None, check=True):
        self.name = name
        self.leq = _ro(leq, bool)
        n = self.leq.shape[0]
        self.tensor = _ro(np.reshape(tensor, (n, n)), np.int64)
        self.unit = int(unit)
        err = _lattice_problem(self.leq)
        if err:
            raise AxiomError(err)
        self.join, self.meet, self.top, self.bottom = _lattice_tables(self.leq)
        if check:
            err = quantale_violation(self)
            if err:
                raise AxiomError(err)

    @property
    def size(self):
        return self.leq.shape[0]

    def __repr__(self):
        return f"FinQuantale({self.name or self.size})"

    def __eq__(self, other):
        return (
            isinstance(other, FinQuantale)
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.tensor, other.tensor)
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.leq.tobytes(), self.tensor.tobytes(), self.unit))

    def le(self, a, b):
        return bool(self.leq[a, b])


def _lattice_problem(leq):
    n = leq.shape[0]
    if leq.shape != (n, n) or n == 0:
        return "order must be a non-empty square matrix"
    if not np.all(np.diag(leq)):
        return "order not reflexive"
    if np.any(leq & leq.T & ~np.eye(n, dtype=bool)):
        return "order not antisymmetric"
    if not np.array_equal(K.rt_closure(leq), leq):
        return "order not transitive"
    for a in range(n):
        for b in range(n):
            ub = np.flatnonzero(leq[a] & leq[b])
            if not any(all(leq[u, w] for w in ub) for u in ub):
                return f"no join for ({a}, {b})"
            lb = np.flatnonzero(leq[:, a] & leq[:, b])
            if not any(all(leq[w, u] for w in lb) for u in lb):
                return f"no meet for ({a}, {b})"
    return None


def _lattice_tables(leq):
    n = leq.shape[0]
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ub = np.flatnonzero(leq[a] & leq[b])
            join[a, b] = next(u for u in ub if all(leq[u, w] for w in ub))
            lb = np.flatnonzero(leq[:, a] & leq[:, b])
            meet[a, b] = next(u for u in lb if all(leq[w, u] for w in lb))
    top = int(next(t for t in range(n) if leq[:, t].all()))
    bottom = int(next(b for b in range(n) if leq[b, :].all()))
    join.setflags(write=False)
    meet.setflags(write=False)
    return join, meet, top, bottom


def quantale_violation(V):
    """First failed quantale axiom as a message, or ``None``."""
    n, t, k = V.size, V.tensor, V.unit
    if t.min() < 0 or t.max() >= n:
        return "tensor value out of range"
    if k != V.top:
        return f"unit not ⊤: unit={k}, top={V.top}"
    for a in range(n):
        if t[k, a] != a or t[a, k] != a:
            return f"unit law fails at {a}"
    for a, b, c in iproduct(range(n), repeat=3):
        if t[t[a, b], c] != t[a, t[b, c]]:
            return f"tensor not associative at ({a}, {b}, {c})"
    for a in range(n):
        if t[a, V.bottom] != V.bottom or t[V.bottom, a] != V.bottom:
            return f"tensor does not preserve bottom at {a}"
    for a, b, c in iproduct(range(n), repeat=3):
        j = V.join[b, c]
        if t[a, j] != V.join[t[a, b], t[a, c]]:
            return f"tensor does not preserve joins on the right at ({a}, {b}, {c})"
        if t[j, a] != V.join[t[b, a], t[c, a]]:
            return f"tensor does not preserve joins on the left at ({a}, {b}, {c})"
    return None


def quantale_check(V):
    return quantale_violation(V) is None


# --------------------------------------------------------------------------
# fixtures
# --------------------------------------------------------------------------

def boolean_quantale():
    """``V2 = ({bot, top}, and, top)``."""
    return FinQuantale([[1, 1], [0, 1]], [[0, 0], [0, 1]], 1, name="V2")


def _chain_leq(n):
    return np.triu(np.ones((n, n), dtype=bool))


def min_chain3():
    """3-chain ``0 < 1/2 < 1`` with tensor = meet."""
    t = [[min(a, b) for b in range(3)] for a in range(3)]
    return FinQuantale(_chain_leq(3), t, 2, name="chain3-min")


def lukasiewicz3():
    """3-chain with ``a (x) b = max(0, a + b - 1)`` (indices 0, 1, 2 = 0, 1/2, 1)."""
    t = [[max(0, a + b - 2) for b in range(3)] for a in range(3)]
    return FinQuantale(_chain_leq(3), t, 2, name="lukasiewicz3")


def diamond():
    """Four-element Boolean lattice ``bot < a, b < top`` with tensor = meet."""
    leq = np.eye(4, dtype=bool)
    leq[0, :] = True
    leq[:, 3] = True
    q = FinQuantale(leq, np.zeros((4, 4), dtype=np.int64), 3, name="diamond", check=False)
    return FinQuantale(leq, q.meet, 3, name="diamond")


FIXTURES = {
    "V2": boolean_quantale,
    "chain3-min": min_chain3,
    "lukasiewicz3": lukasiewicz3,
    "diamond": diamond,
}


# --------------------------------------------------------------------------
# V-categories and V-functors
# --------------------------------------------------------------------------

class FinVCat:
    __slots__ = ("V", "hom")

    def __init__(self, V, hom, check=True):
        hom = np.array(hom, dtype=np.int64)
        if hom.size == 0:
            hom = hom.reshape(0, 0)
        if hom.ndim != 2 or hom.shape[0] != hom.shape[1]:
            raise ShapeMismatch(f"hom table must be square, got {hom.shape}")
        self.V = V
        self.hom = _ro(hom, np.int64)
        if check:
            err = vcat_violation(self)
            if err:
                raise AxiomError(err)

    @property
    def size(self):
        return self.hom.shape[0]

    def __repr__(self):
        return f"FinVCat({self.V.name}, {self.hom.tolist()})"

    def __eq__(self, other):
        return isinstance(other, FinVCat) and self.V == other.V and np.array_equal(self.hom, other.hom)

    def __hash__(self):
        return hash((self.V, self.hom.tobytes()))


def vcat_violation(Y):
    h = Y.hom
    if h.size and (h.min() < 0 or h.max() >= Y.V.size):
        return "hom value outside the quantale"
    kind, x, y, z = (int(v) for v in K.vcat_violation(h, Y.V.tensor, Y.V.leq, Y.V.unit))
    if kind == 1:
        return f"unit law fails: k is not <= hom({x}, {x})"
    if kind == 2:
        return f"composition law fails at ({x}, {y}, {z})"
    return None


def vcat_check(Y):
    return vcat_violation(Y) is None


def vcat_closure(V, hom):
    """Least V-category hom above ``hom`` (diagonal forced to ``k``)."""
    h = np.array(hom, dtype=np.int64)
    n = h.shape[0]
    h[np.arange(n), np.arange(n)] = V.unit
    return FinVCat(V, K.vcat_closure(np.ascontiguousarray(h), V.tensor, V.join), check=False)


class VFunctor:
    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom, cod, table, check=True):
        if dom.V != cod.V:
            raise ShapeMismatch("V-functor between categories over different quantales")
        t = np.array(table, dtype=np.int64).reshape(-1)
        if len(t) != dom.size:
            raise ShapeMismatch("table length differs from domain size")
        t.setflags(write=False)
        self.dom, self.cod, self.table = dom, cod, t
        if check:
            err = vfunctor_violation(self)
            if err:
                raise AxiomError(err)

    def __call__(self, x):
        return int(self.table[x])

    def __matmul__(self, other):
        if other.cod != self.dom:
            raise ShapeMismatch("non-composable V-functors")
        return VFunctor(other.dom, self.cod, self.table[other.table], check=False)

    def __repr__(self):
        return f"VFunctor({self.dom.size}->{self.cod.size}, {self.table.tolist()})"

    @classmethod
    def identity(cls, X):
        return cls(X, X, np.arange(X.size), check=False)


def vfunctor_violation(f):
    t = f.table
    if len(t) and (t.min() < 0 or t.max() >= f.cod.size):
        return "table value outside codomain"
    pulled = f.cod.hom[np.ix_(t, t)]
    bad = np.argwhere(~f.dom.V.leq[f.dom.hom, pulled])
    if len(bad):
        x, y = bad[0]
        return f"hom({x}, {y}) not <= hom(f{x}, f{y})"
    return None


def vfunctor_check(f):
    return vfunctor_violation(f) is None


def vhom_leq(f, g):
    """``f <= g`` iff ``Y(f x, g x) = k`` for every ``x``."""
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatch("V-functors are not parallel")
    return bool(np.all(f.cod.hom[f.table, g.table] == f.cod.V.unit))


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def vcat_coproduct(*cats):
    V = cats[0].V
    n = sum(c.size for c in cats)
    h = np.full((n, n), V.bottom, dtype=np.int64)
    off = 0
    for c in cats:
        h[off:off + c.size, off:off + c.size] = c.hom
        off += c.size
    return FinVCat(V, h, check=False)


def vcat_product(*cats):
    """Product with meet of component homs; objects in lexicographic order."""
    V = cats[0].V
    objs = list(iproduct(*[range(c.size) for c in cats]))
    n = len(objs)
    h = np.full((n, n), V.top, dtype=np.int64)
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            v = V.top
            for c, x, y in zip(cats, a, b):
                v = V.meet[v, c.hom[x, y]]
            h[i, j] = v
    return FinVCat(V, h, check=False), objs


def cocomma_self(X):
    """``X (+) X``: object ``(x, i)`` at index ``i * |X| + x`` for ``i in {0, 1}``.

    ``hom((x, i), (x', j))`` is ``X(x, x')`` when ``i <= j`` and bottom otherwise.
    """
    n, V = X.size, X.V
    h = np.full((2 * n, 2 * n), V.bottom, dtype=np.int64)
    h[:n, :n] = X.hom
    h[n:, n:] = X.hom
    h[:n, n:] = X.hom
    return FinVCat(V, h, check=False)


def r_star_vcat(r1, r2):
    """``R_*`` for a relation given by V-functors ``r1: X -> R``, ``r2: Z -> R``.

    Objects are ``X`` followed by ``Z``.  Homs are those of ``X`` and ``Z``
    inside each part, ``R(r1 w, r2 w')`` from ``X`` to ``Z`` and bottom from
    ``Z`` to ``X``.
    """
    if r1.cod != r2.cod:
        raise ShapeMismatch("legs must share a codomain")
    R = r1.cod
    covered = set(r1.table.tolist()) | set(r2.table.tolist())
    if len(covered) != R.size:
        raise PreconditionError("legs are not jointly surjective on objects")
    X, Z, V = r1.dom, r2.dom, R.V
    n, m = X.size, Z.size
    h = np.full((n + m, n + m), V.bottom, dtype=np.int64)
    h[:n, :n] = X.hom
    h[n:, n:] = Z.hom
    h[:n, n:] = R.hom[np.ix_(r1.table, r2.table)]
    return FinVCat(V, h, check=False)


def iota_relation_vcat(Y):
    """The relation ``D`` of the coproduct test, computed in V-Cat.

    Returns ``(D, r1, r2, pairs)``: ``D`` is the full sub-V-category of
    ``Y x Y x Y`` on ``{(y1, y2, y2)} u {(y2, y2, y1)}``; ``r1``, ``r2`` are
    the V-functors ``Y x Y -> D`` sending ``(y1, y2)`` to those triples.
    """
    Y3, triples = vcat_product(Y, Y, Y)
    Y2, pairs = vcat_product(Y, Y)
    where3 = {t: i for i, t in enumerate(triples)}
    first = [(a, b, b) for a, b in pairs]
    second = [(b, b, a) for a, b in pairs]
    objs = sorted(set(first) | set(second))
    idx = np.array([where3[t] for t in objs], dtype=np.int64)
    D = FinVCat(Y.V, Y3.hom[np.ix_(idx, idx)], check=False)
    local = {t: i for i, t in enumerate(objs)}
    r1 = VFunctor(Y2, D, [local[t] for t in first])
    r2 = VFunctor(Y2, D, [local[t] for t in second])
    return D, r1, r2, pairs


def d_star_table(Y):
    """``D_*`` on ``(Y x Y) + (Y x Y)``.

    Object ``(s, (y1, y2))`` sits at index ``s * |Y|^2 + y1 * |Y| + y2``.
    """
    _, r1, r2, _ = iota_relation_vcat(Y)
    return r_star_vcat(r1, r2)


def d_star_cross_formula(Y, y1, y2, y1p, y2p):
    """Cross value ``Y(y1, y2') ^ Y(y2, y2') ^ Y(y2, y1')`` read straight off ``Y``."""
    M, h = Y.V.meet, Y.hom
    return int(M[M[h[y1, y2p], h[y2, y2p]], h[y2, y1p]])


def h_is_vfunctor(Y):
    """Whether ``h = (pi1 pi1): D_* -> Y`` is a V-functor, checked on every pair."""
    Dst = d_star_table(Y)
    n = Y.size
    first = np.arange(2 * n * n) % (n * n) // max(n, 1)
    pulled = Y.hom[np.ix_(first, first)]
    return bool(np.all(Y.V.leq[Dst.hom, pulled]))


def is_symmetric_vwedge(Y):
    kind = int(K.vwedge_violation(Y.hom, Y.V.meet, Y.V.leq)[0])
    return kind < 0


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def all_vcats(V, n):
    """Every V-category on ``n`` objects, in lexicographic hom-table order."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for vals in iproduct(range(V.size), repeat=len(off)):
        h = np.full((n, n), V.unit, dtype=np.int64)
        for (i, j), v in zip(off, vals):
            h[i, j] = v
        Y = FinVCat(V, h, check=False)
        if vcat_check(Y):
            out.append(Y)
    return out


def random_vcat(rng, V, n, symmetric=None, meet_closed=None):
    """A random V-category: random table, then closed under composition.

    ``symmetric`` draws a symmetric table; ``meet_closed`` closes under meet
    instead of tensor (which also yields a V-category, as ``a (x) b <= a ^ b``).
    """
    if symmetric is None:
        symmetric = rng.random() < 0.5
    if meet_closed is None:
        meet_closed = rng.random() < 0.5
    h = rng.integers(0, V.size, (n, n))
    if symmetric:
        h = np.triu(h) + np.triu(h, 1).T
    np.fill_diagonal(h, V.unit)
    h = np.ascontiguousarray(h, dtype=np.int64)
    op = V.meet if meet_closed else V.tensor
    closed = K.vcat_closure(h, np.ascontiguousarray(op), V.join)
    return FinVCat(V, closed)


def random_vfunctor_into(rng, R, n, cover=None):
    """A random V-functor ``X -> R`` with ``X`` on ``n`` objects.

    ``X`` carries the meet of the pulled-back structure and a random
    V-category, which keeps the map a V-functor.  ``cover`` lists targets
    that must be hit.
    """
    cover = [] if cover is None else [int(c) for c in cover]
    t = np.concatenate([np.array(cover, dtype=np.int64),
                        rng.integers(0, R.size, max(0, n - len(cover)))])[:max(n, len(cover))]
    t = t[rng.permutation(len(t))]
    pulled = R.hom[np.ix_(t, t)]
    other = random_vcat(rng, R.V, len(t)).hom
    X = FinVCat(R.V, R.V.meet[pulled, other])
    return VFunctor(X, R, t)
