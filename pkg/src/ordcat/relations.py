"""Relations and ideals between finite preorders.

A relation ``R: X -> Y`` is a boolean ``|X| x |Y|`` matrix.  It is read as
its tabulation: the subset of ``X x Y`` with the componentwise order, so the
two legs are automatically jointly fully faithful.  An *ideal* is a relation
closed under weakening (``x2 <= x R y <= y2`` gives ``x2 R y2``).

Composition is written two ways.  :func:`compose` takes its arguments in
diagrammatic order, ``compose(R, S)`` is "first R, then S".  The ``@``
operator follows function-composition order, so ``S @ R`` is the same
relation; laws read naturally with it, e.g. ``upper_star(f) @ lower_star(f)``
is the unit ``f^* f_*``.
"""

import numpy as np

from . import _kernels as K
from .errors import NotAnIdeal, PreconditionError, ShapeMismatch
from .preorder import (
    FinPreorder,
    MonotoneMap,
    comma,
    pair_map,
    product_map,
    pullback,
    _subobject,
)


class Rel:
    __slots__ = ("dom", "cod", "mat")

    def __init__(self, dom, cod, mat):
        mat = np.array(mat, dtype=bool)
        if mat.size == 0:
            mat = mat.reshape((dom.size, cod.size))
        if mat.shape != (dom.size, cod.size):
            raise ShapeMismatch(f"matrix shape {mat.shape} != {(dom.size, cod.size)}")
        mat = np.ascontiguousarray(mat)
        mat.setflags(write=False)
        self.dom = dom
        self.cod = cod
        self.mat = mat

    @classmethod
    def from_pairs(cls, dom, cod, pairs):
        m = np.zeros((dom.size, cod.size), dtype=bool)
        for x, y in pairs:
            m[x, y] = True
        return cls(dom, cod, m)

    @classmethod
    def empty(cls, dom, cod):
        return cls(dom, cod, np.zeros((dom.size, cod.size), dtype=bool))

    @classmethod
    def total(cls, dom, cod):
        return cls(dom, cod, np.ones((dom.size, cod.size), dtype=bool))

    @classmethod
    def diagonal(cls, X):
        return cls(X, X, np.eye(X.size, dtype=bool))

    def pairs(self):
        return [(int(x), int(y)) for x, y in np.argwhere(self.mat)]

    def holds(self, x, y):
        return bool(self.mat[x, y])

    def is_ideal(self):
        return ideal_witness(self) is None

    def as_rel(self):
        return Rel(self.dom, self.cod, self.mat)

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}({self.dom.size}->{self.cod.size}, {self.pairs()})"

    def _same_boundary(self, other):
        if self.dom != other.dom or self.cod != other.cod:
            raise ShapeMismatch("relations have different boundaries")

    def __eq__(self, other):
        return (
            isinstance(other, Rel)
            and self.dom == other.dom
            and self.cod == other.cod
            and np.array_equal(self.mat, other.mat)
        )

    def __hash__(self):
        return hash((self.dom, self.cod, self.mat.tobytes()))

    def __le__(self, other):
        self._same_boundary(other)
        return bool(np.all(~self.mat | other.mat))

    def __ge__(self, other):
        return other <= self

    def __lt__(self, other):
        return self <= other and not np.array_equal(self.mat, other.mat)

    def __and__(self, other):
        return meet(self, other)

    def __matmul__(self, other):
        # S @ R == compose(R, S)
        return compose(other, self)

    @property
    def T(self):
        return opp(self)


class IdealRel(Rel):
    """A weakening-closed relation; construction validates the invariant."""

    __slots__ = ()

    def __init__(self, dom, cod, mat, check=True):
        super().__init__(dom, cod, mat)
        if check:
            w = ideal_witness(self)
            if w is not None:
                raise NotAnIdeal(f"relation is not weakening-closed: {w}", witness=w)


def ideal_witness(R):
    """First weakening-closure failure of ``R`` as a triple, else ``None``."""
    kind, i, j, k = (int(v) for v in K.ideal_violation(R.dom.leq, R.mat, R.cod.leq))
    if kind == 1:
        return ("left", i, j, k)
    if kind == 2:
        return ("right", i, j, k)
    return None


def _wrap(dom, cod, mat, ideal):
    if ideal:
        return IdealRel(dom, cod, mat)
    return Rel(dom, cod, mat)


# --------------------------------------------------------------------------
# basic algebra
# --------------------------------------------------------------------------

def compose(R, S):
    """Relational composite "R then S": ``x (SR) z`` iff some ``y`` has ``x R y S z``."""
    if R.cod != S.dom:
        raise ShapeMismatch("composite of relations with mismatched boundary")
    mat = K.bool_matmul(R.mat, S.mat)
    return _wrap(R.dom, S.cod, mat, isinstance(R, IdealRel) and isinstance(S, IdealRel))


def compose_all(*rels):
    """``compose_all(R1, R2, ..., Rn)`` is R1 then R2 ... then Rn."""
    out = rels[0]
    for r in rels[1:]:
        out = compose(out, r)
    return out


def meet(R, S):
    R._same_boundary(S)
    return _wrap(R.dom, R.cod, R.mat & S.mat, isinstance(R, IdealRel) and isinstance(S, IdealRel))


def join(R, S):
    R._same_boundary(S)
    return _wrap(R.dom, R.cod, R.mat | S.mat, isinstance(R, IdealRel) and isinstance(S, IdealRel))


def opp(R):
    """Opposite relation; the opposite of an ideal is usually not an ideal."""
    return Rel(R.cod, R.dom, R.mat.T)


def id_ideal(X):
    """``I_X``: the order of ``X`` itself, unit of ideal composition."""
    return IdealRel(X, X, X.leq, check=False)


def ideal_close(R):
    """Ideal generated by ``R``: ``I_Y R I_X``."""
    mat = K.bool_matmul(K.bool_matmul(R.dom.leq, R.mat), R.cod.leq)
    return IdealRel(R.dom, R.cod, mat, check=False)


def ideal_close_fixpoint(R):
    """Same closure as :func:`ideal_close`, by saturating single weakening steps."""
    m = R.mat.copy()
    lx, ly = R.dom.leq, R.cod.leq
    changed = True
    while changed:
        changed = False
        for x, y in np.argwhere(m):
            for x2 in np.flatnonzero(lx[:, x]):
                for y2 in np.flatnonzero(ly[y]):
                    if not m[x2, y2]:
                        m[x2, y2] = True
                        changed = True
    return IdealRel(R.dom, R.cod, m, check=False)


# --------------------------------------------------------------------------
# relations attached to maps
# --------------------------------------------------------------------------

def graph(f):
    """Graph of ``f`` as a (plain) relation ``X -> Y``."""
    m = np.zeros((f.dom.size, f.cod.size), dtype=bool)
    m[np.arange(f.dom.size), f.table] = True
    return Rel(f.dom, f.cod, m)


def graph_opp(f):
    return opp(graph(f))


def lower_star(f):
    """``f_* = f/1``: ``x f_* y`` iff ``f(x) <= y``."""
    return IdealRel(f.dom, f.cod, f.cod.leq[f.table, :], check=False)


def upper_star(f):
    """``f^* = 1/f``: ``y f^* x`` iff ``y <= f(x)``."""
    return IdealRel(f.cod, f.dom, f.cod.leq[:, f.table], check=False)


def comma_rel(f, g):
    """The comma object ``f/g`` read as a relation ``dom f -> dom g``."""
    P, p1, p2 = comma(f, g)
    return image_rel(p1, p2)


def image_rel(r1, r2):
    """Relation ``{(r1 t, r2 t)}`` spanned by two maps with a shared domain."""
    if r1.dom != r2.dom:
        raise ShapeMismatch("span legs must share a domain")
    m = np.zeros((r1.cod.size, r2.cod.size), dtype=bool)
    m[r1.table, r2.table] = True
    return Rel(r1.cod, r2.cod, m)


def tabulate(R):
    """Tabulation ``(T, r1, r2)``: the subset ``R`` of ``X x Y``, ordered componentwise."""
    pairs = R.pairs()
    T, pa, pb = _subobject(pairs, R.dom.leq, R.cod.leq)
    return T, MonotoneMap(T, R.dom, pa, check=False), MonotoneMap(T, R.cod, pb, check=False)


def r_star(r1, r2):
    """``(r2)_* (r1)^*``: ``x`` relates to ``y`` iff ``x <= r1 t`` and ``r2 t <= y`` for some ``t``."""
    if r1.dom != r2.dom:
        raise ShapeMismatch("span legs must share a domain")
    return compose(upper_star(r1), lower_star(r2))


def r_upper(r1, r2):
    """``(r1)_* (r2)^*``: the least ideal containing the opposite of the span."""
    if r1.dom != r2.dom:
        raise ShapeMismatch("span legs must share a domain")
    return compose(upper_star(r2), lower_star(r1))


def star(R):
    """``R_*`` computed through the tabulation of ``R``."""
    _, r1, r2 = tabulate(R)
    return r_star(r1, r2)


def upper(R):
    """``R^*`` computed through the tabulation of ``R``."""
    _, r1, r2 = tabulate(R)
    return r_upper(r1, r2)


def membership(R, x, y):
    """``(x, y) in_A R`` for generalised elements ``x: A -> X``, ``y: A -> Y``."""
    if x.dom != y.dom:
        raise ShapeMismatch("generalised elements must share a domain")
    if x.cod != R.dom or y.cod != R.cod:
        raise ShapeMismatch("generalised elements land outside the relation's boundary")
    return bool(np.all(R.mat[x.table, y.table]))


def pullback_rel(R, f, g):
    """2-pullback of ``R`` along ``f x g`` where ``f: U -> X``, ``g: V -> Y``.

    Built literally: tabulate ``R``, pull its inclusion back along
    ``f x g`` and read off the resulting subset of ``U x V``.
    """
    if f.cod != R.dom or g.cod != R.cod:
        raise ShapeMismatch("pullback maps do not land on the relation")
    T, r1, r2 = tabulate(R)
    inc = pair_map(r1, r2)
    fg = product_map(f, g)
    S, s, _ = pullback(fg, inc)
    # s lands in U x V with index u * |V| + v
    nv = g.dom.size
    m = np.zeros((f.dom.size, g.dom.size), dtype=bool)
    for idx in s.table.tolist():
        m[idx // nv, idx % nv] = True
    return Rel(f.dom, g.dom, m)


def inverse_image(T, f):
    """``f^{-1}(T)`` for an endo-ideal ``T`` on ``cod f``."""
    return pullback_rel(T, f, f)


# --------------------------------------------------------------------------
# reflexivity, transitivity, congruences
# --------------------------------------------------------------------------

def _endo(R):
    if R.dom != R.cod:
        raise ShapeMismatch("expected an endo-relation")


def is_reflexive(R):
    _endo(R)
    return bool(np.all(np.diag(R.mat)))


def contains_identity(R):
    """``I_X <= R``."""
    _endo(R)
    return id_ideal(R.dom) <= R.as_rel()


def is_transitive(R):
    _endo(R)
    return compose(R.as_rel(), R.as_rel()) <= R.as_rel()


def is_congruence(R):
    return R.is_ideal() and is_reflexive(R) and is_transitive(R)


def effective_witness(R):
    """A map ``f`` with ``f/f == R`` for a congruence ``R``, else ``None``.

    The codomain is the quotient of ``dom R`` by the symmetric part of ``R``
    (representatives are least indices) ordered by ``R``.
    """
    if not is_congruence(R):
        raise PreconditionError("effective_witness expects a congruence")
    X = R.dom
    rep = []
    table = np.zeros(X.size, dtype=np.int64)
    for x in range(X.size):
        for c, r in enumerate(rep):
            if R.mat[x, r] and R.mat[r, x]:
                table[x] = c
                break
        else:
            table[x] = len(rep)
            rep.append(x)
    Q = FinPreorder(R.mat[np.ix_(rep, rep)].reshape(len(rep), len(rep)))
    f = MonotoneMap(X, Q, table)
    if not np.array_equal(comma_rel(f, f).mat, R.mat):
        return None
    return f


# --------------------------------------------------------------------------
# adjunctions and maps
# --------------------------------------------------------------------------

def check_adjunction(R, Rbar):
    """``R -| Rbar``: ``I_X <= Rbar R`` and ``R Rbar <= I_Y``."""
    if Rbar.dom != R.cod or Rbar.cod != R.dom:
        raise ShapeMismatch("adjoint candidate has the wrong boundary")
    unit = id_ideal(R.dom).as_rel() <= compose(R, Rbar).as_rel()
    counit = compose(Rbar, R).as_rel() <= id_ideal(R.cod).as_rel()
    return unit and counit


def adjoint_to_map(R, Rbar):
    """Recover ``f`` with ``f_* == R`` from an adjunction ``R -| Rbar``.

    ``f(x)`` is the least-index ``y`` with ``x R y`` and ``y Rbar x``.
    """
    if not check_adjunction(R, Rbar):
        raise PreconditionError("relations do not form an adjunction")
    S = R.mat & Rbar.mat.T
    table = []
    for x in range(R.dom.size):
        ys = np.flatnonzero(S[x])
        if not len(ys):
            raise PreconditionError(f"no candidate image for {x}; input is inconsistent")
        table.append(int(ys[0]))
    return MonotoneMap(R.dom, R.cod, table)
