"""Registry of randomized laws and the seeded runner behind ``check-laws``.

A law is a function ``law(rng, max_size)`` that draws one instance and
returns ``None`` when the law holds on it, or a witness dictionary of the
objects involved.  Each law gets its own generator derived from the run seed
and the law name, so adding a law does not perturb the others.
"""

import zlib
from dataclasses import dataclass, field

import numpy as np

from . import generators as G
from . import maltsev as M
from . import quantale as Q
from .errors import OrdcatError
from .preorder import (
    FinPreorder,
    MonotoneMap,
    bicoinserter_check,
    comma,
    hom_leq,
    is_equivalence,
    is_ff,
    is_ff_mono,
    is_injective,
    is_so,
    pair_map,
    pullback,
    so_ff_factorize,
)
from .relations import (
    IdealRel,
    Rel,
    adjoint_to_map,
    check_adjunction,
    comma_rel,
    compose,
    compose_all,
    contains_identity,
    effective_witness,
    graph,
    id_ideal,
    ideal_close,
    ideal_close_fixpoint,
    inverse_image,
    is_reflexive,
    lower_star,
    meet,
    membership,
    opp,
    pullback_rel,
    r_star,
    r_upper,
    star,
    tabulate,
    upper,
    upper_star,
)
from .serialize import to_json

SCHEMA = 1


@dataclass(frozen=True)
class Law:
    name: str
    backend: str
    fn: object
    description: str = ""


@dataclass
class _Registry:
    laws: list = field(default_factory=list)

    def register(self, name, backend="ord", description=""):
        def deco(fn):
            if any(l.name == name for l in self.laws):
                raise ValueError(f"duplicate law {name!r}")
            self.laws.append(Law(name, backend, fn, description or (fn.__doc__ or "").strip()))
            return fn
        return deco


REGISTRY = _Registry()
law = REGISTRY.register


def registered(backend=None):
    return [l for l in REGISTRY.laws if backend is None or l.backend == backend]


# --------------------------------------------------------------------------
# drawing helpers
# --------------------------------------------------------------------------

def _pre(rng, n, low=0):
    return G.random_preorder(rng, G.random_size(rng, n, low))


def _poset(rng, n, low=0):
    return G.random_poset(rng, G.random_size(rng, n, low))


def _map(rng, X, Y):
    return G.random_map(rng, X, Y)


def _map_pair(rng, n):
    """Random ``f: X -> Y`` with ``Y`` non-empty whenever ``X`` is."""
    X = _pre(rng, n)
    Y = _pre(rng, n, low=1 if X.size else 0)
    return _map(rng, X, Y)


def _ideal(rng, X, Y):
    return G.random_ideal(rng, X, Y)


def _w(**objs):
    return to_json(objs)


def _sub(a, b):
    """Inclusion of relations by matrix."""
    return bool(np.all(~a.mat | b.mat))


def _eq(a, b):
    return np.array_equal(a.mat, b.mat)


# --------------------------------------------------------------------------
# ord-core
# --------------------------------------------------------------------------

@law("ff-composition")
def _ff_comp(rng, n):
    """ff maps compose; if g f is ff then so is f."""
    X = _pre(rng, n)
    Y = _pre(rng, n, low=1 if X.size else 0)
    Z = _pre(rng, n, low=1 if Y.size else 0)
    f = G.random_ff(rng, Y) if rng.random() < 0.5 else _map(rng, X, Y)
    g = G.random_ff(rng, Z) if rng.random() < 0.5 else _map(rng, f.cod, Z)
    if g.dom != f.cod:
        g = _map(rng, f.cod, Z)
    gf = g @ f
    if (is_ff(f) and is_ff(g) and not is_ff(gf)) or (is_ff(gf) and not is_ff(f)):
        return _w(f=f, g=g)
    return None


@law("ff-mono-pullback")
def _ff_pb(rng, n):
    """ff-monos pull back to ff-monos."""
    Z = _pre(rng, n)
    m = G.random_ff_mono(rng, Z)
    W = _pre(rng, n, low=0 if Z.size else 0)
    if Z.size == 0:
        W = FinPreorder.empty()
    f = _map(rng, W, Z)
    _, p1, _ = pullback(f, m)
    if not is_ff_mono(p1):
        return _w(f=f, m=m)
    return None


@law("so-composition")
def _so_comp(rng, n):
    """so maps compose; if f e is so then so is f."""
    X = _pre(rng, n)
    e = G.random_surjection(rng, X) if rng.random() < 0.6 else _map(rng, X, _pre(rng, n, low=1 if X.size else 0))
    Z = _pre(rng, n, low=1 if e.cod.size else 0)
    f = G.random_surjection(rng, e.cod) if rng.random() < 0.6 else _map(rng, e.cod, Z)
    fe = f @ e
    if (is_so(f) and is_so(e) and not is_so(fe)) or (is_so(fe) and not is_so(f)):
        return _w(e=e, f=f)
    return None


@law("so-ff-orthogonality")
def _orth(rng, n):
    """Every commutative square from an so map to an ff-mono has a diagonal."""
    A = _pre(rng, n)
    e = G.random_surjection(rng, A)
    B = e.cod
    D = _pre(rng, n, low=1 if B.size else 0)
    v = _map(rng, B, D)
    ve = v @ e
    keep = set(ve.table.tolist()) | set(np.flatnonzero(rng.random(D.size) < 0.3).tolist())
    keep = np.array(sorted(keep), dtype=np.int64)
    C = D.restrict(keep)
    m = MonotoneMap(C, D, keep, check=False)
    back = {int(y): i for i, y in enumerate(keep)}
    u = MonotoneMap(A, C, [back[y] for y in ve.table.tolist()])
    try:
        d = MonotoneMap(B, C, [back[y] for y in v.table.tolist()])
    except OrdcatError:
        return _w(e=e, m=m, u=u, v=v)
    if not (np.array_equal((d @ e).table, u.table) and np.array_equal((m @ d).table, v.table)):
        return _w(e=e, m=m, u=u, v=v)
    return None


@law("comma-pasting")
def _comma_paste(rng, n):
    """Pulling f/g back along x gives (f x)/g."""
    Z = _pre(rng, n)
    X = _pre(rng, n, low=0) if Z.size else FinPreorder.empty()
    Y = _pre(rng, n, low=0) if Z.size else FinPreorder.empty()
    W = _pre(rng, n, low=0) if X.size else FinPreorder.empty()
    f, g, x = _map(rng, X, Z), _map(rng, Y, Z), _map(rng, W, X)
    C, p1, p2 = comma(f, g)
    P, q1, q2 = pullback(x, p1)
    C2, r1, r2 = comma(f @ x, g)
    where = {(int(a), int(b)): i for i, (a, b) in enumerate(zip(r1.table, r2.table))}
    try:
        cmp = MonotoneMap(P, C2, [where[(int(q1.table[i]), int(p2.table[q2.table[i]]))]
                                  for i in range(P.size)])
    except (KeyError, OrdcatError):
        return _w(f=f, g=g, x=x)
    if not (is_equivalence(cmp) and is_injective(cmp)):
        return _w(f=f, g=g, x=x)
    return None


@law("comma-projections-split")
def _comma_split(rng, n):
    """Projections of f/1 and 1/f onto X split; for so f the others are so."""
    f = _map_pair(rng, n) if rng.random() < 0.5 else G.random_surjection(rng, _pre(rng, n))
    X, Y = f.dom, f.cod
    idY = MonotoneMap.identity(Y)
    C1, a1, b1 = comma(f, idY)
    C2, a2, b2 = comma(idY, f)
    w1 = {(int(p), int(q)): i for i, (p, q) in enumerate(zip(a1.table, b1.table))}
    w2 = {(int(p), int(q)): i for i, (p, q) in enumerate(zip(a2.table, b2.table))}
    try:
        s1 = MonotoneMap(X, C1, [w1[(x, int(f.table[x]))] for x in range(X.size)])
        s2 = MonotoneMap(X, C2, [w2[(int(f.table[x]), x)] for x in range(X.size)])
    except (KeyError, OrdcatError):
        return _w(f=f)
    if not (np.array_equal((a1 @ s1).table, np.arange(X.size))
            and np.array_equal((b2 @ s2).table, np.arange(X.size))):
        return _w(f=f)
    if is_so(f) and not (is_so(b1) and is_so(a2)):
        return _w(f=f)
    return None


@law("comma-preserves-so")
def _comma_so(rng, n):
    """If g is so then the first projection of f/g is so."""
    Y = _pre(rng, n)
    g = G.random_surjection(rng, Y)
    Z = g.cod
    X = _pre(rng, n) if Z.size else FinPreorder.empty()
    f = _map(rng, X, Z)
    _, p1, _ = comma(f, g)
    if not is_so(p1):
        return _w(f=f, g=g)
    return None


@law("R2-factorization")
def _r2(rng, n):
    """f = m e with e so and m ff."""
    f = _map_pair(rng, n)
    e, m = so_ff_factorize(f)
    if not (is_so(e) and is_ff(m) and is_injective(m) and np.array_equal((m @ e).table, f.table)):
        return _w(f=f)
    return None


@law("R3-so-pullback-stable")
def _r3(rng, n):
    """so maps are stable under 2-pullback."""
    X = _pre(rng, n)
    e = G.random_surjection(rng, X)
    W = _pre(rng, n) if e.cod.size else FinPreorder.empty()
    f = _map(rng, W, e.cod)
    _, p1, _ = pullback(f, e)
    if not is_so(p1):
        return _w(e=e, f=f)
    return None


@law("R4-bicoinserter")
def _r4(rng, n):
    """Every so map is the coinserter of its comma projections."""
    e = G.random_surjection(rng, _pre(rng, n))
    if not bicoinserter_check(e):
        return _w(e=e)
    return None


# --------------------------------------------------------------------------
# ideal calculus
# --------------------------------------------------------------------------

@law("basic-1-graph-star")
def _b1(rng, n):
    """The ideal generated by the graph of f is f_*."""
    f = _map_pair(rng, n)
    if not (_eq(r_star(MonotoneMap.identity(f.dom), f), lower_star(f))
            and _eq(star(graph(f)), lower_star(f))):
        return _w(f=f)
    return None


@law("basic-3-lower-functorial")
def _b3(rng, n):
    """(g f)_* = g_* f_*."""
    f = _map_pair(rng, n)
    g = _map(rng, f.cod, _pre(rng, n, low=1 if f.cod.size else 0))
    if not _eq(lower_star(g @ f), compose(lower_star(f), lower_star(g))):
        return _w(f=f, g=g)
    return None


@law("basic-4-upper-functorial")
def _b4(rng, n):
    """(g f)^* = f^* g^*."""
    f = _map_pair(rng, n)
    g = _map(rng, f.cod, _pre(rng, n, low=1 if f.cod.size else 0))
    if not _eq(upper_star(g @ f), compose(upper_star(g), upper_star(f))):
        return _w(f=f, g=g)
    return None


@law("basic-5-order-reversal")
def _b5(rng, n):
    """f <= h iff h_* is inside f_* iff f^* is inside h^*."""
    f = _map_pair(rng, n)
    h = _map(rng, f.dom, f.cod)
    a = hom_leq(f, h)
    b = _sub(lower_star(h), lower_star(f))
    c = _sub(upper_star(f), upper_star(h))
    if not (a == b == c):
        return _w(f=f, h=h)
    return None


@law("basic-6-7-unit-counit")
def _b67(rng, n):
    """I_X is inside f^* f_* and f_* f^* is inside I_Y."""
    f = _map_pair(rng, n)
    L, U = lower_star(f), upper_star(f)
    if not (_sub(id_ideal(f.dom), compose(L, U)) and _sub(compose(U, L), id_ideal(f.cod))):
        return _w(f=f)
    return None


@law("basic-8-triangle")
def _b8(rng, n):
    """f^* f_* f^* = f^* and f_* f^* f_* = f_*."""
    f = _map_pair(rng, n)
    L, U = lower_star(f), upper_star(f)
    if not (_eq(compose_all(U, L, U), U) and _eq(compose_all(L, U, L), L)):
        return _w(f=f)
    return None


@law("gf-1-comma-as-composite")
def _gf1(rng, n):
    """f/g = g^* f_*."""
    f = _map_pair(rng, n)
    g = _map(rng, _pre(rng, n), f.cod) if f.cod.size else MonotoneMap(FinPreorder.empty(), f.cod, [])
    if not _eq(comma_rel(f, g), compose(lower_star(f), upper_star(g))):
        return _w(f=f, g=g)
    return None


@law("gf-2-ff-iff-kernel-identity")
def _gf2(rng, n):
    """f is ff iff f^* f_* = I_X."""
    f = G.random_ff(rng, _pre(rng, n)) if rng.random() < 0.5 else _map_pair(rng, n)
    if is_ff(f) != _eq(compose(lower_star(f), upper_star(f)), id_ideal(f.dom)):
        return _w(f=f)
    return None


@law("gf-4-so-cokernel-identity")
def _gf4(rng, n):
    """If f is so then f_* f^* = I_Y."""
    f = G.random_surjection(rng, _pre(rng, n)) if rng.random() < 0.6 else _map_pair(rng, n)
    if is_so(f) and not _eq(compose(upper_star(f), lower_star(f)), id_ideal(f.cod)):
        return _w(f=f)
    return None


@law("gf-6-pairing-ff")
def _gf6(rng, n):
    """<f, h> is ff iff f^* f_* meet h^* h_* = I_X."""
    f = _map_pair(rng, n)
    h = _map(rng, f.dom, _pre(rng, n, low=1 if f.dom.size else 0))
    k = meet(compose(lower_star(f), upper_star(f)), compose(lower_star(h), upper_star(h)))
    if is_ff(pair_map(f, h)) != _eq(k, id_ideal(f.dom)):
        return _w(f=f, h=h)
    return None


@law("gf-3-5-7-posets")
def _gf357(rng, n):
    """On posets: ff-mono, so and pairing ff-mono are detected by the identities."""
    X = _poset(rng, n)
    Y = _poset(rng, n, low=1 if X.size else 0)
    Z = _poset(rng, n, low=1 if X.size else 0)
    r = rng.random()
    if r < 0.3:
        f = G.random_ff_mono(rng, Y)
        X = f.dom
    elif r < 0.6:
        f = G.random_surjection(rng, X)
        if not f.cod.is_antisymmetric():
            f = _map(rng, X, Y)
    else:
        f = _map(rng, X, Y)
    X, Y = f.dom, f.cod
    h = _map(rng, X, Z) if X.size == 0 or Z.size else None
    if h is None:
        h = _map(rng, X, FinPreorder.point())
    L, U = lower_star(f), upper_star(f)
    kern = compose(L, U)
    if is_ff_mono(f) != _eq(kern, id_ideal(X)):
        return _w(f=f)
    if is_so(f) != _eq(compose(U, L), id_ideal(Y)):
        return _w(f=f)
    k = meet(kern, compose(lower_star(h), upper_star(h)))
    if is_ff_mono(pair_map(f, h)) != _eq(k, id_ideal(X)):
        return _w(f=f, h=h)
    return None


def _pps_instance(rng, n):
    X, Y = _pre(rng, n), _pre(rng, n)
    return X, Y, _ideal(rng, X, Y), _ideal(rng, X, Y)


@law("pps-1-upper-meet")
def _pps1(rng, n):
    """g^*(R meet S) = g^*R meet g^*S."""
    X, Y, R, S = _pps_instance(rng, n)
    B = _pre(rng, n) if Y.size else FinPreorder.empty()
    g = _map(rng, B, Y)
    U = upper_star(g)
    if not _eq(compose(meet(R, S), U), meet(compose(R, U), compose(S, U))):
        return _w(R=R, S=S, g=g)
    return None


@law("pps-2-lower-meet")
def _pps2(rng, n):
    """(R meet S) f_* = R f_* meet S f_*."""
    X, Y, R, S = _pps_instance(rng, n)
    A = _pre(rng, n) if X.size else FinPreorder.empty()
    f = _map(rng, A, X)
    L = lower_star(f)
    if not _eq(compose(L, meet(R, S)), meet(compose(L, R), compose(L, S))):
        return _w(R=R, S=S, f=f)
    return None


@law("pps-3-lower-star-meet-inclusion")
def _pps3(rng, n):
    """k_*(R meet S) is inside k_*R meet k_*S."""
    X, Y, R, S = _pps_instance(rng, n)
    k = _map(rng, Y, _pre(rng, n, low=1 if Y.size else 0))
    L = lower_star(k)
    if not _sub(compose(meet(R, S), L), meet(compose(R, L), compose(S, L))):
        return _w(R=R, S=S, k=k)
    return None


@law("pps-4-upper-star-meet-inclusion")
def _pps4(rng, n):
    """(R meet S) h^* is inside R h^* meet S h^*."""
    X, Y, R, S = _pps_instance(rng, n)
    h = _map(rng, X, _pre(rng, n, low=1 if X.size else 0))
    U = upper_star(h)
    if not _sub(compose(U, meet(R, S)), meet(compose(U, R), compose(U, S))):
        return _w(R=R, S=S, h=h)
    return None


@law("pps-5-adjunction")
def _pps5(rng, n):
    """g_* T f^* inside R iff T inside g^* R f_*."""
    X, Y = _pre(rng, n), _pre(rng, n)
    A = _pre(rng, n) if X.size else FinPreorder.empty()
    B = _pre(rng, n) if Y.size else FinPreorder.empty()
    f, g = _map(rng, A, X), _map(rng, B, Y)
    T = _ideal(rng, A, B)
    R = _ideal(rng, X, Y)
    if rng.random() < 0.5:
        R = IdealRel(X, Y, R.mat | compose_all(upper_star(f), T, lower_star(g)).mat, check=False)
    lhs = _sub(compose_all(upper_star(f), T, lower_star(g)), R)
    rhs = _sub(T, compose_all(lower_star(f), R, upper_star(g)))
    if lhs != rhs:
        return _w(R=R, T=T, f=f, g=g)
    return None


@law("freyd-enriched")
def _freyd(rng, n):
    """SR meet T inside S(R meet S^*T) and inside (S meet TR^*)R for ideals."""
    X, Y, Z = _pre(rng, n), _pre(rng, n), _pre(rng, n)
    R, S, T = _ideal(rng, X, Y), _ideal(rng, Y, Z), _ideal(rng, X, Z)
    lhs = meet(compose(R, S), T)
    a = compose(meet(R, compose(T, upper(S))), S)
    b = compose(R, meet(S, compose(upper(R), T)))
    if not (_sub(lhs, a) and _sub(lhs, b)):
        return _w(R=R, S=S, T=T)
    return None


@law("freyd-plain")
def _freyd_plain(rng, n):
    """Ordinary modular laws for plain relations."""
    X, Y, Z = _pre(rng, n), _pre(rng, n), _pre(rng, n)
    R, S, T = G.random_rel(rng, X, Y), G.random_rel(rng, Y, Z), G.random_rel(rng, X, Z)
    lhs = meet(compose(R, S), T)
    a = compose(meet(R, compose(T, opp(S))), S)
    b = compose(R, meet(S, compose(opp(R), T)))
    if not (_sub(lhs, a) and _sub(lhs, b)):
        return _w(R=R, S=S, T=T)
    return None


@law("upper-smallest-ideal")
def _upper_small(rng, n):
    """R^* is the least ideal containing the opposite of R."""
    X, Y = _pre(rng, n), _pre(rng, n)
    R = G.random_rel(rng, X, Y)
    Rs = upper(R)
    if Rs.dom != Y or not Rs.is_ideal() or not _sub(opp(R), Rs):
        return _w(R=R)
    if not _eq(Rs, ideal_close(opp(R))):
        return _w(R=R)
    if X.size * Y.size <= 6:
        for J in M._ideals_between(Y, X):
            if _sub(opp(R), J) and not _sub(Rs, J):
                return _w(R=R, ideal=J)
    return None


@law("dd-opp-d-equals-dd-star-d")
def _tsr(rng, n):
    """T S° R = T S^* R for ideals."""
    X, Y, Z, W = (_pre(rng, n) for _ in range(4))
    R, S, T = _ideal(rng, X, Y), _ideal(rng, Z, Y), _ideal(rng, Z, W)
    a = compose_all(R.as_rel(), opp(S), T.as_rel())
    b = compose_all(R, upper(S), T)
    if not _eq(a, b) or not a.is_ideal():
        return _w(R=R, S=S, T=T)
    return None


@law("pullback-of-ideal")
def _pb_ideal(rng, n):
    """The 2-pullback of R along f x g is the ideal g^* R f_*; f^{-1}(T) = f^* T f_*."""
    X, Y = _pre(rng, n), _pre(rng, n)
    R = _ideal(rng, X, Y)
    U = _pre(rng, n) if X.size else FinPreorder.empty()
    V = _pre(rng, n) if Y.size else FinPreorder.empty()
    f, g = _map(rng, U, X), _map(rng, V, Y)
    S = pullback_rel(R, f, g)
    if not S.is_ideal() or not _eq(S, compose_all(lower_star(f), R, upper_star(g))):
        return _w(R=R, f=f, g=g)
    T = _ideal(rng, X, X)
    if not _eq(inverse_image(T, f), compose_all(lower_star(f), T, upper_star(f))):
        return _w(T=T, f=f)
    return None


@law("ideal-category-axioms")
def _cat_axioms(rng, n):
    """Composition of ideals is associative with I as two-sided unit."""
    X, Y, Z, W = (_pre(rng, n) for _ in range(4))
    R, S, T = _ideal(rng, X, Y), _ideal(rng, Y, Z), _ideal(rng, Z, W)
    if not _eq(compose(compose(R, S), T), compose(R, compose(S, T))):
        return _w(R=R, S=S, T=T)
    if not (_eq(compose(id_ideal(X), R), R) and _eq(compose(R, id_ideal(Y)), R)):
        return _w(R=R)
    return None


@law("ideal-closure")
def _closure(rng, n):
    """ideal_close agrees with the fixpoint oracle, is idempotent and monotone."""
    X, Y = _pre(rng, n), _pre(rng, n)
    R = G.random_rel(rng, X, Y)
    S = Rel(X, Y, R.mat | (rng.random(R.mat.shape) < 0.2))
    c = ideal_close(R)
    if not _eq(c, ideal_close_fixpoint(R)) or not _eq(ideal_close(c), c):
        return _w(R=R)
    if not _sub(c, ideal_close(S)) or not _sub(R, c):
        return _w(R=R, S=S)
    return None


@law("upper-equals-closed-opposite")
def _r_upper(rng, n):
    """r_upper of a tabulation equals the closure of the opposite relation."""
    X, Y = _pre(rng, n), _pre(rng, n)
    R = G.random_rel(rng, X, Y)
    _, r1, r2 = tabulate(R)
    if not (_eq(r_upper(r1, r2), ideal_close(opp(R))) and _eq(r_star(r1, r2), ideal_close(R))):
        return _w(R=R)
    return None


@law("membership-in-comma")
def _member(rng, n):
    """(x, z) lies in f/g iff f x <= g z pointwise."""
    f = _map_pair(rng, n)
    Z = f.cod
    Y = _pre(rng, n) if Z.size else FinPreorder.empty()
    g = _map(rng, Y, Z)
    A = _pre(rng, 3, low=0) if (f.dom.size and Y.size) else FinPreorder.empty()
    x, z = _map(rng, A, f.dom), _map(rng, A, Y)
    pointwise = all(Z.le(int(f.table[x.table[a]]), int(g.table[z.table[a]])) for a in range(A.size))
    if membership(comma_rel(f, g), x, z) != pointwise:
        return _w(f=f, g=g, x=x, z=z)
    return None


@law("reflexive-tests-agree")
def _refl(rng, n):
    """For ideals the diagonal test and I_X inclusion agree."""
    X = _pre(rng, n)
    R = G.random_reflexive_ideal(rng, X) if rng.random() < 0.5 else _ideal(rng, X, X)
    if is_reflexive(R) != contains_identity(R):
        return _w(R=R)
    return None


@law("congruences-effective")
def _effective(rng, n):
    """Every congruence in Ord is the kernel f/f of its quotient map."""
    X = _pre(rng, n)
    R = G.random_congruence(rng, X)
    if effective_witness(R) is None:
        return _w(R=R)
    return None


@law("adjoint-round-trip")
def _adjoint(rng, n):
    """f_* -| f^* and the reconstructed map has the same f_*."""
    f = _map_pair(rng, n)
    L, U = lower_star(f), upper_star(f)
    if not check_adjunction(L, U):
        return _w(f=f)
    g = adjoint_to_map(L, U)
    if not _eq(lower_star(g), L) or not hom_leq(f, g) or not hom_leq(g, f):
        return _w(f=f)
    return None


# --------------------------------------------------------------------------
# Mal'tsev-type laws
# --------------------------------------------------------------------------

@law("difunctional-deciders-agree")
def _difun(rng, n):
    """The picture test and D D° D inside D agree on plain relations."""
    X, Y = _pre(rng, n), _pre(rng, n)
    D = G.random_rel(rng, X, Y)
    if rng.random() < 0.3 and X.size and Y.size:
        f = _map(rng, X, Y)
        D = graph(f)
    if M.is_difunctional(D) != M.is_difunctional_composite(D):
        return _w(D=D)
    return None


@law("ord-difunctional-deciders-agree")
def _ordifun(rng, n):
    """The order-interleaved picture and D D^* D = D agree on ideals."""
    X, Y = _pre(rng, n), _pre(rng, n)
    D = _ideal(rng, X, Y)
    if not M.dd_star_d_agreement(D):
        return _w(D=D)
    return None


@law("maltsev-implies-ord-maltsev")
def _m2m(rng, n):
    """A difunctional ideal is Ord-difunctional."""
    X, Y = _pre(rng, n), _pre(rng, n)
    D = _ideal(rng, X, Y)
    if M.is_difunctional(D) and not M.is_ord_difunctional(D):
        return _w(D=D)
    return None


@law("d-inside-dd-star-d")
def _d_in(rng, n):
    """D is inside D D^* D."""
    X, Y = _pre(rng, n), _pre(rng, n)
    D = _ideal(rng, X, Y)
    if not _sub(D, M.dd_star_d(D)):
        return _w(D=D)
    return None


@law("discrete-ord-difunctional-is-difunctional")
def _discrete(rng, n):
    """Between discrete preorders the two difunctionality notions coincide."""
    X = FinPreorder.discrete(G.random_size(rng, n))
    Y = FinPreorder.discrete(G.random_size(rng, n))
    D = IdealRel(X, Y, G.random_rel(rng, X, Y).mat, check=False)
    if M.is_difunctional(D) != M.is_ord_difunctional(D):
        return _w(D=D)
    return None


@law("ckp-implications")
def _ckp(rng, n):
    """Instance-level implications from the characterisation theorem."""
    X, Y = _pre(rng, n), _pre(rng, n)
    D = _ideal(rng, X, Y)
    Z = _pre(rng, n)
    r = rng.random()
    if r < 0.4:
        R, S = G.random_congruence(rng, Z), G.random_congruence(rng, Z)
    elif r < 0.6:
        R = G.random_congruence(rng, Z)
        S = R
    else:
        R, S = G.random_reflexive_ideal(rng, Z), _ideal(rng, Z, Z)
    for name, applicable, holds in M.ckp_implications(D=D, R=R, S=S):
        if not holds:
            return _w(law=name, D=D, R=R, S=S)
    return None


# --------------------------------------------------------------------------
# (V-Cat)^op backend
# --------------------------------------------------------------------------

_VFIX = ("V2", "chain3-min", "lukasiewicz3", "diamond")


def _quantale(rng):
    return Q.FIXTURES[_VFIX[int(rng.integers(len(_VFIX)))]]()


def _vcat(rng, n, cap=5):
    V = _quantale(rng)
    return Q.random_vcat(rng, V, G.random_size(rng, min(n, cap)))


@law("vcat-classifier", backend="vcat")
def _classifier(rng, n):
    """h is a V-functor iff Y is a symmetric V-meet-category."""
    Y = _vcat(rng, n)
    if Q.h_is_vfunctor(Y) != Q.is_symmetric_vwedge(Y):
        return _w(Y=Y)
    return None


@law("vcat-cocomma-formula", backend="vcat")
def _cocomma(rng, n):
    """The cocomma X (+) X is a V-category with the two-branch hom."""
    X = _vcat(rng, n)
    C = Q.cocomma_self(X)
    s = X.size
    if not Q.vcat_check(C):
        return _w(X=X)
    for a in range(2 * s):
        for b in range(2 * s):
            i, j = a // max(s, 1), b // max(s, 1)
            want = X.hom[a % s, b % s] if i <= j else X.V.bottom
            if C.hom[a, b] != want:
                return _w(X=X, at=[a, b])
    return None


@law("vcat-r-star-formula", backend="vcat")
def _rstar(rng, n):
    """R_* is a V-category with the four-branch hom."""
    V = _quantale(rng)
    R = Q.random_vcat(rng, V, G.random_size(rng, min(n, 4), low=1 if n else 0))
    if R.size == 0:
        return None
    cover = rng.permutation(R.size)[: int(rng.integers(0, R.size + 1))]
    r1 = Q.random_vfunctor_into(rng, R, int(rng.integers(0, min(n, 4) + 1)), cover=cover)
    rest = sorted(set(range(R.size)) - set(r1.table.tolist()))
    r2 = Q.random_vfunctor_into(rng, R, int(rng.integers(0, min(n, 4) + 1)), cover=rest)
    Rs = Q.r_star_vcat(r1, r2)
    if not Q.vcat_check(Rs):
        return _w(R=R, r1=r1, r2=r2)
    nx = r1.dom.size
    for a in range(Rs.size):
        for b in range(Rs.size):
            ax, bx = a < nx, b < nx
            if ax and bx:
                want = r1.dom.hom[a, b]
            elif not ax and not bx:
                want = r2.dom.hom[a - nx, b - nx]
            elif ax:
                want = R.hom[r1.table[a], r2.table[b - nx]]
            else:
                want = V.bottom
            if Rs.hom[a, b] != want:
                return _w(R=R, r1=r1, r2=r2, at=[a, b])
    return None


@law("vcat-d-star-formula", backend="vcat")
def _dstar(rng, n):
    """D_* has product homs inside each summand and the three-term meet across."""
    Y = _vcat(rng, n, cap=4)
    Dst = Q.d_star_table(Y)
    s = Y.size
    V = Y.V
    if not Q.vcat_check(Dst):
        return _w(Y=Y)
    pairs = [(a, b) for a in range(s) for b in range(s)]
    m = len(pairs)
    for i in range(2 * m):
        for j in range(2 * m):
            (y1, y2), (z1, z2) = pairs[i % m], pairs[j % m]
            if i < m <= j:
                want = Q.d_star_cross_formula(Y, y1, y2, z1, z2)
            elif j < m <= i:
                want = V.bottom
            else:
                want = V.meet[Y.hom[y1, z1], Y.hom[y2, z2]]
            if Dst.hom[i, j] != want:
                return _w(Y=Y, at=[i, j])
    return None


@law("vcat-boolean-is-equivalence-relation", backend="vcat")
def _v2_equiv(rng, n):
    """Over V2 the classifier is 'the preorder is symmetric'."""
    V = Q.boolean_quantale()
    Y = Q.random_vcat(rng, V, G.random_size(rng, min(n, 5)))
    P = FinPreorder(Y.hom.astype(bool))
    if Q.is_symmetric_vwedge(Y) != P.is_symmetric() or Q.h_is_vfunctor(Y) != P.is_symmetric():
        return _w(Y=Y)
    return None


@law("vcat-hom-preorder", backend="vcat")
def _vhom(rng, n):
    """The V-functor preorder is reflexive, transitive and preserved by composition."""
    V = _quantale(rng)
    cap = min(n, 4)
    Y = Q.random_vcat(rng, V, G.random_size(rng, cap, low=1 if cap else 0))
    if Y.size == 0:
        return None
    X = Q.random_vfunctor_into(rng, Y, int(rng.integers(0, cap + 1))).dom
    f, g, h = (_random_vfunctor(rng, X, Y) for _ in range(3))
    if not Q.vhom_leq(f, f):
        return _w(f=f)
    if Q.vhom_leq(f, g) and Q.vhom_leq(g, h) and not Q.vhom_leq(f, h):
        return _w(f=f, g=g, h=h)
    k = _random_vfunctor(rng, Y, Y)
    if Q.vhom_leq(f, g) and not Q.vhom_leq(k @ f, k @ g):
        return _w(f=f, g=g, k=k)
    W = Q.random_vfunctor_into(rng, X, int(rng.integers(0, cap + 1))) if X.size else None
    if W is not None and Q.vhom_leq(f, g) and not Q.vhom_leq(f @ W, g @ W):
        return _w(f=f, g=g, w=W)
    return None


def _random_vfunctor(rng, X, Y):
    """Random V-functor ``X -> Y`` by rejection, falling back to a constant."""
    for _ in range(30):
        t = rng.integers(0, Y.size, X.size)
        f = Q.VFunctor(X, Y, t, check=False)
        if Q.vfunctor_check(f):
            return f
    return Q.VFunctor(X, Y, np.full(X.size, int(rng.integers(Y.size))), check=False)


# --------------------------------------------------------------------------
# stored instances
# --------------------------------------------------------------------------

def pps3_strict_instance():
    """An instance where ``k_*(R meet S)`` is strictly inside ``k_*R meet k_*S``.

    ``R = {(0, 0)}`` and ``S = {(0, 1)}`` from a point into the discrete
    two-element preorder, pushed along the constant map to a point.
    """
    X = FinPreorder.point()
    Y = FinPreorder.discrete(2)
    B = FinPreorder.point()
    k = MonotoneMap(Y, B, [0, 0])
    R = IdealRel.from_pairs(X, Y, [(0, 0)])
    S = IdealRel.from_pairs(X, Y, [(0, 1)])
    L = lower_star(k)
    lhs = compose(meet(R, S), L)
    rhs = meet(compose(R, L), compose(S, L))
    return {"R": R, "S": S, "k": k, "lhs": lhs, "rhs": rhs,
            "strict": _sub(lhs, rhs) and not _eq(lhs, rhs)}


# --------------------------------------------------------------------------
# runner
# --------------------------------------------------------------------------

def law_rng(seed, name):
    return np.random.default_rng([int(seed), zlib.crc32(name.encode())])


def run_law(law_obj, iterations, max_size, seed):
    rng = law_rng(seed, law_obj.name)
    passed = 0
    for i in range(iterations):
        try:
            w = law_obj.fn(rng, max_size)
        except Exception as exc:  # a crash is reported as a violation with context
            w = {"error": f"{type(exc).__name__}: {exc}"}
        if w is not None:
            return {"law": law_obj.name, "status": "violated", "passed": passed,
                    "checked": i + 1, "witness": w}
        passed += 1
    return {"law": law_obj.name, "status": "ok", "passed": passed,
            "checked": iterations, "witness": None}


def run_suite(backend="ord", iterations=1000, max_size=6, seed=0, laws=None):
    """Run every registered law for ``backend``; returns the JSON report."""
    if iterations < 1:
        raise ValueError("iterations must be at least 1")
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    chosen = registered(backend) if laws is None else list(laws)
    results = [run_law(l, iterations, max_size, seed) for l in chosen]
    extra = []
    if backend == "ord" and laws is None:
        inst = pps3_strict_instance()
        extra.append({
            "instance": "pps-3-strict",
            "strict": bool(inst["strict"]),
            "witness": to_json({k: inst[k] for k in ("R", "S", "k", "lhs", "rhs")}),
        })
    violations = [r for r in results if r["status"] != "ok"]
    violations += [{"law": e["instance"], "status": "violated", "witness": e["witness"]}
                   for e in extra if not e["strict"]]
    return {
        "schema": SCHEMA,
        "backend": backend,
        "seed": int(seed),
        "iterations": int(iterations),
        "max_size": int(max_size),
        "laws": results,
        "stored_instances": extra,
        "violations": violations,
    }
