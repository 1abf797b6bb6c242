"""Difunctionality deciders and Mal'tsev-type checks in the Ord backend."""

import numpy as np

from . import _kernels as K
from .errors import NotAnIdeal
from .preorder import (
    FinPreorder,
    all_monotone_maps,
    all_preorders,
    copair,
    coproduct,
    pair_map,
    so_ff_factorize,
)
from .relations import (
    IdealRel,
    Rel,
    compose,
    compose_all,
    ideal_close,
    is_congruence,
    is_reflexive,
    lower_star,
    membership,
    opp,
    tabulate,
    r_upper,
    upper_star,
)


# --------------------------------------------------------------------------
# difunctionality
# --------------------------------------------------------------------------

def difunctional_witness(D):
    """``(x, y, u, v)`` with ``x D y``, ``u D y``, ``u D v`` but not ``x D v``."""
    w = K.difunctional_witness(np.ascontiguousarray(D.mat))
    return None if w[0] < 0 else tuple(int(v) for v in w)


def is_difunctional(D):
    return difunctional_witness(D) is None


def is_difunctional_composite(D):
    """``D D° D <= D``."""
    return compose_all(D.as_rel(), opp(D), D.as_rel()) <= D.as_rel()


def _require_ideal(D):
    if not D.is_ideal():
        raise NotAnIdeal("expected an ideal", witness=None)


def ord_difunctional_witness(D):
    """``(x, y, y2, u, u2, v)`` breaking the order-interleaved implication, or ``None``."""
    _require_ideal(D)
    w = K.ord_difunctional_witness(np.ascontiguousarray(D.mat), D.dom.leq, D.cod.leq)
    return None if w[0] < 0 else tuple(int(v) for v in w)


def is_ord_difunctional(D):
    return ord_difunctional_witness(D) is None


def dd_star_d(D):
    """``D D^* D`` with ``D^*`` built from the tabulation of ``D``."""
    _, d1, d2 = tabulate(D)
    Dst = r_upper(d1, d2)
    return compose_all(D.as_rel(), Dst.as_rel(), D.as_rel())


def is_ord_difunctional_composite(D):
    _require_ideal(D)
    return np.array_equal(dd_star_d(D).mat, D.mat)


def dd_star_d_agreement(D):
    return is_ord_difunctional(D) == is_ord_difunctional_composite(D)


# --------------------------------------------------------------------------
# Ord-W-Mal'tsev objects
# --------------------------------------------------------------------------

def iota_relation(Y):
    """The relation ``D`` on ``2Y`` from the image of ``3Y -> 2Y x 2Y``.

    Copies of ``Y`` in ``3Y`` go to ``(i1, i2)``, ``(i2, i2)``, ``(i2, i1)``.
    Returns ``(D, i1, i2)`` where ``i1, i2: Y -> 2Y`` are the coprojections.
    """
    Y2, i1, i2 = coproduct(Y, Y)
    # copairing of three copies is the map out of 3Y = (Y + Y) + Y
    leg = copair(copair(pair_map(i1, i2), pair_map(i2, i2)), pair_map(i2, i1))
    _, m = so_ff_factorize(leg)
    n = Y2.size
    mat = np.zeros((n, n), dtype=bool)
    for idx in m.table.tolist():
        mat[idx // n, idx % n] = True
    return Rel(Y2, Y2, mat), i1, i2


def w_maltsev_object_test(Y):
    """Coproduct test: ``(i1, i1) in_Y D_*``."""
    D, i1, _ = iota_relation(Y)
    return membership(ideal_close(D), i1, i1)


def _ideals_between(X, Z):
    cells = X.size * Z.size
    out = []
    for bits in range(1 << cells):
        m = np.array([(bits >> k) & 1 for k in range(cells)], dtype=bool).reshape(X.size, Z.size)
        R = Rel(X, Z, m)
        if R.is_ideal():
            out.append(IdealRel(X, Z, m, check=False))
    return out


def ord_w_maltsev_direct(Y, budget=2):
    """Bounded search for a failure of the Ord-W-Mal'tsev implication at ``Y``.

    Ideals ``R: X -> Z`` range over all preorders ``X``, ``Z`` of size at most
    ``budget``; generalised elements range over all monotone maps out of ``Y``.
    Returns ``(verdict, witness)``; ``verdict`` is ``False`` with a witness
    dictionary when the implication fails, ``True`` means no counterexample
    within the budget.
    """
    pre = [P for n in range(budget + 1) for P in all_preorders(n)]
    maps = {P: all_monotone_maps(Y, P) for P in pre}
    for X in pre:
        for Z in pre:
            mx, mz = maps[X], maps[Z]
            if not mx or not mz:
                continue
            for R in _ideals_between(X, Z):
                w = _w_maltsev_search(R, mx, mz)
                if w is not None:
                    return False, w
    return True, None


def _w_maltsev_search(R, mx, mz):
    M = R.mat
    lx, lz = R.dom.leq, R.cod.leq

    def rel(a, b):
        return bool(np.all(M[a.table, b.table]))

    def le(L, a, b):
        return bool(np.all(L[a.table, b.table]))

    for x in mx:
        for z in mz:
            if not rel(x, z):
                continue
            for z2 in mz:
                if not le(lz, z, z2):
                    continue
                for u in mx:
                    if not rel(u, z2):
                        continue
                    for u2 in mx:
                        if not le(lx, u, u2):
                            continue
                        for v in mz:
                            if rel(u2, v) and not rel(x, v):
                                return {
                                    "ideal": R,
                                    "x": x, "z": z, "z2": z2,
                                    "u": u, "u2": u2, "v": v,
                                }
    return None


# --------------------------------------------------------------------------
# instance-level implications behind the characterisation theorem
# --------------------------------------------------------------------------

def effective_congruence(f):
    """``f^* f_*``, the kernel congruence of ``f``."""
    return compose(lower_star(f), upper_star(f))


def ckp_implications(D=None, R=None, S=None):
    """Evaluate the applicable implications on one instance.

    ``D`` is an ideal ``X -> Y``; ``R`` and ``S`` are ideals on one object.
    Returns a list of ``(name, applicable, holds)``.
    """
    out = []
    if D is not None:
        _, d1, d2 = tabulate(D)
        E1, E2 = effective_congruence(d1), effective_congruence(d2)
        commute = np.array_equal(compose(E1, E2).mat, compose(E2, E1).mat)
        ok = np.array_equal(dd_star_d(D).mat, D.mat)
        out.append(("effective-commute=>ddd", commute, (not commute) or ok))
    for T in (R, S):
        if T is None or T.dom != T.cod:
            continue
        refl = is_reflexive(T)
        Tst = r_upper(*tabulate(T)[1:])
        ddd = compose_all(T.as_rel(), Tst.as_rel(), T.as_rel()) <= T.as_rel()
        trans = compose(T.as_rel(), T.as_rel()) <= T.as_rel()
        out.append(("ddd=>reflexive-transitive", refl and ddd, not (refl and ddd) or trans))
    if R is not None and S is not None and R.dom == S.dom:
        both_refl = is_reflexive(R) and is_reflexive(S)
        out.append(("reflexive-composite", both_refl,
                    not both_refl or is_reflexive(compose(R, S))))
        congs = is_congruence(R) and is_congruence(S)
        comm = np.array_equal(compose(R, S).mat, compose(S, R).mat)
        applicable = congs and comm
        out.append(("commuting-congruences-compose", applicable,
                    not applicable or is_congruence(compose(R, S))))
    return out


def ckp_suite(instances):
    """Run :func:`ckp_implications` over ``instances`` (dicts with keys D, R, S).

    Returns ``{"checked": n, "applicable": {...}, "violations": [...]}``.
    """
    applicable = {}
    violations = []
    for k, inst in enumerate(instances):
        for name, app, holds in ckp_implications(**inst):
            applicable[name] = applicable.get(name, 0) + int(app)
            if not holds:
                violations.append({"instance": k, "law": name})
    return {"checked": len(instances), "applicable": applicable, "violations": violations}


# --------------------------------------------------------------------------
# counterexample search
# --------------------------------------------------------------------------

def _all_ideals_up_to(max_size, discrete_only=False):
    pre = [P for n in range(max_size + 1) for P in all_preorders(n)
           if not discrete_only or P.is_discrete()]
    for X in pre:
        for Y in pre:
            yield from _ideals_between(X, Y)


def counterexample_search(max_size, seed=0, discrete_only=False, total_only=False,
                          random_trials=200, exhaustive_below=3):
    """Search for an ideal that is not Ord-difunctional.

    Sizes below ``exhaustive_below`` are enumerated exhaustively (preorders in
    the order of :func:`all_preorders`, ideals in bit order); larger sizes are
    sampled with a seeded generator.  Returns the first witness or ``None``.
    """
    if max_size < 2:
        raise ValueError("max_size must be at least 2")

    def accept(D):
        if total_only and not D.mat.all():
            return False
        return not is_ord_difunctional(D)

    for D in _all_ideals_up_to(min(max_size, exhaustive_below - 1), discrete_only):
        if accept(D):
            return D
    if max_size < exhaustive_below:
        return None
    from .generators import random_ideal, random_preorder
    rng = np.random.default_rng(seed)
    for _ in range(random_trials):
        n = int(rng.integers(exhaustive_below, max_size + 1))
        m = int(rng.integers(exhaustive_below, max_size + 1))
        X = FinPreorder.discrete(n) if discrete_only else random_preorder(rng, n)
        Y = FinPreorder.discrete(m) if discrete_only else random_preorder(rng, m)
        D = IdealRel.total(X, Y) if total_only else random_ideal(rng, X, Y)
        if accept(D):
            return D
    return None

