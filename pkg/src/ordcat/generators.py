"""Seeded random instances for the law suite.

Every function takes a ``numpy.random.Generator`` first so runs are
reproducible from one seed.
"""

import numpy as np

from . import _kernels as K
from .preorder import FinPreorder, MonotoneMap, so_ff_factorize
from .relations import IdealRel, Rel, ideal_close


def random_preorder(rng, n, density=None):
    if density is None:
        density = rng.choice([0.0, 0.15, 0.3, 0.5, 0.8])
    m = rng.random((n, n)) < density
    return FinPreorder(K.rt_closure(m), check=False)


def random_poset(rng, n, density=None):
    """A random partial order: closure of random edges going up in index."""
    if density is None:
        density = rng.choice([0.0, 0.2, 0.4, 0.7])
    m = np.triu(rng.random((n, n)) < density, k=1)
    perm = rng.permutation(n)
    m = m[np.ix_(perm, perm)]
    return FinPreorder(K.rt_closure(m), check=False)


def random_size(rng, max_size, low=0):
    return int(rng.integers(low, max_size + 1)) if max_size >= low else 0


def random_map(rng, X, Y):
    """A uniformly-ish random monotone map, or ``None`` if none exists.

    Values are assigned in index order by randomised backtracking; constant
    maps guarantee success whenever ``Y`` is non-empty.
    """
    n = X.size
    if n == 0:
        return MonotoneMap(X, Y, [], check=False)
    if Y.size == 0:
        return None
    t = np.zeros(n, dtype=np.int64)
    order = rng.permutation(n)
    lx, ly = X.leq, Y.leq

    def ok(pos, v):
        i = order[pos]
        for q in range(pos):
            j = order[q]
            if lx[j, i] and not ly[t[j], v]:
                return False
            if lx[i, j] and not ly[v, t[j]]:
                return False
        return True

    def extend(pos):
        if pos == n:
            return True
        for v in rng.permutation(Y.size):
            if ok(pos, v):
                t[order[pos]] = v
                if extend(pos + 1):
                    return True
        return False

    extend(0)
    return MonotoneMap(X, Y, t, check=False)


def random_surjection(rng, X, max_extra=None):
    """A random so-morphism out of ``X`` (a quotient with a coarsened order)."""
    n = X.size
    if n == 0:
        return MonotoneMap(X, X, [], check=False)
    k = int(rng.integers(1, n + 1))
    labels = np.concatenate([rng.permutation(k), rng.integers(0, k, n - k)])[: n]
    labels = labels[rng.permutation(n)]
    # quotient order: generated by the image of X's order plus random extras
    m = np.zeros((k, k), dtype=bool)
    for i, j in np.argwhere(X.leq):
        m[labels[i], labels[j]] = True
    m |= rng.random((k, k)) < rng.choice([0.0, 0.2])
    Q = FinPreorder(K.rt_closure(m), check=False)
    return MonotoneMap(X, Q, labels, check=False)


def random_ff_mono(rng, Y):
    """Inclusion of a random subset of ``Y`` with the restricted order."""
    keep = np.flatnonzero(rng.random(Y.size) < 0.6)
    sub = Y.restrict(keep)
    perm = rng.permutation(len(keep))
    sub = sub.restrict(perm)
    return MonotoneMap(sub, Y, keep[perm], check=False)


def random_ff(rng, Y):
    """A random fully faithful map into ``Y``; may repeat equivalent points."""
    m = random_ff_mono(rng, Y)
    if m.dom.size == 0 or rng.random() < 0.5:
        return m
    # duplicate some points of the domain as equivalent copies
    dup = rng.integers(0, m.dom.size, int(rng.integers(1, 3)))
    idx = np.concatenate([np.arange(m.dom.size), dup])
    D = m.dom.restrict(idx)
    return MonotoneMap(D, Y, m.table[idx], check=False)


def random_rel(rng, X, Y, density=None):
    if density is None:
        density = rng.choice([0.0, 0.1, 0.3, 0.6, 1.0])
    return Rel(X, Y, rng.random((X.size, Y.size)) < density)


def random_ideal(rng, X, Y, density=None):
    if density is None:
        density = rng.choice([0.0, 0.05, 0.15, 0.3, 0.6])
    R = random_rel(rng, X, Y, density)
    return ideal_close(R)


def random_congruence(rng, X):
    """A reflexive transitive ideal on ``X``: an order coarser than ``X``'s."""
    extra = rng.random((X.size, X.size)) < rng.choice([0.0, 0.1, 0.3])
    return IdealRel(X, X, K.rt_closure(X.leq | extra), check=False)


def random_reflexive_ideal(rng, X):
    R = random_rel(rng, X, X)
    m = R.mat | np.eye(X.size, dtype=bool)
    return ideal_close(Rel(X, X, m))


def image_factor(f):
    """Shorthand for the ff part of ``f``'s image factorisation."""
    return so_ff_factorize(f)[1]
