"""Hot boolean/lattice kernels, compiled with numba when available.

Every kernel exists twice: a numba ``@njit`` loop version (suffix ``_nb``)
and a vectorised numpy version (suffix ``_np``).  The public names bound at
the bottom of this module point at one of the two.  Set the environment
variable ``ORDCAT_DISABLE_NUMBA=1`` before import to force the numpy path.

All kernels take C-contiguous ``bool`` (or ``int64`` for lattice tables)
arrays and never mutate their inputs.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _noop_jit(*args, **kwargs):
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


njit = numba.njit if HAVE_NUMBA else _noop_jit

USE_NUMBA = HAVE_NUMBA and os.environ.get("ORDCAT_DISABLE_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"

_NO_WITNESS4 = np.full(4, -1, dtype=np.int64)
_NO_WITNESS6 = np.full(6, -1, dtype=np.int64)


# --------------------------------------------------------------------------
# boolean matrix product
# --------------------------------------------------------------------------

@njit(cache=True)
def bool_matmul_nb(a, b):
    n, m = a.shape
    p = b.shape[1]
    out = np.zeros((n, p), dtype=np.bool_)
    for i in range(n):
        for j in range(m):
            if a[i, j]:
                for k in range(p):
                    if b[j, k]:
                        out[i, k] = True
    return out


def bool_matmul_np(a, b):
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=bool)
    return np.matmul(a, b)


# --------------------------------------------------------------------------
# reflexive-transitive closure (Warshall)
# --------------------------------------------------------------------------

@njit(cache=True)
def rt_closure_nb(m):
    n = m.shape[0]
    out = m.copy()
    for i in range(n):
        out[i, i] = True
    for k in range(n):
        for i in range(n):
            if out[i, k]:
                for j in range(n):
                    if out[k, j]:
                        out[i, j] = True
    return out


def rt_closure_np(m):
    n = m.shape[0]
    out = m.copy()
    out[np.arange(n), np.arange(n)] = True
    for k in range(n):
        out |= np.outer(out[:, k], out[k, :])
    return out


# --------------------------------------------------------------------------
# weakening-closure violation: returns [kind, i, j, k]
#   kind 1: leq_x[i, j] and mat[j, k] but not mat[i, k]
#   kind 2: mat[i, j] and leq_y[j, k] but not mat[i, k]
# --------------------------------------------------------------------------

@njit(cache=True)
def ideal_violation_nb(leq_x, mat, leq_y):
    n, m = mat.shape
    out = np.full(4, -1, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if leq_x[i, j]:
                for k in range(m):
                    if mat[j, k] and not mat[i, k]:
                        out[0] = 1
                        out[1] = i
                        out[2] = j
                        out[3] = k
                        return out
    for i in range(n):
        for j in range(m):
            if mat[i, j]:
                for k in range(m):
                    if leq_y[j, k] and not mat[i, k]:
                        out[0] = 2
                        out[1] = i
                        out[2] = j
                        out[3] = k
                        return out
    return out


def ideal_violation_np(leq_x, mat, leq_y):
    left = leq_x[:, :, None] & mat[None, :, :] & ~mat[:, None, :]
    hits = np.argwhere(left)
    if len(hits):
        i, j, k = hits[0]
        return np.array([1, i, j, k], dtype=np.int64)
    right = mat[:, :, None] & leq_y[None, :, :] & ~mat[:, None, :]
    hits = np.argwhere(right)
    if len(hits):
        i, j, k = hits[0]
        return np.array([2, i, j, k], dtype=np.int64)
    return _NO_WITNESS4.copy()


# --------------------------------------------------------------------------
# ordinary difunctionality, by the four-variable picture
# returns [x, y, u, v] with D[x,y], D[u,y], D[u,v], not D[x,v]; or -1s
# --------------------------------------------------------------------------

@njit(cache=True)
def difunctional_witness_nb(d):
    # same search order as the numpy version: first bad (x, v), then (u, y)
    n, m = d.shape
    out = np.full(4, -1, dtype=np.int64)
    reach = bool_matmul_nb(bool_matmul_nb(d, np.ascontiguousarray(d.T)), d)
    for x in range(n):
        for v in range(m):
            if reach[x, v] and not d[x, v]:
                for u in range(n):
                    if not d[u, v]:
                        continue
                    for y in range(m):
                        if d[x, y] and d[u, y]:
                            out[0] = x
                            out[1] = y
                            out[2] = u
                            out[3] = v
                            return out
    return out


def difunctional_witness_np(d):
    n, m = d.shape
    # exists (y, u) with D[x,y], D[u,y], D[u,v]
    reach = bool_matmul_np(bool_matmul_np(d, d.T.copy()), d)
    bad = np.argwhere(reach & ~d)
    if not len(bad):
        return _NO_WITNESS4.copy()
    x, v = bad[0]
    cand = np.argwhere(d[x, :][None, :] & d & d[:, v][:, None])
    u, y = cand[0]
    return np.array([x, y, u, v], dtype=np.int64)


# --------------------------------------------------------------------------
# order-interleaved difunctionality, by the six-variable picture
# returns [x, y, y2, u, u2, v] with
#   D[x,y], y <= y2, D[u,y2], u <= u2, D[u2,v], not D[x,v]; or -1s
# --------------------------------------------------------------------------

@njit(cache=True)
def ord_difunctional_witness_nb(d, leq_x, leq_y):
    n, m = d.shape
    out = np.full(6, -1, dtype=np.int64)
    step1 = bool_matmul_nb(d, leq_y)
    step2 = bool_matmul_nb(step1, np.ascontiguousarray(d.T))
    step3 = bool_matmul_nb(leq_x, d)
    reach = bool_matmul_nb(step2, step3)
    for x in range(n):
        for v in range(m):
            if not reach[x, v] or d[x, v]:
                continue
            for u in range(n):
                if not (step2[x, u] and step3[u, v]):
                    continue
                u2 = 0
                while not (leq_x[u, u2] and d[u2, v]):
                    u2 += 1
                y2 = 0
                while not (step1[x, y2] and d[u, y2]):
                    y2 += 1
                y = 0
                while not (d[x, y] and leq_y[y, y2]):
                    y += 1
                out[0] = x
                out[1] = y
                out[2] = y2
                out[3] = u
                out[4] = u2
                out[5] = v
                return out
    return out


def ord_difunctional_witness_np(d, leq_x, leq_y):
    step1 = bool_matmul_np(d, leq_y)            # x -> y2
    step2 = bool_matmul_np(step1, d.T.copy())   # x -> u
    step3 = bool_matmul_np(leq_x, d)            # u -> v through u2
    reach = bool_matmul_np(step2, step3)
    bad = np.argwhere(reach & ~d)
    if not len(bad):
        return _NO_WITNESS6.copy()
    x, v = bad[0]
    # walk back to concrete intermediate elements
    u2s = np.flatnonzero(d[:, v])
    for u in np.flatnonzero(step2[x] & bool_matmul_np(leq_x, d[:, v:v + 1])[:, 0]):
        u2 = next(w for w in u2s if leq_x[u, w])
        y2 = np.flatnonzero(step1[x] & d[u])[0]
        y = np.flatnonzero(d[x] & leq_y[:, y2])[0]
        return np.array([x, y, y2, u, u2, v], dtype=np.int64)
    raise AssertionError("unreachable: witness reconstruction failed")


# --------------------------------------------------------------------------
# V-category kernels over a finite quantale given by tables
#   tensor[a, b], join[a, b], leq[a, b]; hom[x, y] holds V-indices
# --------------------------------------------------------------------------

@njit(cache=True)
def vcat_violation_nb(hom, tensor, leq, unit):
    # returns [kind, x, y, z]; kind 1 = unit law at x, kind 2 = composition law
    n = hom.shape[0]
    out = np.full(4, -1, dtype=np.int64)
    for x in range(n):
        if not leq[unit, hom[x, x]]:
            out[0] = 1
            out[1] = x
            return out
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not leq[tensor[hom[y, z], hom[x, y]], hom[x, z]]:
                    out[0] = 2
                    out[1] = x
                    out[2] = y
                    out[3] = z
                    return out
    return out


def vcat_violation_np(hom, tensor, leq, unit):
    n = hom.shape[0]
    diag = hom[np.arange(n), np.arange(n)]
    bad = np.flatnonzero(~leq[unit, diag])
    if len(bad):
        return np.array([1, bad[0], -1, -1], dtype=np.int64)
    # comp[x, y, z] = tensor(hom[y, z], hom[x, y])
    comp = tensor[hom[None, :, :], hom[:, :, None]]
    ok = leq[comp, hom[:, None, :]]
    hits = np.argwhere(~ok)
    if len(hits):
        x, y, z = hits[0]
        return np.array([2, x, y, z], dtype=np.int64)
    return _NO_WITNESS4.copy()


@njit(cache=True)
def vcat_closure_nb(hom, tensor, join):
    n = hom.shape[0]
    out = hom.copy()
    changed = True
    while changed:
        changed = False
        for y in range(n):
            for x in range(n):
                for z in range(n):
                    val = join[out[x, z], tensor[out[y, z], out[x, y]]]
                    if val != out[x, z]:
                        out[x, z] = val
                        changed = True
    return out


def vcat_closure_np(hom, tensor, join):
    out = hom.copy()
    while True:
        comp = tensor[out[None, :, :], out[:, :, None]]   # [x, y, z]
        new = out
        for y in range(out.shape[0]):
            new = join[new, comp[:, y, :]]
        if np.array_equal(new, out):
            return out
        out = new


@njit(cache=True)
def vwedge_violation_nb(hom, meet, leq):
    # returns [kind, a, b, c]; kind 1 = asymmetry, kind 2 = meet-transitivity
    n = hom.shape[0]
    out = np.full(4, -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if hom[a, b] != hom[b, a]:
                out[0] = 1
                out[1] = a
                out[2] = b
                return out
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not leq[meet[hom[a, b], hom[b, c]], hom[a, c]]:
                    out[0] = 2
                    out[1] = a
                    out[2] = b
                    out[3] = c
                    return out
    return out


def vwedge_violation_np(hom, meet, leq):
    asym = np.argwhere(hom != hom.T)
    if len(asym):
        a, b = asym[0]
        return np.array([1, a, b, -1], dtype=np.int64)
    lhs = meet[hom[:, :, None], hom[None, :, :]]     # [a, b, c]
    hits = np.argwhere(~leq[lhs, hom[:, None, :]])
    if len(hits):
        a, b, c = hits[0]
        return np.array([2, a, b, c], dtype=np.int64)
    return _NO_WITNESS4.copy()


KERNEL_NAMES = (
    "bool_matmul",
    "rt_closure",
    "ideal_violation",
    "difunctional_witness",
    "ord_difunctional_witness",
    "vcat_violation",
    "vcat_closure",
    "vwedge_violation",
)


def implementations(name):
    """Return ``(numba_version, numpy_version)`` of a kernel."""
    g = globals()
    nb = g[name + "_nb"] if HAVE_NUMBA else None
    return nb, g[name + "_np"]


_suffix = "_nb" if USE_NUMBA else "_np"
bool_matmul = globals()["bool_matmul" + _suffix]
rt_closure = globals()["rt_closure" + _suffix]
ideal_violation = globals()["ideal_violation" + _suffix]
difunctional_witness = globals()["difunctional_witness" + _suffix]
ord_difunctional_witness = globals()["ord_difunctional_witness" + _suffix]
vcat_violation = globals()["vcat_violation" + _suffix]
vcat_closure = globals()["vcat_closure" + _suffix]
vwedge_violation = globals()["vwedge_violation" + _suffix]
