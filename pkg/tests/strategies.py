"""Hypothesis strategies for finite preorders, maps and relations."""

import numpy as np
from hypothesis import strategies as st

from ordcat import generators as G
from ordcat._kernels import rt_closure
from ordcat.preorder import FinPreorder
from ordcat.relations import Rel, ideal_close


@st.composite
def preorders(draw, max_size=5, min_size=0):
    n = draw(st.integers(min_size, max_size))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    m = np.array(bits, dtype=bool).reshape(n, n)
    return FinPreorder(rt_closure(m), check=False)


@st.composite
def maps(draw, max_size=5):
    X = draw(preorders(max_size))
    Y = draw(preorders(max_size, min_size=1 if X.size else 0))
    seed = draw(st.integers(0, 2**32 - 1))
    return G.random_map(np.random.default_rng(seed), X, Y)


@st.composite
def relations(draw, max_size=4):
    X = draw(preorders(max_size))
    Y = draw(preorders(max_size))
    bits = draw(st.lists(st.booleans(), min_size=X.size * Y.size, max_size=X.size * Y.size))
    return Rel(X, Y, np.array(bits, dtype=bool).reshape(X.size, Y.size))


@st.composite
def ideals(draw, max_size=4):
    return ideal_close(draw(relations(max_size)))


