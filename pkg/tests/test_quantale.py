import numpy as np
import pytest

import oracles
from ordcat import quantale as Q
from ordcat.errors import AxiomError, OrdcatError, PreconditionError
from ordcat.preorder import FinPreorder


def leq_set(V):
    return {(i, j) for i in range(V.size) for j in range(V.size) if V.leq[i, j]}


@pytest.mark.parametrize("name", sorted(Q.FIXTURES))
def test_fixtures_are_integral_quantales(name):
    V = Q.FIXTURES[name]()
    assert Q.quantale_check(V)
    assert V.unit == V.top


def test_lukasiewicz_table():
    # indices 0, 1, 2 stand for 0, 1/2, 1; a (x) b = max(0, a + b - 1)
    assert Q.lukasiewicz3().tensor.tolist() == [[0, 0, 0], [0, 0, 1], [0, 1, 2]]


def test_non_integral_quantale_rejected():
    # unit at the bottom of a 2-chain
    with pytest.raises(OrdcatError) as exc:
        Q.FinQuantale([[1, 1], [0, 1]], [[0, 1], [1, 1]], 0)
    assert "unit" in str(exc.value)


def test_broken_tensor_rejected():
    # not commutative-compatible with joins: 2 (x) 1 = 0 while 1 (x) 1 = 1
    bad = Q.FinQuantale(Q._chain_leq(3), [[0, 0, 0], [0, 1, 1], [0, 0, 2]], 2, check=False)
    assert Q.quantale_violation(bad) is not None
    with pytest.raises(OrdcatError):
        Q.quantale_check(bad) or Q.FinQuantale(bad.leq, bad.tensor, 2)


def test_vcats_over_v2_are_preorders():
    V = Q.boolean_quantale()
    for n in range(4):
        cats = Q.all_vcats(V, n)
        assert len(cats) == [1, 1, 4, 29][n]
        for Y in cats:
            FinPreorder(Y.hom.astype(bool))


def test_vcat_rejects_bad_diagonal():
    with pytest.raises(AxiomError):
        Q.FinVCat(Q.boolean_quantale(), [[0, 1], [1, 1]])


def test_vfunctor_and_vhom_leq():
    V = Q.min_chain3()
    Y = Q.FinVCat(V, [[2, 1], [1, 2]])
    idy = Q.VFunctor.identity(Y)
    c0 = Q.VFunctor(Y, Y, [0, 0])
    assert Q.vhom_leq(idy, idy)
    assert not Q.vhom_leq(idy, c0)
    assert Q.vfunctor_check(idy @ c0)


def test_vfunctor_rejects_expanding_map():
    V = Q.boolean_quantale()
    A = Q.FinVCat(V, [[1, 1], [1, 1]])
    B = Q.FinVCat(V, [[1, 0], [0, 1]])
    with pytest.raises(OrdcatError):
        Q.VFunctor(A, B, [0, 1])


# ---------------------------------------------------------------- constructions

def test_cocomma_of_singleton():
    V = Q.lukasiewicz3()
    X = Q.FinVCat(V, [[2]])
    assert Q.cocomma_self(X).hom.tolist() == [[2, 2], [0, 2]]


def test_cocomma_is_vcat_and_formula():
    rng = np.random.default_rng(7)
    for name in sorted(Q.FIXTURES):
        V = Q.FIXTURES[name]()
        for _ in range(20):
            X = Q.random_vcat(rng, V, int(rng.integers(1, 5)))
            C = Q.cocomma_self(X)
            assert Q.vcat_check(C)
            n = X.size
            for x in range(n):
                for y in range(n):
                    assert C.hom[x, n + y] == X.hom[x, y]
                    assert C.hom[n + x, y] == V.bottom


def test_r_star_of_identity_span():
    V = Q.min_chain3()
    Y = Q.FinVCat(V, [[2, 1], [0, 2]])
    i = Q.VFunctor.identity(Y)
    Rs = Q.r_star_vcat(i, i)
    assert Rs.hom.tolist() == [[2, 1, 2, 1], [0, 2, 0, 2], [0, 0, 2, 1], [0, 0, 0, 2]]
    assert Q.vcat_check(Rs)


def test_r_star_requires_joint_surjectivity():
    V = Q.boolean_quantale()
    R = Q.FinVCat(V, [[1, 0], [0, 1]])
    P = Q.FinVCat(V, [[1]])
    f = Q.VFunctor(P, R, [0])
    with pytest.raises(PreconditionError):
        Q.r_star_vcat(f, f)


def test_d_star_of_singleton_is_chain():
    V = Q.boolean_quantale()
    Y = Q.FinVCat(V, [[1]])
    assert Q.d_star_table(Y).hom.tolist() == [[1, 1], [0, 1]]
    assert Q.h_is_vfunctor(Y)


@pytest.mark.parametrize("name", ["V2", "chain3-min", "lukasiewicz3"])
def test_d_star_matches_four_case_oracle(name):
    V = Q.FIXTURES[name]()
    for n in (1, 2, 3):
        for Y in Q.all_vcats(V, n):
            expected = oracles.d_star_oracle(Y.hom.tolist(), leq_set(V), V.bottom)
            assert Q.d_star_table(Y).hom.tolist() == expected


def test_d_star_cross_formula_spot_values():
    V = Q.min_chain3()
    Y = Q.FinVCat(V, [[2, 1], [0, 2]])
    n = Y.size
    D = Q.d_star_table(Y)
    for y1, y2, a, b in np.ndindex(2, 2, 2, 2):
        assert D.hom[y1 * n + y2, n * n + a * n + b] == Q.d_star_cross_formula(Y, y1, y2, a, b)


# ---------------------------------------------------------------- classifier

def test_h_examples_over_v2():
    V = Q.boolean_quantale()
    disc = Q.FinVCat(V, [[1, 0], [0, 1]])
    chain = Q.FinVCat(V, [[1, 1], [0, 1]])
    indisc = Q.FinVCat(V, [[1, 1], [1, 1]])
    assert Q.h_is_vfunctor(disc) and Q.h_is_vfunctor(indisc)
    assert not Q.h_is_vfunctor(chain)


@pytest.mark.parametrize("name", ["V2", "chain3-min", "lukasiewicz3"])
def test_classifier_exhaustive_up_to_3(name):
    V = Q.FIXTURES[name]()
    for n in range(1, 4):
        for Y in Q.all_vcats(V, n):
            sym = oracles.is_symmetric_vwedge(Y.hom.tolist(), leq_set(V))
            assert Q.is_symmetric_vwedge(Y) == sym
            assert Q.h_is_vfunctor(Y) == sym
            if name == "V2":
                assert sym == FinPreorder(Y.hom.astype(bool)).is_symmetric()


def test_classifier_on_diamond_up_to_2():
    V = Q.diamond()
    for n in (1, 2):
        for Y in Q.all_vcats(V, n):
            assert Q.h_is_vfunctor(Y) == Q.is_symmetric_vwedge(Y)


def test_random_vfunctor_into_covers_targets():
    rng = np.random.default_rng(3)
    V = Q.lukasiewicz3()
    R = Q.random_vcat(rng, V, 3)
    f = Q.random_vfunctor_into(rng, R, 2, cover=[0, 1, 2])
    assert set(f.table.tolist()) == {0, 1, 2}
    assert Q.vfunctor_check(f)
