import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import ideals, maps, preorders, relations
from ordcat.errors import NotAnIdeal, PreconditionError, ShapeMismatch
from ordcat.preorder import FinPreorder, MonotoneMap, all_monotone_maps, all_preorders
from ordcat.relations import (
    IdealRel,
    Rel,
    adjoint_to_map,
    check_adjunction,
    compose,
    compose_all,
    effective_witness,
    graph,
    id_ideal,
    ideal_close,
    ideal_close_fixpoint,
    ideal_witness,
    inverse_image,
    is_congruence,
    is_reflexive,
    lower_star,
    membership,
    opp,
    pullback_rel,
    r_upper,
    star,
    tabulate,
    upper,
    upper_star,
)


# ---------------------------------------------------------------- ideals

def test_identity_ideal_is_the_order(C2):
    assert oracles.rel_pairs(id_ideal(C2)) == {(0, 0), (0, 1), (1, 1)}


def test_non_closed_relation_is_rejected_with_witness(C2):
    with pytest.raises(NotAnIdeal) as exc:
        IdealRel(C2, C2, [[False, False], [True, False]])
    assert exc.value.witness is not None


def test_ideal_witness_none_for_ideal(C2):
    assert ideal_witness(id_ideal(C2)) is None


def test_closure_of_single_pair(C2):
    R = Rel.from_pairs(C2, C2, [(1, 0)])
    assert oracles.rel_pairs(ideal_close(R)) == {(0, 0), (0, 1), (1, 0), (1, 1)}


@given(relations(4))
def test_closure_matches_oracle_and_fixpoint(R):
    exp = oracles.weakening_closure(oracles.rel_pairs(R), oracles.leq_pairs(R.dom),
                                    oracles.leq_pairs(R.cod))
    assert oracles.rel_pairs(ideal_close(R)) == exp
    assert ideal_close_fixpoint(R) == ideal_close(R)


@given(ideals(4))
def test_identity_is_unit_for_ideals(R):
    assert compose(id_ideal(R.dom), R) == R
    assert compose(R, id_ideal(R.cod)) == R


@given(relations(3), st.data())
def test_composition_matches_oracle(R, data):
    Z = data.draw(preorders(3))
    bits = data.draw(st.lists(st.booleans(), min_size=R.cod.size * Z.size,
                              max_size=R.cod.size * Z.size))
    S = Rel(R.cod, Z, np.array(bits, dtype=bool).reshape(R.cod.size, Z.size))
    assert oracles.rel_pairs(compose(R, S)) == oracles.compose(oracles.rel_pairs(R),
                                                              oracles.rel_pairs(S))


def test_compose_rejects_mismatch(C2, A2):
    with pytest.raises(ShapeMismatch):
        compose(id_ideal(C2), id_ideal(FinPreorder.chain(3)))


# ---------------------------------------------------------------- f_*, f^*

def test_lower_and_upper_star_of_identity(C2):
    f = MonotoneMap.identity(C2)
    assert lower_star(f) == id_ideal(C2)
    assert upper_star(f) == id_ideal(C2)


def test_lower_star_of_bottom_point(C2):
    f = MonotoneMap(FinPreorder.point(), C2, [0])
    assert oracles.rel_pairs(lower_star(f)) == {(0, 0), (0, 1)}
    assert oracles.rel_pairs(upper_star(f)) == {(0, 0)}


@given(maps(5))
def test_lower_star_is_closed_graph(f):
    assert lower_star(f) == ideal_close(graph(f))
    assert upper_star(f) == ideal_close(opp(graph(f)))


@given(maps(5))
def test_lower_star_left_adjoint_to_upper_star(f):
    assert check_adjunction(lower_star(f), upper_star(f))


def test_adjoint_to_map_round_trip_exhaustive():
    pre = [P for n in range(1, 4) for P in all_preorders(n)]
    count = 0
    for X in pre[:8]:
        for Y in pre:
            for f in all_monotone_maps(X, Y):
                g = adjoint_to_map(lower_star(f), upper_star(f))
                assert lower_star(g) == lower_star(f)
                count += 1
    assert count > 100


def test_adjoint_to_map_rejects_non_adjunction(C2):
    T = IdealRel.total(C2, C2)
    with pytest.raises(PreconditionError):
        adjoint_to_map(T, T)


# ---------------------------------------------------------------- R_*, R^*

def test_star_and_upper_of_identity_ideal(C2):
    I = id_ideal(C2)
    assert star(I) == I
    # the opposite (1, 0) weakens to everything
    assert upper(I) == IdealRel.total(C2, C2)


@given(ideals(3))
def test_star_of_ideal_is_itself(R):
    assert star(R) == R


def _all_ideals(X, Y):
    cells = X.size * Y.size
    for bits in range(1 << cells):
        m = np.array([(bits >> k) & 1 for k in range(cells)], dtype=bool).reshape(X.size, Y.size)
        R = Rel(X, Y, m)
        if R.is_ideal():
            yield R


def test_upper_is_smallest_ideal_containing_opposite():
    pre = [P for n in range(0, 3) for P in all_preorders(n)]
    for X in pre:
        for Y in pre:
            for R in _all_ideals(X, Y):
                U = upper(R)
                assert opp(R) <= U.as_rel()
                smallest = [S for S in _all_ideals(Y, X) if opp(R) <= S]
                assert all(U.as_rel() <= S for S in smallest)


@given(relations(4))
def test_upper_equals_closed_opposite(R):
    assert upper(R) == ideal_close(opp(R))


# ---------------------------------------------------------------- tabulation, membership

def test_tabulation_is_componentwise(C2):
    T, r1, r2 = tabulate(id_ideal(C2))
    assert T.size == 3
    assert {(int(a), int(b)) for a, b in zip(r1.table, r2.table)} == {(0, 0), (0, 1), (1, 1)}


def test_membership_generalised_elements(C2):
    P = FinPreorder.point()
    bot, top = MonotoneMap(P, C2, [0]), MonotoneMap(P, C2, [1])
    I = id_ideal(C2)
    assert membership(I, bot, top) and not membership(I, top, bot)
    idc = MonotoneMap.identity(C2)
    assert membership(I, idc, idc)


# ---------------------------------------------------------------- pullbacks, congruences

@given(ideals(3), st.integers(0, 2**32 - 1))
def test_pullback_rel_is_pointwise(R, seed):
    from ordcat.generators import random_map, random_preorder
    rng = np.random.default_rng(seed)
    f = random_map(rng, random_preorder(rng, int(rng.integers(0, 4))), R.dom) if R.dom.size else \
        MonotoneMap(FinPreorder.empty(), R.dom, [])
    g = random_map(rng, random_preorder(rng, int(rng.integers(0, 4))), R.cod) if R.cod.size else \
        MonotoneMap(FinPreorder.empty(), R.cod, [])
    P = pullback_rel(R, f, g)
    exp = {(u, v) for u in range(f.dom.size) for v in range(g.dom.size)
           if R.mat[f.table[u], g.table[v]]}
    assert oracles.rel_pairs(P) == exp
    assert P.is_ideal()


def test_inverse_image_of_identity_is_comma(C2, A2):
    f = MonotoneMap(A2, C2, [0, 1])
    assert oracles.rel_pairs(inverse_image(id_ideal(C2), f)) == {(0, 0), (0, 1), (1, 1)}


def test_congruences_are_effective():
    for n in range(1, 4):
        for X in all_preorders(n):
            for R in _all_ideals(X, X):
                if not is_congruence(R):
                    continue
                f = effective_witness(R)
                assert f is not None


def test_effective_witness_requires_congruence(C2):
    with pytest.raises(PreconditionError):
        effective_witness(IdealRel.empty(C2, C2))


@given(preorders(4, min_size=1))
def test_identity_ideal_reflexive(X):
    assert is_reflexive(id_ideal(X)) and is_congruence(id_ideal(X))


@given(ideals(3))
def test_r_upper_via_tabulation_matches_upper(R):
    _, r1, r2 = tabulate(R)
    assert r_upper(r1, r2) == upper(R)
    assert compose_all(R, upper(R), R) >= R
