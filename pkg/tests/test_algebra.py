import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordcat import algebra as A
from ordcat.algebra import BicyclicElem as B
from ordcat.errors import PreconditionError

elems = st.builds(B, st.integers(0, 15), st.integers(0, 15))


# ---------------------------------------------------------------- bicyclic monoid

def test_defining_relation():
    assert A.bicyclic_add(A.X_GEN, A.Y_GEN) == A.ZERO
    assert A.bicyclic_add(A.Y_GEN, A.X_GEN) == B(1, 1)


def test_negative_coordinates_rejected():
    with pytest.raises(ValueError):
        B(-1, 0)


@given(elems, elems)
def test_addition_matches_word_rewriting(a, b):
    assert A.bicyclic_add(a, b) == A.bicyclic_add_oracle(a, b)


@given(elems, elems, elems)
def test_addition_associative(a, b, c):
    assert A.bicyclic_add(A.bicyclic_add(a, b), c) == A.bicyclic_add(a, A.bicyclic_add(b, c))


@given(elems)
def test_gregarious_witness(e):
    u, v = A.gregarious_witness(e)
    assert A.bicyclic_sum(u, e, v) == A.ZERO


def _word_D(a, b):
    # independent membership: b = y + a + x as words, or b = a
    return b == a or b == A.rewrite_word("y" + A.word_of(a) + "x")


def test_D_membership_matches_word_definition():
    for a in A.box(6):
        for b in A.box(7):
            assert A.bicyclic_D_member(a, b) == _word_D(a, b)


def test_printed_witness_is_not_in_D():
    # (x, 2x): y + x + x = (1, 2), not (0, 2)
    assert not A.bicyclic_D_member(B(0, 1), B(0, 2))
    assert not _word_D(B(0, 1), B(0, 2))


def test_search_finds_genuine_witness():
    a, b, c, d = A.find_difunctionality_witness(A.bicyclic_D_member, 4)
    m = A.bicyclic_D_member
    assert m(a, b) and m(c, b) and m(c, d) and not m(a, d)


def test_gregarious_replay_reports_discrepancy():
    rep = A.gregarious_D_replay()
    assert rep["passed"]
    assert rep["checks"]["D_submonoid"] and rep["checks"]["y+x_has_no_inverse"]
    assert rep["discrepancies"] and rep["discrepancies"][0]["membership"] == [False, True, False]


# ---------------------------------------------------------------- natural numbers and commas

def test_natleq_replay():
    rep = A.natleq_replay()
    assert rep["passed"]
    assert rep["checks"] == {"7<=8": True, "5<=8": True, "5<=6": True, "7<=6": False}


def test_monoid_hom_leq():
    assert A.monoid_hom_leq(1, 3) and not A.monoid_hom_leq(5, 4)
    with pytest.raises(ValueError):
        A.monoid_hom_leq(-1, 2)


def test_finite_monoid_hom_leq_z3():
    op = (np.arange(3)[:, None] + np.arange(3)[None, :]) % 3
    ok, wit = A.finite_monoid_hom_leq(op, [0, 1, 2], [0, 2, 1])
    assert ok and wit == [0, 1, 2]


def test_comma_monlc_replay():
    rep = A.comma_monlc_replay()
    assert rep["passed"] and rep["pi"] == [2, 1]


def test_comma_gmon_replay():
    rep = A.comma_gmon_replay()
    assert rep["passed"]
    assert rep["pi"] == [[1, 0], [0, 0]]
    assert rep["checks"]["y+z=0_unsolvable"]


# ---------------------------------------------------------------- preordered groups

def test_cyclic_group_cones():
    assert A.cones(A.cyclic_group(4)) == [(0,), (0, 2), (0, 1, 2, 3)]


def test_cone_must_be_closed():
    with pytest.raises(PreconditionError):
        A.cyclic_group(4, cone=(0, 1))


def test_homs_z4_to_z2():
    Z4, Z2 = A.cyclic_group(4), A.cyclic_group(2)
    assert [t.tolist() for t in A.all_homs(Z4, Z2, monotone=False)] == [[0, 0, 0, 0], [0, 1, 0, 1]]


def test_monotone_homs_respect_cones():
    Z2 = A.cyclic_group(2)
    Z2full = A.cyclic_group(2, cone=(0, 1))
    assert [t.tolist() for t in A.all_homs(Z2full, Z2)] == [[0, 0]]


def test_hom_leq_checks_inputs():
    Z2 = A.cyclic_group(2)
    with pytest.raises(PreconditionError):
        A.ordgrp_hom_leq(Z2, Z2, np.array([1, 1]), np.array([0, 1]))


def test_hom_leq_trivial_cone_relates_everything():
    Z2 = A.cyclic_group(2)
    homs = A.all_homs(Z2, Z2)
    assert all(A.ordgrp_hom_leq(Z2, Z2, f, g) for f in homs for g in homs)


def test_group_product_layout():
    Z2, Z3 = A.cyclic_group(2), A.cyclic_group(3)
    P = A.group_product(Z2, Z3)
    # (1, 2) + (1, 2) = (0, 1)
    assert P.add(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1


def test_ideal_forces_product():
    Z2 = A.cyclic_group(2)
    _, carrier = A.ideal_forces_product(Z2, Z2, [(0, 0)])
    assert carrier == [0, 1, 2, 3]
    with pytest.raises(PreconditionError):
        A.ideal_forces_product(Z2, Z2, [(1, 0)])


def test_ordgrp_replays():
    assert A.ordgrp_ideal_replay()["passed"]
    rep = A.ordgrp_chain_replay()
    assert rep["passed"] and rep["configurations"] > 0 and rep["chains"] > 0
