import json

import numpy as np
import pytest
from hypothesis import given

from strategies import ideals, maps, preorders, relations
from ordcat import algebra as A
from ordcat import quantale as Q
from ordcat.errors import NotAnIdeal
from ordcat.serialize import DecodeError, dumps, from_json, load, to_json


def round_trip(obj):
    return from_json(json.loads(dumps(obj)))


@given(preorders(5))
def test_preorder_round_trip(P):
    assert round_trip(P) == P


@given(maps(4))
def test_map_round_trip(f):
    g = round_trip(f)
    assert g.dom == f.dom and g.cod == f.cod and np.array_equal(g.table, f.table)


@given(relations(3))
def test_rel_round_trip(R):
    S = round_trip(R)
    assert S.dom == R.dom and S.cod == R.cod and np.array_equal(S.mat, R.mat)


@given(ideals(3))
def test_ideal_round_trip_keeps_flag(D):
    assert to_json(D)["rel"]["ideal"]
    assert round_trip(D) == D


def test_flagged_non_ideal_raises_with_witness(C2):
    doc = {"rel": {"dom": {"size": 2, "leq": [[1, 1], [0, 1]]},
                   "cod": {"size": 2, "leq": [[1, 1], [0, 1]]},
                   "pairs": [[1, 0]], "ideal": True}}
    with pytest.raises(NotAnIdeal) as exc:
        from_json(doc)
    assert exc.value.witness is not None


def test_quantale_fixture_encodes_by_name():
    assert to_json(Q.lukasiewicz3()) == {"quantale": "lukasiewicz3"}
    assert round_trip(Q.lukasiewicz3()) == Q.lukasiewicz3()


def test_inline_quantale_and_vcat_round_trip():
    V = Q.FinQuantale([[1, 1], [0, 1]], [[0, 0], [0, 1]], 1)
    assert round_trip(V) == V
    Y = Q.FinVCat(Q.min_chain3(), [[2, 1], [0, 2]])
    assert round_trip(Y) == Y


def test_group_round_trip():
    G = A.cyclic_group(4, cone=(0, 2))
    H = round_trip(G)
    assert H.order == 4 and H.cone == G.cone


def test_unknown_type_and_fixture():
    with pytest.raises(DecodeError):
        from_json({"widget": {}})
    with pytest.raises(DecodeError):
        from_json({"quantale": "nope"})
    with pytest.raises(DecodeError):
        from_json({"preorder": {"size": 2, "leq": [[1]]}})


def test_load_from_file(tmp_path):
    p = tmp_path / "c2.json"
    p.write_text(json.dumps({"preorder": {"size": 2, "leq": [[1, 1], [0, 1]]}}))
    assert load(p).size == 2


def test_dumps_is_stable(C2):
    assert dumps(C2) == dumps(C2) == '{"preorder": {"leq": [[1, 1], [0, 1]], "size": 2}}'
