"""JSON encodings for preorders, maps, relations, quantales, V-categories and groups.

Every encoder returns plain ``dict``/``list``/``int``/``bool`` values so the
output of ``json.dumps(..., sort_keys=True)`` is byte-stable.  Decoders
accept either the wrapped form (``{"preorder": {...}}``) or the bare body.
"""

import json

import numpy as np

from .algebra import FinPreordGroup
from .errors import OrdcatError
from .preorder import FinPreorder, MonotoneMap
from .quantale import FIXTURES, FinQuantale, FinVCat, VFunctor
from .relations import IdealRel, Rel


class DecodeError(OrdcatError):
    pass


def _unwrap(doc, key):
    if isinstance(doc, dict) and key in doc and isinstance(doc[key], (dict, str)):
        return doc[key]
    return doc


def _bool_matrix(rows, n, m, what):
    arr = np.array(rows, dtype=bool) if n and m else np.zeros((n, m), dtype=bool)
    if arr.shape != (n, m):
        raise DecodeError(f"{what} has shape {arr.shape}, expected {(n, m)}")
    return arr


# --------------------------------------------------------------------------
# encoders
# --------------------------------------------------------------------------

def preorder_to_json(P):
    return {"size": P.size, "leq": P.leq.astype(int).tolist()}


def map_to_json(f):
    return {"dom": preorder_to_json(f.dom), "cod": preorder_to_json(f.cod),
            "table": [int(v) for v in f.table]}


def rel_to_json(R):
    return {
        "dom": preorder_to_json(R.dom),
        "cod": preorder_to_json(R.cod),
        "pairs": [list(p) for p in R.pairs()],
        "ideal": bool(R.is_ideal()),
    }


def quantale_to_json(V):
    if V.name in FIXTURES and FIXTURES[V.name]() == V:
        return V.name
    return {"size": V.size, "leq": V.leq.astype(int).tolist(),
            "tensor": V.tensor.tolist(), "unit": V.unit}


def vcat_to_json(Y):
    return {"quantale": quantale_to_json(Y.V), "size": Y.size, "hom": Y.hom.tolist()}


def vfunctor_to_json(f):
    return {"dom": vcat_to_json(f.dom), "cod": vcat_to_json(f.cod),
            "table": [int(v) for v in f.table]}


def group_to_json(G):
    return {"order": G.order, "op": G.op.tolist(), "cone": sorted(G.cone)}


def to_json(obj):
    """Encode any supported value, wrapped under its type key."""
    if isinstance(obj, FinPreorder):
        return {"preorder": preorder_to_json(obj)}
    if isinstance(obj, MonotoneMap):
        return {"map": map_to_json(obj)}
    if isinstance(obj, Rel):
        return {"rel": rel_to_json(obj)}
    if isinstance(obj, FinQuantale):
        return {"quantale": quantale_to_json(obj)}
    if isinstance(obj, FinVCat):
        return {"vcat": vcat_to_json(obj)}
    if isinstance(obj, VFunctor):
        return {"vfunctor": vfunctor_to_json(obj)}
    if isinstance(obj, FinPreordGroup):
        return {"group": group_to_json(obj)}
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (list, tuple)):
        return [to_json(o) for o in obj]
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    return obj


# --------------------------------------------------------------------------
# decoders
# --------------------------------------------------------------------------

def preorder_from_json(doc):
    doc = _unwrap(doc, "preorder")
    try:
        n = int(doc["size"])
        leq = _bool_matrix(doc.get("leq", [[i == j for j in range(n)] for i in range(n)]), n, n, "leq")
    except (KeyError, TypeError, ValueError) as e:
        raise DecodeError(f"bad preorder document: {e}") from e
    return FinPreorder(leq)


def map_from_json(doc):
    doc = _unwrap(doc, "map")
    return MonotoneMap(preorder_from_json(doc["dom"]), preorder_from_json(doc["cod"]), doc["table"])


def rel_from_json(doc):
    """Decode a relation; ``"ideal": true`` demands weakening closure.

    A non-closed matrix flagged as an ideal raises :class:`NotAnIdeal` whose
    ``witness`` names the offending triple.
    """
    doc = _unwrap(doc, "rel")
    X, Y = preorder_from_json(doc["dom"]), preorder_from_json(doc["cod"])
    pairs = [tuple(p) for p in doc.get("pairs", [])]
    R = Rel.from_pairs(X, Y, pairs)
    if doc.get("ideal", False):
        return IdealRel(X, Y, R.mat)
    return R


def quantale_from_json(doc):
    doc = _unwrap(doc, "quantale")
    if isinstance(doc, str):
        if doc not in FIXTURES:
            raise DecodeError(f"unknown quantale fixture {doc!r}; known: {sorted(FIXTURES)}")
        return FIXTURES[doc]()
    n = int(doc["size"])
    leq = _bool_matrix(doc["leq"], n, n, "leq")
    return FinQuantale(leq, doc["tensor"], doc["unit"], name=doc.get("name"))


def vcat_from_json(doc):
    doc = _unwrap(doc, "vcat")
    V = quantale_from_json(doc["quantale"])
    n = int(doc["size"])
    hom = np.array(doc["hom"], dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), np.int64)
    return FinVCat(V, hom)


def group_from_json(doc):
    doc = _unwrap(doc, "group")
    return FinPreordGroup(doc["op"], doc.get("cone", [0]), gens=doc.get("gens"))


DECODERS = {
    "preorder": preorder_from_json,
    "map": map_from_json,
    "rel": rel_from_json,
    "quantale": quantale_from_json,
    "vcat": vcat_from_json,
    "group": group_from_json,
}


def from_json(doc):
    """Decode a wrapped document by its single top-level key."""
    if not isinstance(doc, dict) or len(doc) != 1:
        raise DecodeError("expected an object with exactly one type key")
    (key, body), = doc.items()
    if key not in DECODERS:
        raise DecodeError(f"unknown document type {key!r}")
    return DECODERS[key](body)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return from_json(json.load(fh))


def dumps(obj):
    return json.dumps(to_json(obj), sort_keys=True)
