import pytest

from ordcat import laws as L
from ordcat.relations import compose, meet


def test_registry_counts():
    assert len(L.registered("ord")) >= 40
    assert len(L.registered("vcat")) >= 6
    names = [l.name for l in L.registered()]
    assert len(names) == len(set(names))


def test_duplicate_registration_rejected():
    reg = L._Registry()
    reg.register("a")(lambda rng, n: None)
    with pytest.raises(ValueError):
        reg.register("a")(lambda rng, n: None)


def test_suite_is_deterministic():
    a = L.run_suite("ord", iterations=5, max_size=4, seed=3)
    b = L.run_suite("ord", iterations=5, max_size=4, seed=3)
    assert a == b and not a["violations"]


def test_law_streams_are_independent():
    x = L.law_rng(0, "ff-composition").integers(0, 1 << 30, 4).tolist()
    y = L.law_rng(0, "so-composition").integers(0, 1 << 30, 4).tolist()
    assert x != y


def test_max_size_zero_runs():
    rep = L.run_suite("ord", iterations=3, max_size=0, seed=0)
    assert not rep["violations"]


def test_invalid_arguments():
    with pytest.raises(ValueError):
        L.run_suite("ord", iterations=0)
    with pytest.raises(ValueError):
        L.run_suite("ord", iterations=1, max_size=-1)


def test_violation_reports_witness():
    bad = L.Law("always-bad", "ord", lambda rng, n: L._w(note="x"))
    rep = L.run_suite("ord", iterations=4, max_size=2, seed=0, laws=[bad])
    assert rep["violations"][0]["law"] == "always-bad"
    assert rep["violations"][0]["checked"] == 1
    assert rep["violations"][0]["witness"] == {"note": "x"}


def test_crash_is_a_violation():
    def boom(rng, n):
        raise RuntimeError("kaput")
    rep = L.run_suite("ord", iterations=2, max_size=2, seed=0, laws=[L.Law("boom", "ord", boom)])
    assert "kaput" in rep["violations"][0]["witness"]["error"]


def test_pps3_strict_instance():
    inst = L.pps3_strict_instance()
    assert inst["strict"]
    lhs = compose(meet(inst["R"], inst["S"]), L.lower_star(inst["k"]))
    assert lhs.mat.sum() == 0 and inst["rhs"].mat.sum() == 1


def test_vcat_suite_small():
    rep = L.run_suite("vcat", iterations=10, max_size=3, seed=1)
    assert not rep["violations"]
