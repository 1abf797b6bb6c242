"""Acceptance criteria 1-9.

Each test prints one ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line before asserting.  Run with ``pytest tests/test_acceptance.py -s`` to
see the lines.
"""

import numpy as np

import oracles
from ordcat import algebra as A
from ordcat import generators as G
from ordcat import laws as L
from ordcat import maltsev as M
from ordcat import quantale as Q
from ordcat.preorder import FinPreorder, all_preorders
from ordcat.relations import IdealRel, adjoint_to_map, id_ideal, lower_star, upper_star

SEED = 20240601


def report(n, ok, detail):
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


def test_criterion_1_law_suite():
    rep = L.run_suite("ord", iterations=1000, max_size=6, seed=SEED)
    bad = [v["law"] for v in rep["violations"]]
    strict = [e for e in rep["stored_instances"] if e["instance"] == "pps-3-strict"]
    ok = not bad and len(rep["laws"]) >= 40 and strict and strict[0]["strict"]
    report(1, ok, f"{len(rep['laws'])} ord laws x 1000 instances (size <= 6), "
                  f"violations={bad}, stored pps(3) strict={bool(strict and strict[0]['strict'])}")


def test_criterion_2_adjoint_round_trip():
    rng = np.random.default_rng(SEED)
    mismatches = 0
    for _ in range(200):
        X = G.random_preorder(rng, int(rng.integers(0, 6)))
        Y = G.random_preorder(rng, int(rng.integers(1, 6)))
        f = G.random_map(rng, X, Y)
        g = adjoint_to_map(lower_star(f), upper_star(f))
        mismatches += not np.array_equal(lower_star(g).mat, lower_star(f).mat)
    report(2, mismatches == 0, f"200 random maps, lower_star mismatches={mismatches}")


def test_criterion_3_ord_not_maltsev():
    D = M.counterexample_search(2)
    found = D is not None and not M.is_ord_difunctional(D)
    C2 = FinPreorder.chain(2)
    chain_example = (not M.is_ord_difunctional(id_ideal(C2))
                     and M.dd_star_d(id_ideal(C2)) == IdealRel.total(C2, C2).as_rel())
    disagreements = checked = 0
    for n in range(4):
        for m in range(4):
            X, Y = FinPreorder.discrete(n), FinPreorder.discrete(m)
            for bits in range(1 << (n * m)):
                mat = np.array([(bits >> k) & 1 for k in range(n * m)], bool).reshape(n, m)
                R = IdealRel(X, Y, mat)
                checked += 1
                disagreements += M.is_ord_difunctional(R) != M.is_difunctional(R)
    ok = found and chain_example and disagreements == 0
    report(3, ok, f"witness={None if D is None else D.pairs()}, I on 2-chain gives total DD*D="
                  f"{chain_example}, discrete ideals checked={checked} disagreements={disagreements}")


def test_criterion_4_maltsev_implies_ord_maltsev():
    rng = np.random.default_rng(SEED + 4)
    implication = containment = difunctional = proper = 0
    for _ in range(1000):
        X = G.random_preorder(rng, int(rng.integers(1, 6)))
        Y = G.random_preorder(rng, int(rng.integers(1, 6)))
        D = G.random_ideal(rng, X, Y, density=float(rng.uniform(0.02, 0.4)))
        d = M.is_difunctional(D)
        difunctional += d
        proper += d and 0 < D.mat.sum() < D.mat.size
        implication += d and not M.is_ord_difunctional(D)
        containment += not (D.as_rel() <= M.dd_star_d(D))
    ok = implication == 0 and containment == 0
    report(4, ok, f"1000 random ideals ({difunctional} difunctional, {proper} of them proper): "
                  f"implication failures={implication}, D not inside DD*D={containment}")


def test_criterion_5_coproduct_test():
    disagreements = checked = 0
    for n in range(4):
        for Y in all_preorders(n):
            checked += 1
            disagreements += M.w_maltsev_object_test(Y) != M.ord_w_maltsev_direct(Y, budget=2)[0]
    small = (not M.w_maltsev_object_test(FinPreorder.point())
             and not M.w_maltsev_object_test(FinPreorder.chain(2)))
    ok = disagreements == 0 and small
    report(5, ok, f"{checked} preorders of size <= 3, disagreements={disagreements}, "
                  f"singleton and 2-chain rejected={small}")


def test_criterion_6_vcat_classifier():
    leq_sets = {}
    exhaustive = mismatch = 0
    for name in ("V2", "chain3-min", "lukasiewicz3"):
        V = Q.FIXTURES[name]()
        leq_sets[name] = {(i, j) for i in range(V.size) for j in range(V.size) if V.leq[i, j]}
        for n in range(1, 4):
            for Y in Q.all_vcats(V, n):
                exhaustive += 1
                h = Q.h_is_vfunctor(Y)
                s = Q.is_symmetric_vwedge(Y)
                mismatch += h != s
                mismatch += s != oracles.is_symmetric_vwedge(Y.hom.tolist(), leq_sets[name])
                if name == "V2":
                    mismatch += s != FinPreorder(Y.hom.astype(bool)).is_symmetric()
    rng = np.random.default_rng(SEED + 6)
    names = ("V2", "chain3-min", "lukasiewicz3")
    rand_mismatch = positives = 0
    for i in range(500):
        V = Q.FIXTURES[names[i % 3]]()
        Y = Q.random_vcat(rng, V, int(rng.integers(4, 6)))
        h = Q.h_is_vfunctor(Y)
        positives += h
        rand_mismatch += h != Q.is_symmetric_vwedge(Y)
    ok = mismatch == 0 and rand_mismatch == 0
    report(6, ok, f"exhaustive {exhaustive} V-categories (<= 3 objects) mismatches={mismatch}; "
                  f"500 random at sizes 4-5 ({positives} symmetric) mismatches={rand_mismatch}")


def test_criterion_7_cocomma_and_r_star():
    rng = np.random.default_rng(SEED + 7)
    names = sorted(Q.FIXTURES)
    bad_check = bad_formula = 0
    for i in range(200):
        V = Q.FIXTURES[names[i % len(names)]]()
        X = Q.random_vcat(rng, V, int(rng.integers(1, 5)))
        C = Q.cocomma_self(X)
        bad_check += not Q.vcat_check(C)
        n = X.size
        bad_formula += not (np.array_equal(C.hom[:n, n:], X.hom)
                            and np.all(C.hom[n:, :n] == V.bottom))
        R = Q.random_vcat(rng, V, int(rng.integers(1, 4)))
        r1 = Q.random_vfunctor_into(rng, R, int(rng.integers(1, 4)), cover=range(R.size))
        r2 = Q.random_vfunctor_into(rng, R, int(rng.integers(1, 4)))
        S = Q.r_star_vcat(r1, r2)
        bad_check += not Q.vcat_check(S)
        m = r1.dom.size
        bad_formula += not np.array_equal(S.hom[:m, m:], R.hom[np.ix_(r1.table, r2.table)])
        Y = Q.random_vcat(rng, V, int(rng.integers(1, 3)))
        leq = {(a, b) for a in range(V.size) for b in range(V.size) if V.leq[a, b]}
        Dst = Q.d_star_table(Y)
        bad_check += not Q.vcat_check(Dst)
        bad_formula += Dst.hom.tolist() != oracles.d_star_oracle(Y.hom.tolist(), leq, V.bottom)
    ok = bad_check == 0 and bad_formula == 0
    report(7, ok, f"200 rounds of cocomma, R_* and D_*: vcat_check failures={bad_check}, "
                  f"formula mismatches={bad_formula}")


def test_criterion_8_replays():
    nat = A.natleq_replay()
    nat_ok = nat["passed"] and nat["checks"] == {"7<=8": True, "5<=8": True,
                                                 "5<=6": True, "7<=6": False}
    greg = A.gregarious_D_replay()
    greg_ok = (greg["passed"] and greg["checks"]["D_submonoid"] and greg["checks"]["gregarious"]
               and greg["checks"]["y+x_has_no_inverse"] and greg["witness"] is not None
               and len(greg["discrepancies"]) == 1)
    monlc = A.comma_monlc_replay()
    monlc_ok = monlc["passed"] and monlc["pi"] == [2, 1]
    gmon = A.comma_gmon_replay()
    gmon_ok = gmon["passed"] and gmon["pi"] == [[1, 0], [0, 0]] and gmon["checks"]["y+z=0_unsolvable"]
    ideal = A.ordgrp_ideal_replay()
    ideal_ok = ideal["passed"] and ideal["closure"] == [0, 1, 2, 3]
    chain = A.ordgrp_chain_replay()
    chain_ok = chain["passed"] and chain["configurations"] > 0
    results = {"natleq": nat_ok, "gregarious-D": greg_ok, "comma-monlc": monlc_ok,
               "comma-gmon": gmon_ok, "ordgrp-ideal": ideal_ok, "ordgrp-chain": chain_ok}
    report(8, all(results.values()),
           ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in results.items())
           + f"; printed-witness discrepancy reported={bool(greg['discrepancies'])}")


def test_criterion_9_regularity():
    by_name = {l.name: l for l in L.registered("ord")}
    runs = {"R2-factorization": 1000, "R3-so-pullback-stable": 500, "R4-bicoinserter": 200}
    res = {k: L.run_law(by_name[k], n, 6, SEED) for k, n in runs.items()}
    ok = all(r["status"] == "ok" and r["passed"] == runs[k] for k, r in res.items())
    report(9, ok, ", ".join(f"{k} {r['passed']}/{runs[k]}" for k, r in res.items()))
