"""``ordcat`` command line.

Every subcommand builds a JSON report first; the human-readable text on
stdout is rendered from that report.  Exit status: 0 when the report holds
no violations, 1 when it does, 2 for usage or input errors.
"""

import argparse
import json
import os
import sys

from . import algebra, laws, maltsev
from . import quantale as Q
from .errors import OrdcatError
from .preorder import FinPreorder
from .serialize import DecodeError, preorder_from_json, quantale_from_json, to_json

SCHEMA = laws.SCHEMA


# --------------------------------------------------------------------------
# replays
# --------------------------------------------------------------------------

def _ord_not_maltsev():
    D = maltsev.counterexample_search(2)
    ddd = maltsev.dd_star_d(D) if D is not None else None
    return {
        "replay": "ord-not-maltsev",
        "passed": D is not None,
        "witness": None if D is None else to_json({"D": D, "DD*D": ddd}),
    }


REPLAYS = {
    "natleq": algebra.natleq_replay,
    "gregarious-D": algebra.gregarious_D_replay,
    "comma-monlc": algebra.comma_monlc_replay,
    "comma-gmon": algebra.comma_gmon_replay,
    "ordgrp-ideal": algebra.ordgrp_ideal_replay,
    "ordgrp-chain": algebra.ordgrp_chain_replay,
    "ord-not-maltsev": _ord_not_maltsev,
}


# --------------------------------------------------------------------------
# report builders
# --------------------------------------------------------------------------

def _jsonable(obj):
    return json.loads(json.dumps(to_json(obj), sort_keys=True, default=_fallback))


def _fallback(o):
    if hasattr(o, "tolist"):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot encode {type(o).__name__}")


def report_check_laws(args):
    seed = _seed(args.seed)
    rep = laws.run_suite(args.backend, args.iterations, args.max_size, seed)
    rep["command"] = "check-laws"
    return rep


def report_replay(args):
    body = REPLAYS[args.id]()
    violations = [] if body["passed"] else [{"replay": args.id}]
    return {"schema": SCHEMA, "command": "replay", "id": args.id,
            "result": _jsonable(body), "violations": violations}


def _load_quantale(spec):
    if spec in Q.FIXTURES:
        return Q.FIXTURES[spec]()
    with open(spec, encoding="utf-8") as fh:
        return quantale_from_json(json.load(fh))


def report_classify_vcat(args):
    V = _load_quantale(args.quantale)
    rows, violations = [], []
    boolean = V == Q.boolean_quantale()
    for n in range(1, args.max_size + 1):
        for Y in Q.all_vcats(V, n):
            h = Q.h_is_vfunctor(Y)
            s = Q.is_symmetric_vwedge(Y)
            row = {"size": n, "hom": Y.hom.tolist(), "h_is_vfunctor": h, "symmetric_vwedge": s}
            if boolean:
                row["equivalence_relation"] = FinPreorder(Y.hom.astype(bool)).is_symmetric()
            rows.append(row)
            if h != s or row.get("equivalence_relation", s) != s:
                violations.append({"hom": row["hom"]})
    return {"schema": SCHEMA, "command": "classify-vcat", "quantale": to_json(V)["quantale"],
            "max_size": args.max_size, "rows": rows, "violations": violations}


def report_wmaltsev(args):
    with open(args.object, encoding="utf-8") as fh:
        doc = json.load(fh)
    Y = preorder_from_json(doc)
    verdict = maltsev.w_maltsev_object_test(Y)
    direct, wit = maltsev.ord_w_maltsev_direct(Y, budget=args.budget)
    violations = []
    if not direct and verdict:
        violations.append({"reason": "direct search refutes an object the coproduct test accepts"})
    out = {"schema": SCHEMA, "command": "wmaltsev", "object": to_json(Y),
           "coproduct_test": verdict, "direct_search": direct, "budget": args.budget,
           "violations": violations}
    if wit is not None:
        out["direct_witness"] = _jsonable(wit)
    return out


# --------------------------------------------------------------------------
# human rendering
# --------------------------------------------------------------------------

def render(rep):
    cmd = rep["command"]
    lines = []
    if cmd == "check-laws":
        lines.append(f"backend={rep['backend']} seed={rep['seed']} "
                     f"iterations={rep['iterations']} max_size={rep['max_size']}")
        for r in rep["laws"]:
            lines.append(f"  {r['status']:8s} {r['law']:45s} {r['passed']}/{r['checked']}")
        for e in rep.get("stored_instances", []):
            lines.append(f"  stored   {e['instance']:45s} strict={e['strict']}")
    elif cmd == "replay":
        res = rep["result"]
        lines.append(f"replay {rep['id']}: {'pass' if res['passed'] else 'FAIL'}")
        for k, v in res.get("checks", {}).items():
            lines.append(f"  {k}: {v}")
        if res.get("pi") is not None:
            lines.append(f"  (pi1(c), pi2(c)) = {tuple(res['pi'])}")
        if res.get("witness") is not None:
            lines.append(f"  witness: {json.dumps(res['witness'], sort_keys=True)}")
        for d in res.get("discrepancies", []):
            lines.append(f"  discrepancy: {d['note']} (membership {d['membership']})")
        for key in ("configurations", "chains"):
            if key in res:
                lines.append(f"  {key}: {res[key]}")
    elif cmd == "classify-vcat":
        q = rep["quantale"]
        lines.append(f"quantale={q if isinstance(q, str) else 'inline'} max_size={rep['max_size']} "
                     f"rows={len(rep['rows'])}")
        for r in rep["rows"]:
            extra = f" eqrel={r['equivalence_relation']}" if "equivalence_relation" in r else ""
            lines.append(f"  n={r['size']} hom={r['hom']} wmaltsev={r['h_is_vfunctor']} "
                         f"sym_vwedge={r['symmetric_vwedge']}{extra}")
    elif cmd == "wmaltsev":
        lines.append(f"coproduct test: {rep['coproduct_test']}")
        lines.append(f"direct search (budget {rep['budget']}): {rep['direct_search']}")
    n = len(rep["violations"])
    lines.append("OK: no violations" if n == 0 else f"VIOLATIONS: {n}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _seed(flag):
    env = os.environ.get("ORDCAT_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"ORDCAT_SEED must be an integer, got {env!r}")
    return flag


class _UsageError(Exception):
    pass


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="ordcat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check-laws", help="run the randomized law suite")
    c.add_argument("--backend", choices=("ord", "vcat"), default="ord")
    c.add_argument("--iterations", type=_positive, default=1000)
    c.add_argument("--max-size", type=_nonneg, default=6)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(build=report_check_laws)

    r = sub.add_parser("replay", help="run a named replay")
    r.add_argument("id", choices=sorted(REPLAYS))
    r.add_argument("--json", metavar="PATH")
    r.set_defaults(build=report_replay)

    v = sub.add_parser("classify-vcat", help="classify small V-categories")
    v.add_argument("--quantale", default="V2", help="fixture name or JSON file")
    v.add_argument("--max-size", type=_nonneg, default=2)
    v.add_argument("--json", metavar="PATH")
    v.set_defaults(build=report_classify_vcat)

    w = sub.add_parser("wmaltsev", help="coproduct test for a preorder")
    w.add_argument("--object", required=True, help="JSON file holding a preorder")
    w.add_argument("--budget", type=_nonneg, default=2)
    w.add_argument("--json", metavar="PATH")
    w.set_defaults(build=report_wmaltsev)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.build(args)
    except _UsageError as e:
        print(f"ordcat: error: {e}", file=sys.stderr)
        return 2
    except (OrdcatError, DecodeError, OSError, KeyError, ValueError, json.JSONDecodeError) as e:
        print(f"ordcat: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    text = json.dumps(rep, sort_keys=True, indent=2)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(render(rep))
    return 0 if not rep["violations"] else 1


if __name__ == "__main__":
    sys.exit(main())
