"""Command line entry point: ``conjpi1 <command> ...``.

Exit codes: 0 success or affirmative verdict, 1 negative verdict or failed
check, 2 usage or data error. Output is JSON unless ``--text`` is given.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .datum import DatumError, LatticeError, datum_from_json, family_datum
from .fiber import SemidirectZPresentation, SpecializationError, fiber_product, specialize_d1
from .fingerprint import CatalogVersionError, catalog, compare_fingerprints, fingerprint
from .galois import GaloisRestriction, conjugate_datum
from .groups import GroupAxiomError, HomomorphismError
from .iso import decide_iso
from .modular import NotInvertibleError
from .reproduce import verify_paper
from .search import enumerate_examples

DATA_ERRORS = (DatumError, LatticeError, GroupAxiomError, HomomorphismError,
               NotInvertibleError, CatalogVersionError, ValueError, KeyError, OSError)


class UsageError(Exception):
    pass


def _ints(s, n, what):
    parts = s.split(",")
    if len(parts) != n:
        raise UsageError(f"{what} must be {n} comma-separated integers, got {s!r}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"{what} must be integers, got {s!r}") from None


def _pres(s):
    m, b = _ints(s, 2, "presentation")
    return SemidirectZPresentation(m, b)


def _dumps(obj):
    return json.dumps(obj, ensure_ascii=False, sort_keys=True)


def cmd_pi1(args, out):
    if args.family:
        m, b, r = _ints(args.family, 3, "--family")
        datum = family_datum(m, b, r)
    else:
        datum = datum_from_json(json.loads(Path(args.datum).read_text()))
    fp = fiber_product(datum)
    try:
        p = specialize_d1(fp)
    except SpecializationError as exc:
        summary = fp.summary()
        summary["presentation"] = None
        summary["reason"] = str(exc)
        out.append(_dumps(summary) if not args.text else _summary_text(summary))
        return 0
    if args.text:
        out.append(p.text())
    else:
        out.append(_dumps({**p.to_json(), "presentation": p.text()}))
    return 0


def _summary_text(s):
    lines = [
        f"fiber product over a torus of dimension {s['d']}",
        f"|Gamma| = {s['gamma_order']}, |Lambda| = {s['lambda_order']}, [L : Z^d] = {s['lattice_index']}",
        f"kernel {{0}} x ker(tau) has order {s['kernel_order']}",
        "lattice basis: " + "; ".join(" ".join(row) for row in s["lattice"]["basis"]),
        "generators:",
    ]
    lines += [f"  ({', '.join(g['ell'])} ; {g['g']})" for g in s["generators"]]
    return "\n".join(lines)


def cmd_twist(args, out):
    m, b, r = _ints(args.family, 3, "--family")
    sigma = GaloisRestriction(r, args.k)
    datum = conjugate_datum(family_datum(m, b, r), sigma)
    bt = datum.family.b
    if args.text:
        out.append(f"{m},{bt}")
    else:
        out.append(_dumps({"m": m, "b": bt, "r": r, "k": sigma.k}))
    return 0


def cmd_iso(args, out):
    p1, p2 = _pres(args.p1), _pres(args.p2)
    dec = decide_iso(p1, p2)
    if args.text:
        verdict = "isomorphic" if dec.isomorphic else "NOT isomorphic"
        out.append(f"{p1.text()}  vs  {p2.text()}: {verdict}")
        out.append(_dumps(dec.certificate))
    else:
        out.append(_dumps(dec.to_json()))
    return 0 if dec.isomorphic else 1


def cmd_fingerprint(args, out):
    f = fingerprint(_pres(args.pres), catalog(args.catalog))
    out.append(json.dumps(f.to_json(), ensure_ascii=False))
    return 0


def cmd_fingerprint_compare(args, out):
    cat = catalog(args.catalog)
    cmp = compare_fingerprints(fingerprint(_pres(args.p1), cat), fingerprint(_pres(args.p2), cat))
    out.append(_dumps(cmp.to_json()))
    return 0 if cmp.equal else 1


def cmd_search(args, out):
    if args.m_max < 2:
        raise UsageError("--m-max must be >= 2")
    out.extend(rec.dumps() for rec in enumerate_examples(args.m_max))
    return 0


def cmd_verify_paper(args, out):
    report = verify_paper()
    if args.text:
        for s in report["steps"]:
            out.append(f"{'PASS' if s['ok'] else 'FAIL'}  {s['step']}")
        out.append(f"{'PASS' if report['passed'] else 'FAIL'}  ({report['seconds']} s)")
    else:
        out.append(_dumps(report))
    return 0 if report["passed"] else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="conjpi1", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--text", action="store_true", help="human-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("pi1", cmd_pi1, "fundamental group of a datum")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--datum", metavar="FILE")
    g.add_argument("--family", metavar="m,b,r")

    p = add("twist", cmd_twist, "Galois twist of a family datum")
    p.add_argument("--family", metavar="m,b,r", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("iso", cmd_iso, "decide isomorphism of two (Z/m) ⋊_b Z")
    p.add_argument("p1", metavar="m1,b1")
    p.add_argument("p2", metavar="m2,b2")

    p = add("fingerprint", cmd_fingerprint, "homomorphism counts into the catalog")
    p.add_argument("pres", metavar="m,b")
    p.add_argument("--catalog", default="v1")

    p = add("fingerprint-compare", cmd_fingerprint_compare, "compare two fingerprints")
    p.add_argument("p1", metavar="m1,b1")
    p.add_argument("p2", metavar="m2,b2")
    p.add_argument("--catalog", default="v1")

    p = add("search", cmd_search, "enumerate conjugate pairs with non-isomorphic π₁")
    p.add_argument("--m-max", type=int, required=True)

    add("verify-paper", cmd_verify_paper, "reproduce the m = 11 example end to end")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = []
    try:
        code = args.fn(args, out)
    except UsageError as exc:
        print(f"conjpi1: error: {exc}", file=sys.stderr)
        return 2
    except DATA_ERRORS as exc:
        print(f"conjpi1: error: {exc}", file=sys.stderr)
        return 2
    if out:
        sys.stdout.write("\n".join(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
