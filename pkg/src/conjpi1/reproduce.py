"""End-to-end check of the m = 11 example: X_{α,4} and its conjugate by σ(ζ) = ζ²."""
from __future__ import annotations

import time

from .datum import family_datum
from .fiber import fiber_product, specialize_d1
from .fingerprint import catalog, compare_fingerprints, fingerprint
from .galois import GaloisRestriction, conjugate_datum
from .iso import decide_iso, verify_certificate


def verify_paper(m=11, b=4, k=2, catalog_version="v1"):
    """Run datum -> π₁ -> twist -> iso decision -> fingerprints.

    Returns a report dict with one entry per step and an overall ``passed``.
    """
    start = time.perf_counter()
    steps = []

    def step(name, ok, detail):
        steps.append({"step": name, "ok": bool(ok), "detail": detail})

    datum = family_datum(m, b)
    r = datum.family.r
    p = specialize_d1(fiber_product(datum))
    step("presentation", (p.m, p.b) == (11, 4), {"m": p.m, "b": p.b, "text": p.text()})

    twisted = conjugate_datum(datum, GaloisRestriction(r, k))
    q = specialize_d1(fiber_product(twisted))
    step("twist", (q.m, q.b) == (11, 9), {"k": k, "m": q.m, "b": q.b, "text": q.text()})

    dec = decide_iso(p, q)
    cert = dec.certificate
    witness_ok = (
        not dec.isomorphic
        and cert.get("kind") == "unit-mismatch"
        and (cert.get("b2"), cert.get("b2_inverse")) == (9, 5)
        and cert.get("b1") == 4
        and bool(verify_certificate(dec, p, q))
    )
    step("iso", witness_ok, dec.to_json())

    cat = catalog(catalog_version)
    cmp = compare_fingerprints(fingerprint(p, cat), fingerprint(q, cat))
    step("fingerprints", cmp.equal, cmp.to_json())

    elapsed = time.perf_counter() - start
    return {
        "passed": all(s["ok"] for s in steps),
        "steps": steps,
        "seconds": round(elapsed, 3),
    }
