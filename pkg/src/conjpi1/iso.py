"""Isomorphism of (Z/m) ⋊_b Z groups, with checkable certificates.

For cyclic A = Z/m, Out(A) = (Z/m)* is abelian, so A ⋊_{b1} Z ≅ A ⋊_{b2} Z
exactly when b2 ∈ {b1, b1⁻¹}. Both directions come with a certificate:
an explicit pair of mutually inverse generator maps, or the unit arithmetic
that rules one out.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .fiber import SemidirectZPresentation

# words ------------------------------------------------------------------
# A word is a list of syllables (letter, exponent), letter in {"a", "t"}.

_SYLLABLE = re.compile(r"\s*([at])(?:\^\s*(-?\d+))?\s*")


def parse_word(s: str):
    s = s.strip()
    if s in ("", "1", "e"):
        return []
    out, pos = [], 0
    while pos < len(s):
        mt = _SYLLABLE.match(s, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"malformed word {s!r}")
        out.append((mt.group(1), int(mt.group(2) or 1)))
        pos = mt.end()
    return out


def format_normal_form(i, j):
    return f"a^{i} t^{j}"


def inverse_word(w):
    return [(x, -e) for x, e in reversed(w)]


def substitute(w, images):
    """Replace each letter by its image word (``images`` maps "a"/"t" to words)."""
    out = []
    for x, e in w:
        piece = images[x] if e > 0 else inverse_word(images[x])
        out += piece * abs(e)
    return out


def _unit_power(b, e, m):
    if m == 1:
        return 0
    return pow(b, e, m) if e >= 0 else pow(pow(b, -1, m), -e, m)


def _redexes(w, m):
    for i, (x, e) in enumerate(w):
        if e == 0:
            yield ("drop", i)
        elif x == "a" and not 0 < e < m:
            yield ("mod", i)
        if i + 1 < len(w):
            y = w[i + 1][0]
            if x == y:
                yield ("merge", i)
            elif x == "t" and y == "a":
                yield ("swap", i)


def normal_form(w, p: SemidirectZPresentation, rng=None):
    """Rewrite ``w`` to ``(i, j)`` meaning ``a^i t^j``.

    Rules: ``t^e a^k -> a^(k·b^e) t^e``, ``a^m -> 1``, merge equal letters,
    drop zero exponents. ``rng`` picks among applicable rewrites at random;
    otherwise the leftmost rule fires.
    """
    m, b = p.m, p.b
    w = list(w)
    while True:
        reds = list(_redexes(w, m))
        if not reds:
            break
        kind, i = reds[int(rng.integers(len(reds)))] if rng is not None else reds[0]
        x, e = w[i]
        if kind == "drop":
            del w[i]
        elif kind == "mod":
            w[i] = (x, e % m)
        elif kind == "merge":
            w[i : i + 2] = [(x, e + w[i + 1][1])]
        else:  # swap
            k = w[i + 1][1]
            w[i : i + 2] = [("a", k * _unit_power(b, e, m) % m), ("t", e)]
    i = j = 0
    for x, e in w:
        if x == "a":
            i = e
        else:
            j = e
    return i, j


# certificates -----------------------------------------------------------

@dataclass(frozen=True)
class IsoDecision:
    isomorphic: bool
    certificate: dict

    def to_json(self):
        return {"isomorphic": self.isomorphic, "certificate": self.certificate}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)


class CertificateCheck:
    def __init__(self, ok, reason=""):
        self.ok = ok
        self.reason = reason

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"CertificateCheck({self.ok}, {self.reason!r})"


def _explicit(t_exponent):
    word = f"t^{t_exponent}"
    return {
        "kind": "explicit",
        "image_of_a": "a^1",
        "image_of_t": word,
        "inverse_images": {"a": "a^1", "t": word},
    }


def decide_iso(p1: SemidirectZPresentation, p2: SemidirectZPresentation) -> IsoDecision:
    if p1.m != p2.m:
        # torsion subgroup is A: elements with nonzero t-exponent have infinite order
        dec = IsoDecision(False, {
            "kind": "torsion-order",
            "m1": p1.m,
            "m2": p2.m,
            "statement": f"torsion subgroups Z/{p1.m} and Z/{p2.m} differ",
        })
    elif p2.b == p1.b:
        dec = IsoDecision(True, _explicit(1))
    elif p2.b == p1.b_inverse:
        dec = IsoDecision(True, _explicit(-1))
    else:
        m, inv = p1.m, p2.b_inverse
        dec = IsoDecision(False, {
            "kind": "unit-mismatch",
            "m": m,
            "b1": p1.b,
            "b2": p2.b,
            "b2_inverse": inv,
            "statement": f"{p1.b} ∉ {{{p2.b}, {inv}}} in (Z/{m}Z)*",
        })
    check = verify_certificate(dec, p1, p2)
    if not check:  # pragma: no cover - decider and checker disagree
        raise AssertionError(f"certificate failed self-check: {check.reason}")
    return dec


def _check_hom(images, src: SemidirectZPresentation, dst: SemidirectZPresentation):
    """Do the images of a, t (words in dst) satisfy src's relations?"""
    wa, wt = images["a"], images["t"]
    if normal_form(wa * src.m, dst) != (0, 0):
        return f"image of a^{src.m} is not trivial"
    lhs = normal_form(wt + wa + inverse_word(wt), dst)
    rhs = normal_form(wa * src.b, dst)
    if lhs != rhs:
        return f"conjugation relation fails: {format_normal_form(*lhs)} != {format_normal_form(*rhs)}"
    return None


def verify_certificate(decision: IsoDecision, p1, p2) -> CertificateCheck:
    cert = decision.certificate
    if not isinstance(cert, dict) or "kind" not in cert:
        return CertificateCheck(False, "malformed certificate")
    kind = cert["kind"]
    try:
        if kind == "explicit":
            if not decision.isomorphic:
                return CertificateCheck(False, "explicit map attached to a negative decision")
            fwd = {"a": parse_word(cert["image_of_a"]), "t": parse_word(cert["image_of_t"])}
            inv = {x: parse_word(cert["inverse_images"][x]) for x in ("a", "t")}
            for images, src, dst, name in ((fwd, p1, p2, "forward"), (inv, p2, p1, "inverse")):
                err = _check_hom(images, src, dst)
                if err:
                    return CertificateCheck(False, f"{name} map: {err}")
            for x in ("a", "t"):
                gen = [(x, 1)]
                if normal_form(substitute(fwd[x], inv), p1) != normal_form(gen, p1):
                    return CertificateCheck(False, f"inverse∘forward moves {x}")
                if normal_form(substitute(inv[x], fwd), p2) != normal_form(gen, p2):
                    return CertificateCheck(False, f"forward∘inverse moves {x}")
            return CertificateCheck(True, "explicit isomorphism verified")
        if kind == "unit-mismatch":
            m = cert["m"]
            if decision.isomorphic:
                return CertificateCheck(False, "non-iso witness attached to a positive decision")
            if not (p1.m == p2.m == m and cert["b1"] == p1.b and cert["b2"] == p2.b):
                return CertificateCheck(False, "witness does not match the presentations")
            if cert["b2"] * cert["b2_inverse"] % m != 1 % m:
                return CertificateCheck(False, f"{cert['b2']}·{cert['b2_inverse']} ≢ 1 mod {m}")
            if cert["b1"] in (cert["b2"], cert["b2_inverse"]):
                return CertificateCheck(False, "b1 lies in {b2, b2⁻¹}")
            return CertificateCheck(True, cert.get("statement", ""))
        if kind == "torsion-order":
            if decision.isomorphic:
                return CertificateCheck(False, "non-iso witness attached to a positive decision")
            if (cert["m1"], cert["m2"]) != (p1.m, p2.m) or p1.m == p2.m:
                return CertificateCheck(False, "torsion orders do not differ")
            return CertificateCheck(True, cert.get("statement", ""))
    except (KeyError, TypeError, ValueError) as exc:
        return CertificateCheck(False, f"malformed certificate: {exc}")
    return CertificateCheck(False, f"unknown certificate kind {kind!r}")


def iso_classes(presentations):
    """Partition into isomorphism classes, in order of first appearance."""
    classes = []
    for p in presentations:
        for cls in classes:
            if decide_iso(cls[0], p).isomorphic:
                cls.append(p)
                break
        else:
            classes.append([p])
    return classes
