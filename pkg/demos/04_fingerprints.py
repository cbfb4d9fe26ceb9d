"""
Counting homomorphisms into small groups
========================================

Finite quotients cannot separate (11, 4) from (11, 9): every count in the
catalog agrees. (11, 2) is told apart by the order-55 entry.
"""
from conjpi1.fiber import SemidirectZPresentation as P
from conjpi1.fingerprint import catalog, compare_fingerprints, fingerprint

cat = catalog("v1")
f4, f9, f2 = (fingerprint(P(11, b), cat) for b in (4, 9, 2))

for name in ["Z/5", "Z/11", "D10", "D22", "S5", "Z/11xZ/5", "H(11,<4>)"]:
    print(f"{name:10s} {f4.counts[name]:6d} {f9.counts[name]:6d} {f2.counts[name]:6d}")

print(compare_fingerprints(f4, f9).to_json()["verdict"])
print(compare_fingerprints(f4, f2).to_json()["diffs"])
