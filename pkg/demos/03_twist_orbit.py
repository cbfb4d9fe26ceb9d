"""
Galois orbit of a marked generator
==================================

All four twists of (11, 4), and how they split into isomorphism classes.
"""
from conjpi1.datum import family_datum
from conjpi1.fiber import fiber_product, specialize_d1
from conjpi1.galois import GaloisRestriction, conjugate_datum
from conjpi1.iso import iso_classes

D = family_datum(11, 4)
orbit = []
for k in range(1, 5):
    p = specialize_d1(fiber_product(conjugate_datum(D, GaloisRestriction(5, k))))
    orbit.append(p)
    print(f"k = {k}:  {p.text()}")

# b and b^-1 give isomorphic groups (t -> t^-1), nothing else merges
for cls in iso_classes(orbit):
    print("class:", sorted(p.b for p in cls))
