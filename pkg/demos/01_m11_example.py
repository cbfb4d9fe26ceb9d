"""
The m = 11 example, step by step
================================

A metacyclic group of order 55, a character of order 5, and what a field
automorphism does to the fundamental group.
"""
from conjpi1.datum import family_datum, lambda_group
from conjpi1.fiber import fiber_product, specialize_d1
from conjpi1.galois import GaloisRestriction, conjugate_datum
from conjpi1.iso import decide_iso

# Gamma = Z/11 ⋊ <4>, tau reads off the B-coordinate as a 5th root of unity
D = family_datum(11, 4)
print(D.gamma.name, "order", D.gamma.order)
lam, _, points = lambda_group(D)
print("image of tau:", [str(p.coords[0]) for p in points])

# pi1 = fiber product of the lattice L = (1/5)Z with Gamma over Lambda
p = specialize_d1(fiber_product(D))
print("pi1 =", p.text())

# sigma(zeta) = zeta^2 changes the marked generator 4 -> 4^3 = 9
Dt = conjugate_datum(D, GaloisRestriction(5, 2))
q = specialize_d1(fiber_product(Dt))
print("pi1 of the conjugate =", q.text())

dec = decide_iso(p, q)
print("isomorphic?", dec.isomorphic)
print("witness:", dec.certificate["statement"])
