"""
A two-dimensional torus quotient
================================

The shipped datum: Gamma = Z/6 × S3 acting on a 2-torus through its cyclic
factor. Here pi1 is not of the form Z/m ⋊ Z, so we look at the fiber
product itself.
"""
from importlib import resources

import numpy as np

from conjpi1.datum import datum_from_json
from conjpi1.fiber import fiber_product, verify_exactness

text = resources.files("conjpi1").joinpath("data/d2_example.json").read_text()
fp = fiber_product(datum_from_json(text))

s = fp.summary()
print("|Gamma| =", s["gamma_order"], " |Lambda| =", s["lambda_order"])
print("lattice basis:", s["lattice"]["basis"], " index", s["lattice_index"])

# 0 -> ker(tau) -> pi1 -> L -> 0
rep = verify_exactness(fp)
print("exact:", rep.exact, " kernel order:", rep.kernel_order)

# a few random elements and products, all inside the fiber product
rng = np.random.default_rng(0)
x, y = fp.random_element(rng), fp.random_element(rng)
for name, z in [("x", x), ("y", y), ("xy", fp.multiply(x, y)), ("x^-1", fp.inverse(x))]:
    print(f"{name:5s}", z.to_json(fp.gamma), fp.contains(z))
