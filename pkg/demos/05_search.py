"""
Where do examples start?
========================

A twist moves b to b^j with j = k^-1 mod r. That leaves the iso class
unless j ∉ {1, r - 1}, which needs phi(r) > 2, so r = 5 is the first
possibility and m = 11 is the first modulus with a unit of order 5.
"""
from collections import Counter

from conjpi1.search import enumerate_examples, order_constraint_report

rep = order_constraint_report(30)
print("orders with no example:", rep["no_example_for"], " minimal r:", rep["minimal_r"])

recs = enumerate_examples(30)
print(len(recs), "records for m <= 30")
print("first:", recs[0].dumps())
print("per m:", dict(sorted(Counter(r.m for r in recs).items())))
print("m <= 10:", enumerate_examples(10))
