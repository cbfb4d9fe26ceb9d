import json
from math import gcd

import pytest

from conjpi1.search import ExampleRecord, enumerate_examples, escaping_exponents, order_constraint_report

from oracles import inverse_by_scan, order_by_scan, pow_by_multiplication, twist_by_evaluation


def brute_force_examples(m_max):
    out = set()
    for m in range(2, m_max + 1):
        for b in range(2, m):
            if gcd(b, m) != 1:
                continue
            r = order_by_scan(b, m)
            B = sorted({pow_by_multiplication(b, j, m) for j in range(r)})
            binv = inverse_by_scan(b, m)[0]
            for k in range(1, r):
                if gcd(k, r) != 1:
                    continue
                (bt,) = twist_by_evaluation(m, B, b, k, r)
                if bt not in (b, binv):
                    out.add((m, b, k, bt))
    return out


@pytest.fixture(scope="module")
def records30():
    return enumerate_examples(30)


def test_m11_record_present(records30):
    assert ExampleRecord(11, 4, 2, 3, 5, 9) in records30
    assert min(rec.m for rec in records30) == 11


def test_nothing_below_11():
    assert enumerate_examples(10) == []


def test_matches_brute_force(records30):
    assert {(x.m, x.b, x.k, x.b_twisted) for x in records30} == brute_force_examples(30)
    assert len(records30) == 592


def test_record_invariants(records30):
    for rec in records30:
        binv = inverse_by_scan(rec.b, rec.m)[0]
        assert rec.b_twisted not in (rec.b, binv)
        assert rec.r == order_by_scan(rec.b, rec.m) >= 5
        assert gcd(rec.k, rec.r) == 1
        powers = {pow_by_multiplication(rec.b, j, rec.m) for j in range(rec.r)}
        gens = [x for x in powers if order_by_scan(x, rec.m) == rec.r]
        assert rec.B_generator == min(gens)


def test_sorted_and_deterministic(records30):
    assert records30 == sorted(records30)
    lines = [r.dumps() for r in records30]
    assert lines == [r.dumps() for r in enumerate_examples(30)]
    first = json.loads(lines[0])
    assert list(first) == sorted(first)
    # 2 has order 10 mod 11; k = 3 gives j = 7 and 2^7 = 7, while 2⁻¹ = 6
    assert first == {"B_generator": 2, "b": 2, "b_twisted": 7, "k": 3, "m": 11, "r": 10}


def test_escaping_exponents():
    assert [escaping_exponents(r) for r in range(1, 7)] == [[], [], [], [], [2, 3], []]
    assert escaping_exponents(8) == [3, 5]


def test_order_constraint_report():
    rep = order_constraint_report(30)
    assert rep["no_example_for"] == [1, 2, 3, 4]
    assert rep["minimal_r"] == 5
    for r, row in rep["orders"].items():
        assert row["possible"] == (r not in (1, 2, 3, 4, 6))
