"""Exit criteria. Every comparison is exact; the two runtime budgets are hard limits."""

import time

import numpy as np
import pytest

from chardeg.char_degrees import (
    BRUTEFORCE_LIMIT,
    GROUP_ORACLE_LIMIT,
    conjugacy_class_count,
    degree_set_bruteforce,
    degree_set_divisor_formula,
    no_degree_two_witness,
)
from chardeg.field_model import GroupSpec, admissible_orders, verify_galois_connection
from chardeg.field_oracle import FieldCtx, frobenius_model_check
from chardeg.numtheory import divisors, factorize, lucas_lehmer, multiplicative_orders

from oracles import certify_order_table, order_table_by_walk, trial_is_prime

MERSENNE_Q = (3, 7, 31, 127)
EVEN_E = (2, 4, 6, 8)
NEGATIVE_CONTROLS = [GroupSpec(5, 2, 6), GroupSpec(3, 2, 8)]


def sweep():
    return [
        GroupSpec(q, e, d)
        for q in MERSENNE_Q
        for e in EVEN_E
        if q**e - 1 < 2**127
        for d in admissible_orders(q, e)
    ]


@pytest.mark.criterion("1 Main Theorem sweep: divisor-formula cd(G) = divisors(e) minus {2}")
def test_main_theorem_sweep(criterion):
    start = time.perf_counter()
    specs = sweep()
    bad = []
    for spec in specs:
        expected = tuple(n for n in divisors(factorize(spec.e)) if n != 2)
        if degree_set_divisor_formula(spec).degrees != expected:
            bad.append(spec.label())
    elapsed = time.perf_counter() - start
    assert len(specs) == 114
    assert not bad
    assert elapsed < 10.0, f"sweep took {elapsed:.2f}s"


@pytest.mark.criterion("2 Oracle agreement: bruteforce == divisor formula for d <= 10^6")
def test_oracle_agreement(criterion):
    checked = 0
    for spec in sweep():
        if spec.d > BRUTEFORCE_LIMIT:
            continue
        brute = degree_set_bruteforce(spec)
        formula = degree_set_divisor_formula(spec)
        assert brute.degrees == formula.degrees, spec.label()
        assert brute.multiplicities == formula.multiplicities, spec.label()
        checked += 1
    assert checked == 68


@pytest.mark.criterion("3 Galois connection: L = hat(L & C) for n != 2, L & C = F & C at n = 2")
def test_galois_connection_sweep(criterion):
    for spec in sweep():
        rows = verify_galois_connection(spec)
        base = rows[0].intersection_order
        for row in rows:
            if row.n == 2:
                assert row.intersection_order == base
            else:
                assert row.equality_holds


@pytest.mark.criterion("4 2-exclusion: no Galois orbit on Irr(C) has size 2")
def test_no_degree_two(criterion):
    specs = [s for s in sweep() if s.d <= BRUTEFORCE_LIMIT]
    assert specs
    assert all(no_degree_two_witness(s) for s in specs)


@pytest.mark.criterion("5 Negative controls: (5,2,6) and (3,2,8) have degrees {1, 2}")
def test_negative_controls(criterion):
    for spec in NEGATIVE_CONTROLS:
        assert degree_set_divisor_formula(spec).degrees == (1, 2)
        assert degree_set_bruteforce(spec).degrees == (1, 2)


@pytest.mark.criterion("6 Consistency: sum mult*n^2 = |G| and class count = sum e/size")
def test_character_consistency(criterion):
    start = time.perf_counter()
    specs = [s for s in sweep() + NEGATIVE_CONTROLS if s.group_order <= GROUP_ORACLE_LIMIT]
    assert len(specs) >= 40
    for spec in specs:
        report = degree_set_bruteforce(spec)
        assert report.order_sum() == spec.group_order, spec.label()
        by_orbits = sum(count * (spec.e // size) for size, count in report.orbit_sizes.items())
        assert conjugacy_class_count(spec) == by_orbits, spec.label()
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"consistency checks took {elapsed:.2f}s"


@pytest.mark.criterion("7 Cyclic model certified by explicit GF(q^e) arithmetic")
def test_cyclic_model_certification(criterion):
    for q, e in [(3, 2), (3, 4), (3, 6), (7, 2), (7, 4)]:
        result = frobenius_model_check(FieldCtx.build(q, e))
        assert result, (q, e, result.counterexample)


@pytest.mark.criterion("8 Number theory: Lucas-Lehmer p <= 31, orders for all n <= 10^4")
def test_number_theory_suite(criterion):
    known = {2, 3, 5, 7, 13, 17, 19, 31}
    for p in range(2, 32):
        assert lucas_lehmer(p) is (p in known)
        assert trial_is_prime(2**p - 1) is (p in known)

    for n in range(1, 10**4 + 1):
        table = multiplicative_orders(n)
        assert certify_order_table(n, table) == -1, n
        if n <= 2000:
            assert np.array_equal(order_table_by_walk(n), table), n
