from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chardeg.field_model import (
    GaloisConnectionViolation,
    GroupSpec,
    HypothesisError,
    SpecError,
    admissible_orders,
    galois_connection_rows,
    hat_degree,
    subfield_intersection_order,
    validate_hypotheses,
    verify_galois_connection,
)
from chardeg.numtheory import divisors, factorize, is_pi_number, multiplicative_order

from oracles import all_divisors

MERSENNE_Q = (3, 7, 31, 127)
EVEN_E = (2, 4, 6, 8)


def sweep_specs():
    for q in MERSENNE_Q:
        for e in EVEN_E:
            if q**e - 1 < 2**127:
                for d in admissible_orders(q, e):
                    yield GroupSpec(q, e, d)


def test_group_spec_validation():
    with pytest.raises(SpecError):
        GroupSpec(3, 4, 7)
    with pytest.raises(SpecError):
        GroupSpec(4, 2, 3)
    with pytest.raises(SpecError):
        GroupSpec(131071, 8, 1)
    with pytest.raises(SpecError):
        GroupSpec(3, 1, 2)


def test_validate_hypotheses_examples():
    r = validate_hypotheses(GroupSpec(3, 4, 10))
    assert r.q_is_mersenne and r.e_even_gt1 and r.index_is_pi_number
    assert not r.four_divides_d
    assert r.main_theorem_applies

    assert not validate_hypotheses(GroupSpec(5, 2, 6)).q_is_mersenne

    r = validate_hypotheses(GroupSpec(3, 4, 20))
    assert r.four_divides_d and not r.main_theorem_applies


def test_validate_hypotheses_flags():
    # 2^11 - 1 = 2047 is composite, so never reaches GroupSpec; 8191 is prime
    assert validate_hypotheses(GroupSpec(8191, 2, 2)).q_is_mersenne
    assert not validate_hypotheses(GroupSpec(3, 3, 2)).e_even_gt1
    assert not validate_hypotheses(GroupSpec(3, 4, 1)).index_is_pi_number
    r = validate_hypotheses(GroupSpec(3, 4, 1))
    assert r.failed() == ["|E^x : C| is not a pi-number"]


@pytest.mark.parametrize(
    "q, e, expected",
    [(3, 4, [5, 10]), (3, 2, [1, 2]), (7, 2, [1, 2, 3, 6])],
)
def test_admissible_orders_examples(q, e, expected):
    assert admissible_orders(q, e) == expected


@pytest.mark.parametrize("q, e", [(3, 2), (3, 4), (3, 6), (7, 2), (7, 4), (31, 2), (5, 4)])
def test_admissible_orders_by_enumeration(q, e):
    n = q**e - 1
    pi = factorize(q - 1).primes
    expected = [d for d in all_divisors(n) if is_pi_number(n // d, pi) and d % 4]
    assert admissible_orders(q, e) == expected


@pytest.mark.parametrize("q", MERSENNE_Q)
@pytest.mark.parametrize("e", EVEN_E)
def test_admissible_orders_nonempty(q, e):
    if q**e - 1 >= 2**127:
        pytest.skip("outside integer range")
    orders = admissible_orders(q, e)
    assert orders
    assert all((q**e - 1) % d == 0 and d % 4 for d in orders)


@pytest.mark.parametrize("n, expected", [(2, 2), (4, 10), (1, 2)])
def test_subfield_intersection_examples(n, expected):
    assert subfield_intersection_order(GroupSpec(3, 4, 10), n) == expected


def test_subfield_intersection_rejects_non_divisor():
    with pytest.raises(ValueError):
        subfield_intersection_order(GroupSpec(3, 4, 10), 3)


@pytest.mark.parametrize("s, expected", [(1, 1), (10, 4), (2, 1), (5, 4), (8, 2), (80, 4)])
def test_hat_degree_examples(s, expected):
    assert hat_degree(GroupSpec(3, 4, 10), s) == expected


def test_hat_degree_rejects_non_divisor():
    with pytest.raises(ValueError):
        hat_degree(GroupSpec(3, 4, 10), 7)


def test_hat_degree_matches_multiplicative_order():
    for spec in [GroupSpec(3, 4, 80), GroupSpec(7, 4, 2400), GroupSpec(3, 6, 728)]:
        for s in divisors(factorize(spec.field_order)):
            h = hat_degree(spec, s)
            assert (spec.q**h - 1) % s == 0
            assert spec.e % h == 0
            if s > 1:
                assert h == multiplicative_order(spec.q, s)


@pytest.mark.parametrize("spec", list(sweep_specs())[:40], ids=lambda s: s.label())
def test_lattice_properties(spec):
    ns = spec.degree_divisors
    for n1 in ns:
        s1 = subfield_intersection_order(spec, n1)
        assert spec.d % s1 == 0 and (spec.q**n1 - 1) % s1 == 0
        # hat(L & C) is contained in L
        assert n1 % hat_degree(spec, s1) == 0
        for n2 in ns:
            if n2 % n1 == 0:
                assert subfield_intersection_order(spec, n2) % s1 == 0


def test_verify_galois_connection_examples():
    rows = verify_galois_connection(GroupSpec(3, 4, 10))
    assert [(r.n, r.intersection_order, r.hat_degree) for r in rows] == [
        (1, 2, 1),
        (2, 2, 1),
        (4, 10, 4),
    ]
    assert [r.equality_holds for r in rows] == [True, False, True]
    assert [r.exception_case for r in rows] == [False, True, False]

    rows = verify_galois_connection(GroupSpec(3, 2, 2))
    assert [(r.n, r.intersection_order, r.hat_degree) for r in rows] == [(1, 2, 1), (2, 2, 1)]

    rows = verify_galois_connection(GroupSpec(7, 2, 6))
    assert [(r.n, r.intersection_order, r.hat_degree) for r in rows] == [(1, 6, 1), (2, 6, 1)]


def test_verify_galois_connection_requires_hypotheses():
    with pytest.raises(HypothesisError, match="Mersenne"):
        verify_galois_connection(GroupSpec(5, 2, 6))


def test_violation_is_structured():
    # q = 5: the quadratic subfield meets C in more than F does
    with pytest.raises(GaloisConnectionViolation) as info:
        verify_galois_connection(GroupSpec(5, 2, 6), require=False)
    assert info.value.row.n == 2
    assert info.value.row.intersection_order == 6

    # 4 | d: the quadratic subfield picks up the order-8 elements
    with pytest.raises(GaloisConnectionViolation) as info:
        verify_galois_connection(GroupSpec(3, 2, 8), require=False)
    assert info.value.row.n == 2


def test_rows_without_assertions():
    rows = galois_connection_rows(GroupSpec(5, 2, 6))
    assert [(r.n, r.intersection_order, r.hat_degree) for r in rows] == [(1, 2, 1), (2, 6, 2)]


@given(st.sampled_from([(3, 4), (3, 6), (7, 4), (31, 2)]).flatmap(
    lambda qe: st.sampled_from(divisors(factorize(qe[0] ** qe[1] - 1))).map(lambda d: (*qe, d))
))
def test_intersection_is_gcd_of_subgroup_orders(qed):
    q, e, d = qed
    spec = GroupSpec(q, e, d)
    n_total = q**e - 1
    for n in spec.degree_divisors:
        # elements of Z/(q^e-1) fixed by x -> x q^n are multiples of (q^e-1)/(q^n-1);
        # the order-d subgroup is the multiples of (q^e-1)/d
        fixed_step = n_total // (q**n - 1)
        c_step = n_total // d
        common = fixed_step * c_step // gcd(fixed_step, c_step)
        assert subfield_intersection_order(spec, n) == n_total // common
