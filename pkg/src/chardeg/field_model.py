"""Cyclic model of E^x = GF(q^e)^x as Z/(q^e - 1), Frobenius acting as x q.

A subgroup of the cyclic group C is determined by its order, so every
subgroup below is passed around as that order. The subfield GF(q^n) meets C
in the subgroup of order gcd(|C|, q^n - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .numtheory import (
    Factorization,
    PrimeSet,
    check_range,
    divisors,
    factorize,
    factorize_power_minus_one,
    is_pi_number,
    is_prime,
    lucas_lehmer,
    mersenne_exponent,
    pi_part,
)


class SpecError(ValueError):
    """A (q, e, d) triple that does not describe a group C x| Gal(E/F)."""


class HypothesisError(ValueError):
    """An operation needs the Main Theorem hypotheses and they fail."""

    def __init__(self, spec: "GroupSpec", failed: list[str]):
        self.spec = spec
        self.failed = failed
        super().__init__(f"hypotheses fail for {spec.label()}: {', '.join(failed)}")


class GaloisConnectionViolation(AssertionError):
    """A subfield row contradicts the expected Galois-connection behaviour."""

    def __init__(self, spec: "GroupSpec", row: "GaloisConnectionRow", reason: str):
        self.spec = spec
        self.row = row
        self.reason = reason
        super().__init__(f"{spec.label()} n={row.n}: {reason}")


@dataclass(frozen=True)
class GroupSpec:
    """The group C x| Gal(E/F) with |F| = q, [E:F] = e, |C| = d."""

    q: int
    e: int
    d: int

    def __post_init__(self) -> None:
        if self.e < 2 or self.d < 1:
            raise SpecError(f"need e >= 2 and d >= 1, got e={self.e}, d={self.d}")
        try:
            check_range(self.q**self.e - 1, "q^e - 1")
        except ValueError as exc:
            raise SpecError(str(exc)) from None
        if not is_prime(self.q):
            raise SpecError(f"q = {self.q} is not prime")
        if (self.q**self.e - 1) % self.d:
            raise SpecError(f"d = {self.d} does not divide {self.q}^{self.e} - 1")

    @property
    def field_order(self) -> int:
        """|E^x| = q^e - 1."""
        return self.q**self.e - 1

    @property
    def index(self) -> int:
        """|E^x : C|."""
        return self.field_order // self.d

    @property
    def group_order(self) -> int:
        return self.d * self.e

    @cached_property
    def pi(self) -> PrimeSet:
        return factorize(self.q - 1).prime_set()

    @cached_property
    def degree_divisors(self) -> list[int]:
        """Divisors of e; each n labels the subfield GF(q^n)."""
        return divisors(factorize(self.e))

    @cached_property
    def d_factorization(self) -> Factorization:
        return factorize_power_minus_one(self.q, self.e).restrict(self.d)

    def label(self) -> str:
        return f"(q={self.q}, e={self.e}, d={self.d})"


@dataclass(frozen=True)
class HypothesisReport:
    q_is_mersenne: bool
    e_even_gt1: bool
    index_is_pi_number: bool
    four_divides_d: bool

    @property
    def main_theorem_applies(self) -> bool:
        return (
            self.q_is_mersenne
            and self.e_even_gt1
            and self.index_is_pi_number
            and not self.four_divides_d
        )

    def failed(self) -> list[str]:
        out = []
        if not self.q_is_mersenne:
            out.append("q is not a Mersenne prime")
        if not self.e_even_gt1:
            out.append("e is not an even integer > 1")
        if not self.index_is_pi_number:
            out.append("|E^x : C| is not a pi-number")
        if self.four_divides_d:
            out.append("4 divides |C|")
        return out

    def as_dict(self) -> dict:
        return {
            "q_is_mersenne": self.q_is_mersenne,
            "e_even_gt1": self.e_even_gt1,
            "index_is_pi_number": self.index_is_pi_number,
            "four_divides_d": self.four_divides_d,
            "main_theorem_applies": self.main_theorem_applies,
        }


def validate_hypotheses(spec: GroupSpec) -> HypothesisReport:
    p = mersenne_exponent(spec.q)
    return HypothesisReport(
        q_is_mersenne=p is not None and p >= 2 and lucas_lehmer(p),
        e_even_gt1=spec.e > 1 and spec.e % 2 == 0,
        index_is_pi_number=is_pi_number(spec.index, spec.pi),
        four_divides_d=spec.d % 4 == 0,
    )


def require_hypotheses(spec: GroupSpec) -> HypothesisReport:
    report = validate_hypotheses(spec)
    if not report.main_theorem_applies:
        raise HypothesisError(spec, report.failed())
    return report


def admissible_orders(q: int, e: int) -> list[int]:
    """Orders d of subgroups C with pi-number index and 4 not dividing d.

    Every such d is the pi'-part of q^e - 1 times a pi-divisor of q^e - 1.
    """
    if not is_prime(q):
        raise SpecError(f"q = {q} is not prime")
    full = factorize_power_minus_one(q, e)
    pi = factorize(q - 1).prime_set()
    core = full.value // pi_part(full.value, pi)
    pi_factors = Factorization(
        full.value // core, tuple((p, k) for p, k in full.factors if p in pi)
    )
    return sorted(core * s for s in divisors(pi_factors) if (core * s) % 4)


def subfield_intersection_order(spec: GroupSpec, n: int) -> int:
    """|GF(q^n) & C| = gcd(d, q^n - 1)."""
    if n < 1 or spec.e % n:
        raise ValueError(f"n = {n} does not divide e = {spec.e}")
    return gcd(spec.d, spec.q**n - 1)


def hat_degree(spec: GroupSpec, sub_order: int) -> int:
    """Degree over F of the smallest subfield containing the order-s subgroup."""
    if sub_order < 1 or spec.field_order % sub_order:
        raise ValueError(f"{sub_order} does not divide {spec.q}^{spec.e} - 1")
    for n in spec.degree_divisors:
        if (spec.q**n - 1) % sub_order == 0:
            return n
    raise AssertionError("unreachable: e itself always qualifies")


@dataclass(frozen=True)
class GaloisConnectionRow:
    n: int
    intersection_order: int
    hat_degree: int
    equality_holds: bool
    exception_case: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "intersection_order": self.intersection_order,
            "hat_degree": self.hat_degree,
            "equality_holds": self.equality_holds,
            "exception_case": self.exception_case,
        }


def galois_connection_rows(spec: GroupSpec) -> list[GaloisConnectionRow]:
    """One row per intermediate field L = GF(q^n), no assertions."""
    rows = []
    for n in spec.degree_divisors:
        s = subfield_intersection_order(spec, n)
        h = hat_degree(spec, s)
        rows.append(GaloisConnectionRow(n, s, h, h == n, n == 2))
    return rows


def verify_galois_connection(
    spec: GroupSpec, *, require: bool = True
) -> list[GaloisConnectionRow]:
    """Rows for every L, checking L = hat(L & C) for n != 2 and L & C = F & C at n = 2.

    Raises GaloisConnectionViolation naming the first bad row. With
    ``require=False`` the hypothesis precondition is skipped, so negative
    controls can be probed.
    """
    if require:
        require_hypotheses(spec)
    rows = galois_connection_rows(spec)
    base = subfield_intersection_order(spec, 1)
    for row in rows:
        if row.exception_case:
            if row.intersection_order != base:
                raise GaloisConnectionViolation(
                    spec, row, f"|L & C| = {row.intersection_order} != |F & C| = {base}"
                )
        elif not row.equality_holds:
            raise GaloisConnectionViolation(
                spec, row, f"hat(L & C) has degree {row.hat_degree}, expected {row.n}"
            )
    return rows
