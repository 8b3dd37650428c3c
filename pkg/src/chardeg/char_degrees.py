"""Character degrees of G = C x| Gal(E/F) with C cyclic of order d.

Irr(C) is indexed by m in Z/d (lambda^m). Gamma acts on indices by
m -> m*q; the degrees of Irr(G) lying over lambda^m all equal the size of
its orbit, and a size-n orbit carries e/n irreducible characters of G.

Three routes compute cd(G):

* ``degree_set_bruteforce`` partitions Z/d into orbits.
* ``degree_set_divisor_formula`` groups indices by the order of c^m and
  asks for the least n | e with that order dividing q^n - 1.
* ``main_theorem_prediction`` returns divisors(e) without 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple

import numpy as np

from . import kernels
from .field_model import GroupSpec, hat_degree, require_hypotheses
from .numtheory import divisors, euler_phi, factorize

BRUTEFORCE_LIMIT = 10**6
GROUP_ORACLE_LIMIT = 2 * 10**4


class EnumerationBoundError(ValueError):
    """The requested brute-force enumeration is above its size bound."""


@dataclass(frozen=True)
class CharOrbit:
    representative: int
    size: int
    stabilizer_exponent: int
    d_m: int
    members: tuple[int, ...] = ()


@dataclass
class DegreeReport:
    spec: GroupSpec
    degrees: tuple[int, ...]
    method: str
    multiplicities: dict[int, int] | None = None
    orbit_count: int | None = None
    # degree -> number of Galois orbits of that size
    orbit_sizes: dict[int, int] | None = field(default=None)

    def order_sum(self) -> int:
        """Sum of multiplicity * degree^2, which should equal |G|."""
        return sum(k * n * n for n, k in (self.multiplicities or {}).items())

    def character_count(self) -> int:
        return sum((self.multiplicities or {}).values())

    def as_dict(self) -> dict:
        out = {
            "q": self.spec.q,
            "e": self.spec.e,
            "d": self.spec.d,
            "method": self.method,
            "degrees": list(self.degrees),
        }
        if self.multiplicities is not None:
            out["multiplicities"] = {str(n): k for n, k in sorted(self.multiplicities.items())}
            out["orbit_count"] = self.orbit_count
        return out


def _report(spec: GroupSpec, mass: dict[int, int], method: str) -> DegreeReport:
    # mass[n] = number of indices m whose orbit has size n
    orbit_sizes = {n: mass[n] // n for n in sorted(mass)}
    mult = {n: orbit_sizes[n] * (spec.e // n) for n in orbit_sizes}
    return DegreeReport(
        spec=spec,
        degrees=tuple(sorted(mass)),
        method=method,
        multiplicities=mult,
        orbit_count=sum(orbit_sizes.values()),
        orbit_sizes=orbit_sizes,
    )


def orbit(m: int, spec: GroupSpec) -> CharOrbit:
    """Galois orbit of lambda^m, by iterating m -> m*q mod d."""
    d = spec.d
    if not 0 <= m < d:
        raise ValueError(f"index {m} outside [0, {d})")
    members = [m]
    cur = m * spec.q % d
    while cur != m:
        members.append(cur)
        cur = cur * spec.q % d
    size = len(members)
    return CharOrbit(
        representative=min(members),
        size=size,
        stabilizer_exponent=size,
        d_m=d // gcd(d, m),
        members=tuple(members),
    )


def stabilizer_degree(m: int, spec: GroupSpec) -> int:
    """|Gamma : Psi| for the stabilizer Psi of lambda^m, without walking the orbit."""
    if not 0 <= m < spec.d:
        raise ValueError(f"index {m} outside [0, {spec.d})")
    return hat_degree(spec, spec.d // gcd(spec.d, m))


def orbit_list(spec: GroupSpec) -> list[CharOrbit]:
    """All orbits on Irr(C), ordered by representative."""
    _check_bruteforce(spec)
    sizes, reps = kernels.orbit_partition(spec.d, spec.q, spec.e)
    return [orbit(int(m), spec) for m in np.flatnonzero(reps == np.arange(spec.d))]


def _check_bruteforce(spec: GroupSpec) -> None:
    if spec.d > BRUTEFORCE_LIMIT:
        raise EnumerationBoundError(
            f"d = {spec.d} exceeds the enumeration bound {BRUTEFORCE_LIMIT}; "
            "use degree_set_divisor_formula"
        )


def degree_set_bruteforce(spec: GroupSpec) -> DegreeReport:
    _check_bruteforce(spec)
    sizes, reps = kernels.orbit_partition(spec.d, spec.q, spec.e)
    if (sizes == 0).any():
        raise AssertionError(f"orbit failed to close within e steps for {spec.label()}")
    values, counts = np.unique(sizes, return_counts=True)
    return _report(spec, {int(n): int(c) for n, c in zip(values, counts)}, "bruteforce")


def degree_set_divisor_formula(spec: GroupSpec) -> DegreeReport:
    """Degrees from the subgroup lattice of C.

    The indices m with |<c^m>| = s number phi(s), and each of them has
    stabilizer index hat_degree(s).
    """
    fd = spec.d_factorization
    mass: dict[int, int] = {}
    for s in divisors(fd):
        n = hat_degree(spec, s)
        mass[n] = mass.get(n, 0) + euler_phi(fd.restrict(s))
    return _report(spec, mass, "divisor_formula")


def main_theorem_prediction(spec: GroupSpec) -> DegreeReport:
    require_hypotheses(spec)
    degrees = tuple(n for n in divisors(factorize(spec.e)) if n != 2)
    return DegreeReport(spec=spec, degrees=degrees, method="main_theorem")


def no_degree_two_witness(spec: GroupSpec) -> bool:
    """True iff no lambda^m has stabilizer index 2.

    Also checks the reason: whenever sigma^2 fixes lambda^m (the order of
    c^m divides q^2 - 1), that order already divides q - 1, so sigma fixes
    it too.
    """
    _check_bruteforce(spec)
    m = np.arange(spec.d, dtype=np.int64)
    orders = np.unique(spec.d // np.gcd(m, spec.d))
    q = spec.q
    for s in map(int, orders):
        if hat_degree(spec, s) == 2:
            return False
        if (q * q - 1) % s == 0 and (q - 1) % s:
            return False
    return True


class GroupElement(NamedTuple):
    a: int
    j: int


def group_multiply(x: GroupElement, y: GroupElement, spec: GroupSpec) -> GroupElement:
    """(a, j)(b, k) = (a + q^j b, j + k); sigma c sigma^-1 = c^q."""
    a, j = x
    b, k = y
    return GroupElement((a + pow(spec.q, j, spec.d) * b) % spec.d, (j + k) % spec.e)


def group_inverse(x: GroupElement, spec: GroupSpec) -> GroupElement:
    a, j = x
    k = (-j) % spec.e
    return GroupElement((-pow(spec.q, k, spec.d) * a) % spec.d, k)


def conjugacy_class_count(spec: GroupSpec) -> int:
    if spec.group_order > GROUP_ORACLE_LIMIT:
        raise EnumerationBoundError(
            f"|G| = {spec.group_order} exceeds the group-oracle bound {GROUP_ORACLE_LIMIT}"
        )
    return kernels.class_count(spec.d, spec.e, spec.q)
