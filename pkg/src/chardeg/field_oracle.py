"""Explicit GF(q^e) arithmetic in a polynomial basis.

Only used to certify the cyclic model in field_model at small sizes.
Polynomials and field elements are coefficient tuples, lowest degree first.
Candidates are enumerated by their integer code sum c_i q^i, so the constant
term varies fastest.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .numtheory import divisors, factorize, factorize_power_minus_one

FieldElement = tuple[int, ...]
Poly = tuple[int, ...]

ORACLE_LIMIT = 1 << 63
DLOG_LIMIT = 1 << 20


# -- polynomials over Z/q ----------------------------------------------------


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mod(a: Sequence[int], m: Sequence[int], q: int) -> list[int]:
    a = _trim([c % q for c in a])
    m = _trim([c % q for c in m])
    inv_lead = pow(m[-1], -1, q)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % q
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % q
        _trim(a)
    return a


def poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], q: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % q
    return poly_mod(prod, m, q)


def poly_powmod(a: Sequence[int], k: int, m: Sequence[int], q: int) -> list[int]:
    result = poly_mod([1], m, q)
    base = poly_mod(a, m, q)
    while k:
        if k & 1:
            result = poly_mulmod(result, base, m, q)
        base = poly_mulmod(base, base, m, q)
        k >>= 1
    return result


def poly_gcd(a: Sequence[int], b: Sequence[int], q: int) -> list[int]:
    a = _trim([c % q for c in a])
    b = _trim([c % q for c in b])
    while b:
        a, b = b, poly_mod(a, b, q)
    if not a:
        return a
    inv = pow(a[-1], -1, q)
    return [c * inv % q for c in a]


def _x_power_minus_x(k: int, modulus: Sequence[int], q: int) -> list[int]:
    """x^(q^k) - x reduced mod modulus."""
    r = poly_powmod([0, 1], q**k, modulus, q)
    r = r + [0] * (2 - len(r))
    r[1] = (r[1] - 1) % q
    return _trim(r)


def is_irreducible(modulus: Sequence[int], q: int) -> bool:
    """Rabin's test for a monic polynomial of degree e over Z/q."""
    e = len(modulus) - 1
    if e == 1:
        return True
    if _x_power_minus_x(e, modulus, q):
        return False
    for r, _ in factorize(e).factors:
        g = poly_gcd(modulus, _x_power_minus_x(e // r, modulus, q), q)
        if len(g) > 1:
            return False
    return True


def _digits(code: int, q: int, e: int) -> tuple[int, ...]:
    out = []
    for _ in range(e):
        code, c = divmod(code, q)
        out.append(c)
    return tuple(out)


def _code(coeffs: Sequence[int], q: int) -> int:
    return sum(c * q**i for i, c in enumerate(coeffs))


def find_irreducible(q: int, e: int) -> Poly:
    """Smallest monic irreducible polynomial of degree e over Z/q."""
    if q**e - 1 >= ORACLE_LIMIT:
        raise ValueError("field oracle is limited to q^e - 1 < 2^63")
    for code in range(q**e):
        cand = _digits(code, q, e) + (1,)
        if is_irreducible(cand, q):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({q})")


# -- field elements ----------------------------------------------------------


@dataclass(frozen=True)
class FieldCtx:
    q: int
    e: int
    modulus: Poly
    generator: FieldElement | None = None

    @classmethod
    def build(cls, q: int, e: int) -> "FieldCtx":
        ctx = cls(q, e, find_irreducible(q, e))
        return cls(q, e, ctx.modulus, find_generator(ctx))

    @property
    def size(self) -> int:
        return self.q**self.e

    def one(self) -> FieldElement:
        return (1,) + (0,) * (self.e - 1)

    def element(self, coeffs: Sequence[int]) -> FieldElement:
        c = [x % self.q for x in coeffs]
        if len(c) > self.e:
            raise ValueError(f"element has more than {self.e} coefficients")
        return tuple(c + [0] * (self.e - len(c)))

    def code(self, z: FieldElement) -> int:
        return _code(z, self.q)

    def from_code(self, code: int) -> FieldElement:
        return _digits(code, self.q, self.e)


def _pad(ctx: FieldCtx, p: Sequence[int]) -> FieldElement:
    return tuple(p) + (0,) * (ctx.e - len(p))


def fe_add(a: FieldElement, b: FieldElement, ctx: FieldCtx) -> FieldElement:
    return tuple((x + y) % ctx.q for x, y in zip(a, b))


def fe_mul(a: FieldElement, b: FieldElement, ctx: FieldCtx) -> FieldElement:
    return _pad(ctx, poly_mulmod(a, b, ctx.modulus, ctx.q))


def fe_pow(a: FieldElement, k: int, ctx: FieldCtx) -> FieldElement:
    if k < 0:
        raise ValueError("negative exponents are not supported")
    return _pad(ctx, poly_powmod(a, k, ctx.modulus, ctx.q))


def find_generator(ctx: FieldCtx) -> FieldElement:
    """First element, by code, of multiplicative order q^e - 1."""
    order = ctx.q**ctx.e - 1
    primes = factorize_power_minus_one(ctx.q, ctx.e).primes
    one = ctx.one()
    for code in range(1, ctx.size):
        z = ctx.from_code(code)
        if fe_pow(z, order, ctx) != one:
            continue
        if all(fe_pow(z, order // r, ctx) != one for r in primes):
            return z
    raise AssertionError("no generator found")


@dataclass(frozen=True)
class ModelCheck:
    """Outcome of frobenius_model_check; falsy when a counterexample exists."""

    ok: bool
    counterexample: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def frobenius_model_check(ctx: FieldCtx) -> ModelCheck:
    """Exhaustively compare GF(q^e) with its cyclic model Z/(q^e - 1).

    Checks that dlog(z^q) = q dlog(z) for every nonzero z, and that for every
    n | e, z^(q^n) = z exactly when ord(z) divides q^n - 1.
    """
    q, e = ctx.q, ctx.e
    order = q**e - 1
    if order >= DLOG_LIMIT:
        raise ValueError("discrete-log tables are limited to q^e - 1 < 2^20")
    if ctx.generator is None:
        ctx = FieldCtx(q, e, ctx.modulus, find_generator(ctx))

    powers = kernels.power_table(ctx.code(ctx.generator), q, e, ctx.modulus, order)
    dlog = np.full(ctx.size, -1, dtype=np.int64)
    dlog[powers] = np.arange(order, dtype=np.int64)
    if dlog[0] != -1 or (dlog[1:] < 0).any():
        return ModelCheck(False, {"reason": "generator powers do not cover E^x"})

    frob = kernels.frobenius_map(q, e, ctx.modulus)
    z = np.arange(1, ctx.size, dtype=np.int64)
    lhs = dlog[frob[z]]
    rhs = q * dlog[z] % order
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        w = int(z[bad[0]])
        return ModelCheck(
            False, {"check": "dlog", "element": ctx.from_code(w), "dlog": int(dlog[w])}
        )

    elem_order = order // np.gcd(dlog[z], order)
    image = z.copy()
    step = 0
    for n in divisors(factorize(e)):
        while step < n:
            image = frob[image]
            step += 1
        fixed = image == z
        expected = (q**n - 1) % elem_order == 0
        bad = np.flatnonzero(fixed != expected)
        if bad.size:
            w = int(z[bad[0]])
            return ModelCheck(
                False, {"check": "subfield", "n": n, "element": ctx.from_code(w)}
            )
    return ModelCheck(True)


def frobenius_fixed_count(ctx: FieldCtx) -> int:
    """Number of z in GF(q^e), zero included, with z^q = z."""
    frob = kernels.frobenius_map(ctx.q, ctx.e, ctx.modulus)
    return int((frob == np.arange(ctx.size)).sum())
