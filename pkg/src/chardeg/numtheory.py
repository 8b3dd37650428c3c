"""Exact integer number theory on values below 2**127."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd, isqrt
from typing import Iterable, Iterator

INT_LIMIT = 1 << 127
TRIAL_LIMIT = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class RangeError(ValueError):
    """Raised when an input exceeds the supported integer width."""


def check_range(n: int, name: str = "n") -> None:
    if n >= INT_LIMIT:
        raise RangeError(f"{name} = {n} is not below 2^127")


@lru_cache(maxsize=1)
def small_primes() -> tuple[int, ...]:
    """All primes below TRIAL_LIMIT, ascending."""
    sieve = bytearray([1]) * TRIAL_LIMIT
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(TRIAL_LIMIT - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, TRIAL_LIMIT, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a | n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi needs an odd positive modulus")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameter choice: first D in 5, -7, 9, -11, ... with (D|n) = -1.
    if isqrt(n) ** 2 == n:
        return False
    D = 5
    while True:
        j = jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4

    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    # Left-to-right binary ladder for U_d, V_d, Q^d.
    U, V, Qk = 1, P, Q % n
    inv2 = (n + 1) // 2
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for 1 <= n < 2**127.

    Below 2**64 the fixed Miller-Rabin base set is a proof. Above it the
    same bases are followed by a strong Lucas test.
    """
    check_range(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    if n < 1 << 64:
        return True
    return _strong_lucas_probable_prime(n)


@dataclass(frozen=True)
class PrimeSet:
    """A sorted set of distinct primes (the prime set pi)."""

    primes: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.primes)))
        for p in ordered:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", ordered)

    def __contains__(self, p: object) -> bool:
        return p in self.primes

    def __iter__(self) -> Iterator[int]:
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer.

    ``factors`` holds ``(prime, exponent)`` pairs with strictly increasing
    primes.
    """

    value: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("Factorization value must be positive")
        prod = 1
        last = 1
        for p, k in self.factors:
            if p <= last or k < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**k
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def prime_set(self) -> PrimeSet:
        return PrimeSet(self.primes)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def restrict(self, m: int) -> "Factorization":
        """Factorization of a divisor ``m`` of ``value``, read off from this one."""
        if m < 1 or self.value % m:
            raise ValueError(f"{m} does not divide {self.value}")
        out = []
        for p, _ in self.factors:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            if k:
                out.append((p, k))
        return Factorization(prod_factors(out), tuple(out))


def prod_factors(factors: Iterable[tuple[int, int]]) -> int:
    return reduce(lambda acc, pk: acc * pk[0] ** pk[1], factors, 1)


def _brent(n: int, c: int) -> int:
    """One Pollard-rho (Brent) run with polynomial x^2 + c; may return n."""
    y, r, q = 2, 1, 1
    m = 128
    g = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> list[int]:
    """Prime factors (with repetition) of n, which has no factor below TRIAL_LIMIT."""
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    r = isqrt(n)
    if r * r == n:
        return _split(r) * 2
    c = 1
    while True:
        g = _brent(n, c)
        if 1 < g < n:
            return _split(g) + _split(n // g)
        c += 1


def factorize(n: int) -> Factorization:
    """Factor 1 <= n < 2**127: trial division, then Brent's rho."""
    check_range(n)
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    value = n
    counts: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            counts[p] = k
    if n > 1:
        if n < TRIAL_LIMIT * TRIAL_LIMIT:
            counts[n] = counts.get(n, 0) + 1
        else:
            for p in _split(n):
                counts[p] = counts.get(p, 0) + 1
    return Factorization(value, tuple(sorted(counts.items())))


def merge(*parts: Factorization) -> Factorization:
    """Factorization of the product of the given factorizations."""
    counts: dict[int, int] = {}
    value = 1
    for f in parts:
        value *= f.value
        for p, k in f.factors:
            counts[p] = counts.get(p, 0) + k
    return Factorization(value, tuple(sorted(counts.items())))


def cyclotomic_value(k: int, x: int) -> int:
    """Phi_k(x) for an integer x >= 2, via Moebius inversion of x^k - 1."""
    num, den = 1, 1
    for t in divisors(factorize(k)):
        mu = mobius(k // t)
        if mu == 1:
            num *= x**t - 1
        elif mu == -1:
            den *= x**t - 1
    return num // den


def mobius(n: int) -> int:
    f = factorize(n)
    if any(k > 1 for _, k in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


@lru_cache(maxsize=256)
def factorize_power_minus_one(q: int, e: int) -> Factorization:
    """Factor q**e - 1 as the product of its cyclotomic pieces Phi_k(q), k | e.

    Same result as ``factorize(q**e - 1)``, but each piece is far smaller,
    which keeps Pollard rho fast near the 127-bit limit.
    """
    check_range(q**e - 1, "q^e - 1")
    if q < 2 or e < 1:
        raise ValueError("need q >= 2 and e >= 1")
    return merge(*(factorize(cyclotomic_value(k, q)) for k in divisors(factorize(e))))


def divisors(f: Factorization) -> list[int]:
    """All divisors of ``f.value`` in increasing order."""
    divs = [1]
    for p, k in f.factors:
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def euler_phi(f: Factorization) -> int:
    return prod_factors((p, k - 1) for p, k in f.factors) * prod_factors(
        (p - 1, 1) for p, _ in f.factors
    )


def carmichael(f: Factorization) -> int:
    """Carmichael function lambda(n) from the factorization of n."""
    lam = 1
    for p, k in f.factors:
        if p == 2 and k >= 3:
            part = 2 ** (k - 2)
        else:
            part = (p - 1) * p ** (k - 1)
        lam = lam * part // gcd(lam, part)
    return lam


def multiplicative_order(a: int, n: int) -> int:
    """Smallest k >= 1 with a**k == 1 (mod n).

    Starts from the Carmichael exponent and strips prime factors while the
    power stays 1.
    """
    check_range(n)
    check_range(a, "a")
    if n < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1, order undefined")
    if n == 1:
        return 1
    a %= n
    k = carmichael(factorize(n))
    for p, _ in factorize(k).factors:
        while k % p == 0 and pow(a, k // p, n) == 1:
            k //= p
    return k


def lucas_lehmer(p: int) -> bool:
    """True iff the Mersenne number 2**p - 1 is prime."""
    if p < 2:
        raise ValueError("lucas_lehmer needs p >= 2")
    check_range((1 << p) - 1, "2^p - 1")
    if p == 2:
        return True
    if not is_prime(p):
        return False
    m = (1 << p) - 1
    s = 4
    for _ in range(p - 2):
        s = (s * s - 2) % m
    return s == 0


def mersenne_exponent(q: int) -> int | None:
    """p with q == 2**p - 1, or None if q + 1 is not a power of two."""
    if q < 1 or (q + 1) & q:
        return None
    return (q + 1).bit_length() - 1


def is_pi_number(n: int, pi: PrimeSet | Iterable[int]) -> bool:
    """True iff every prime factor of n lies in pi (so 1 always qualifies)."""
    if n < 1:
        raise ValueError("pi-number test needs a positive integer")
    for p in pi:
        while n % p == 0:
            n //= p
    return n == 1


def pi_part(n: int, pi: PrimeSet | Iterable[int]) -> int:
    """Largest divisor of n whose prime factors all lie in pi."""
    part = 1
    for p in pi:
        while n % p == 0:
            n //= p
            part *= p
    return part


def multiplicative_orders(n: int):
    """Orders of every a in [0, n) modulo n as an int64 array, 0 where gcd(a, n) > 1.

    Same Carmichael-stripping method as ``multiplicative_order``, batched in a
    compiled kernel; n must stay below 2**31 so products fit in int64.
    """
    from . import kernels

    if not 1 <= n < 1 << 31:
        raise RangeError("multiplicative_orders needs 1 <= n < 2^31")
    lam = carmichael(factorize(n))
    return kernels.orders_mod(n, lam, factorize(lam).primes)
