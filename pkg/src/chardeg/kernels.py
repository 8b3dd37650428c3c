"""Hot inner loops, each with a numba path and a pure-numpy path.

The numba path is used when numba imports and ``CHARDEG_DISABLE_NUMBA`` is
unset (or "0"). Both paths return identical arrays; tests run both.

All kernels work in int64 and are only called on small moduli (orbit sweeps
with d <= 10**6, groups with |G| <= 2*10**4, fields with q**e <= 2**20), so
no product below overflows.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from typing import Iterator

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
_DISABLED = os.environ.get("CHARDEG_DISABLE_NUMBA", "0") not in ("", "0")
BACKEND = "numba" if HAVE_NUMBA and not _DISABLED else "numpy"


def _njit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


def set_backend(name: str) -> None:
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    BACKEND = name


@contextmanager
def backend(name: str) -> Iterator[None]:
    old = BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


# --------------------------------------------------------------------------
# Galois orbits on Irr(C) = Z/d under m -> m*q


@_njit
def _orbit_partition_numba(d, q, e):
    sizes = np.zeros(d, dtype=np.int64)
    reps = np.full(d, -1, dtype=np.int64)
    for m in range(d):
        if reps[m] >= 0:
            continue
        # m is the smallest unvisited index, hence the orbit minimum.
        k = 1
        cur = m * q % d
        while cur != m:
            k += 1
            cur = cur * q % d
            if k > e:
                return sizes, reps
        cur = m
        for _ in range(k):
            reps[cur] = m
            sizes[cur] = k
            cur = cur * q % d
    return sizes, reps


def _orbit_partition_numpy(d, q, e):
    start = np.arange(d, dtype=np.int64)
    cur = start.copy()
    reps = start.copy()
    sizes = np.zeros(d, dtype=np.int64)
    for k in range(1, e + 1):
        cur = cur * q % d
        np.minimum(reps, cur, out=reps)
        hit = (cur == start) & (sizes == 0)
        sizes[hit] = k
    reps[sizes == 0] = -1
    return sizes, reps


def orbit_partition(d: int, q: int, e: int) -> tuple[np.ndarray, np.ndarray]:
    """Orbits of m -> m*q mod d on [0, d), where q**e == 1 mod d.

    Returns ``(sizes, reps)``: orbit size and minimal orbit element for every
    index. An orbit that fails to close within e steps leaves size 0 and
    representative -1 (only possible if d does not divide q**e - 1).
    """
    q = q % d if d else 0
    if BACKEND == "numba":
        return _orbit_partition_numba(np.int64(d), np.int64(q), np.int64(e))
    return _orbit_partition_numpy(d, q, e)


# --------------------------------------------------------------------------
# Conjugacy classes of C x| Gamma with (a, j)(b, k) = (a + q^j b, j + k)


@_njit
def _class_count_numba(d, e, qpow):
    n = d * e
    seen = np.zeros(n, dtype=np.bool_)
    classes = 0
    for x in range(n):
        if seen[x]:
            continue
        classes += 1
        a = x // e
        j = x % e
        for b in range(d):
            for k in range(e):
                # g x g^-1 with g = (b, k), g^-1 = (-q^(e-k) b, -k)
                ga = (b + qpow[k] * a) % d
                gj = (k + j) % e
                ib = (d - qpow[(e - k) % e] * b % d) % d
                ik = (e - k) % e
                ca = (ga + qpow[gj] * ib) % d
                cj = (gj + ik) % e
                seen[ca * e + cj] = True
    return classes


def _class_count_numpy(d, e, qpow):
    n = d * e
    seen = np.zeros(n, dtype=bool)
    b = np.repeat(np.arange(d, dtype=np.int64), e)
    k = np.tile(np.arange(e, dtype=np.int64), d)
    ib = (-qpow[(e - k) % e] * b) % d
    ik = (e - k) % e
    classes = 0
    x = 0
    while x < n:
        classes += 1
        a, j = divmod(x, e)
        ga = (b + qpow[k] * a) % d
        gj = (k + j) % e
        ca = (ga + qpow[gj] * ib) % d
        cj = (gj + ik) % e
        seen[ca * e + cj] = True
        rest = np.flatnonzero(~seen[x:])
        x = x + int(rest[0]) if rest.size else n
    return classes


def class_count(d: int, e: int, q: int) -> int:
    """Number of conjugacy classes of C_d x| C_e by exhaustive conjugation.

    Elements are encoded as ``a * e + j``.
    """
    qpow = np.array([pow(q, k, d) for k in range(e)], dtype=np.int64)
    if BACKEND == "numba":
        return int(_class_count_numba(np.int64(d), np.int64(e), qpow))
    return int(_class_count_numpy(d, e, qpow))


# --------------------------------------------------------------------------
# Batched multiplicative orders


@_njit
def _powmod(a, k, n):
    r = 1 % n
    a = a % n
    while k > 0:
        if k & 1:
            r = r * a % n
        a = a * a % n
        k >>= 1
    return r


@_njit
def _orders_numba(n, lam, primes):
    out = np.zeros(n, dtype=np.int64)
    for a in range(n):
        x, y = a, n
        while y:
            x, y = y, x % y
        if x != 1:
            continue
        k = lam
        for p in primes:
            while k % p == 0 and _powmod(a, k // p, n) == 1:
                k //= p
        out[a] = k
    return out


def _powmod_numpy(base, k, n):
    """Elementwise base**k mod n with an exponent array."""
    r = np.full(base.shape, 1 % n, dtype=np.int64)
    b = base % n
    k = k.copy()
    while k.any():
        odd = (k & 1).astype(bool)
        r[odd] = r[odd] * b[odd] % n
        b = b * b % n
        k >>= 1
    return r


def _orders_numpy(n, lam, primes):
    a = np.arange(n, dtype=np.int64)
    unit = np.gcd(a, n) == 1
    k = np.where(unit, lam, 0).astype(np.int64)
    for p in primes:
        while True:
            cand = unit & (k % p == 0)
            ok = cand & (_powmod_numpy(a, np.where(cand, k // p, 0), n) == 1)
            if not ok.any():
                break
            k[ok] //= p
    return k


def orders_mod(n: int, lam: int, primes: tuple[int, ...]) -> np.ndarray:
    """Multiplicative order of every a in [0, n) (0 where gcd(a, n) > 1).

    ``lam`` is any exponent killing the unit group (the Carmichael value) and
    ``primes`` its prime divisors.
    """
    if n == 1:
        return np.ones(1, dtype=np.int64)
    pr = np.array(primes, dtype=np.int64)
    if BACKEND == "numba":
        return _orders_numba(np.int64(n), np.int64(lam), pr)
    return _orders_numpy(n, lam, tuple(int(p) for p in primes))


# --------------------------------------------------------------------------
# Polynomial-basis field arithmetic on integer-encoded elements
# (element = sum c_i q^i, coefficients low to high)


@_njit
def _fe_mul_code(x, y, q, e, modulus):
    xa = np.zeros(e, dtype=np.int64)
    ya = np.zeros(e, dtype=np.int64)
    for i in range(e):
        xa[i] = x % q
        x //= q
        ya[i] = y % q
        y //= q
    prod = np.zeros(2 * e - 1, dtype=np.int64)
    for i in range(e):
        if xa[i] == 0:
            continue
        for j in range(e):
            prod[i + j] = (prod[i + j] + xa[i] * ya[j]) % q
    for t in range(2 * e - 2, e - 1, -1):
        c = prod[t]
        if c == 0:
            continue
        for i in range(e + 1):
            prod[t - e + i] = (prod[t - e + i] - c * modulus[i]) % q
    code = 0
    for i in range(e - 1, -1, -1):
        code = code * q + prod[i]
    return code


@_njit
def _power_table_numba(g, q, e, modulus, count):
    out = np.empty(count, dtype=np.int64)
    cur = 1
    for k in range(count):
        out[k] = cur
        cur = _fe_mul_code(cur, g, q, e, modulus)
    return out


@_njit
def _frobenius_map_numba(q, e, modulus):
    size = q**e
    out = np.empty(size, dtype=np.int64)
    for z in range(size):
        r = 1
        b = z
        k = q
        while k > 0:
            if k & 1:
                r = _fe_mul_code(r, b, q, e, modulus)
            b = _fe_mul_code(b, b, q, e, modulus)
            k >>= 1
        out[z] = r
    return out


def decode(codes: np.ndarray, q: int, e: int) -> np.ndarray:
    """Coefficient rows (low to high) for an array of element codes."""
    codes = np.asarray(codes, dtype=np.int64)
    digits = np.empty(codes.shape + (e,), dtype=np.int64)
    rest = codes.copy()
    for i in range(e):
        digits[..., i] = rest % q
        rest //= q
    return digits


def encode(digits: np.ndarray, q: int) -> np.ndarray:
    weights = q ** np.arange(digits.shape[-1], dtype=np.int64)
    return (digits * weights).sum(axis=-1)


def fe_mul_rows(x: np.ndarray, y: np.ndarray, q: int, modulus: np.ndarray) -> np.ndarray:
    """Row-wise product of coefficient arrays reduced by a monic modulus."""
    e = x.shape[-1]
    prod = np.zeros(np.broadcast_shapes(x.shape[:-1], y.shape[:-1]) + (2 * e - 1,), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            prod[..., i + j] += x[..., i] * y[..., j]
    prod %= q
    for t in range(2 * e - 2, e - 1, -1):
        c = prod[..., t].copy()
        for i in range(e + 1):
            prod[..., t - e + i] = (prod[..., t - e + i] - c * modulus[i]) % q
    return prod[..., :e]


def _power_table_numpy(g, q, e, modulus, count):
    one = np.zeros((1, e), dtype=np.int64)
    one[0, 0] = 1
    rows = one
    step = decode(np.array([g]), q, e)
    # doubling: powers[n:2n] = powers[0:n] * g^n
    while rows.shape[0] < count:
        rows = np.concatenate([rows, fe_mul_rows(rows, step, q, modulus)])
        step = fe_mul_rows(step, step, q, modulus)
    return encode(rows[:count], q)


def _frobenius_map_numpy(q, e, modulus):
    z = decode(np.arange(q**e, dtype=np.int64), q, e)
    r = np.zeros_like(z)
    r[:, 0] = 1
    b = z
    k = q
    while k > 0:
        if k & 1:
            r = fe_mul_rows(r, b, q, modulus)
        b = fe_mul_rows(b, b, q, modulus)
        k >>= 1
    return encode(r, q)


def power_table(g: int, q: int, e: int, modulus, count: int) -> np.ndarray:
    """Codes of g**0, g**1, ..., g**(count-1) in GF(q)[x]/(modulus)."""
    mod = np.asarray(modulus, dtype=np.int64)
    if BACKEND == "numba":
        return _power_table_numba(np.int64(g), np.int64(q), np.int64(e), mod, np.int64(count))
    return _power_table_numpy(g, q, e, mod, count)


def frobenius_map(q: int, e: int, modulus) -> np.ndarray:
    """Code of z**q for every element code z in [0, q**e)."""
    mod = np.asarray(modulus, dtype=np.int64)
    if BACKEND == "numba":
        return _frobenius_map_numba(np.int64(q), np.int64(e), mod)
    return _frobenius_map_numpy(q, e, mod)
