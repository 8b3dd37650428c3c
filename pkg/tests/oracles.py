"""Independent reference computations used only by the tests.

Nothing here calls into chardeg; each oracle recomputes its answer by the most
direct method available (trial division, walking powers, listing subsets).
"""

from math import gcd, isqrt

import numba
import numpy as np


def trial_is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, isqrt(n) + 1))


def trial_factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def all_divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def order_by_walk(a, n):
    """Smallest k >= 1 with a^k = 1 mod n, found by stepping through powers."""
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


@numba.njit(cache=True)
def order_table_by_walk(n):
    out = np.zeros(n, dtype=np.int64)
    for a in range(n):
        x, y = a, n
        while y:
            x, y = y, x % y
        if x != 1:
            continue
        k = 1
        c = a % n
        while c != 1 % n:
            c = c * a % n
            k += 1
        out[a] = k
    return out


@numba.njit(cache=True)
def _pw(a, k, n):
    r = 1 % n
    a = a % n
    while k > 0:
        if k & 1:
            r = r * a % n
        a = a * a % n
        k >>= 1
    return r


@numba.njit(cache=True)
def certify_order_table(n, orders):
    """Index of the first a whose claimed order fails, or -1.

    Claimed k is accepted iff a^k = 1 and a^(k/p) != 1 for every prime p | k,
    each computed by powering; zero entries must be exactly the non-units.
    """
    for a in range(n):
        x, y = a, n
        while y:
            x, y = y, x % y
        k = orders[a]
        if x != 1:
            if k != 0:
                return a
            continue
        if k < 1 or _pw(a, k, n) != 1 % n:
            return a
        m = k
        p = 2
        while p * p <= m:
            if m % p == 0:
                if _pw(a, k // p, n) == 1 % n:
                    return a
                while m % p == 0:
                    m //= p
            p += 1
        if m > 1 and _pw(a, k // m, n) == 1 % n:
            return a
    return -1


def carmichael_by_definition(n):
    """Least L with a^L = 1 for all units a, from the walked orders."""
    from math import lcm

    out = 1
    for a in range(1, n):
        if gcd(a, n) == 1:
            out = lcm(out, order_by_walk(a, n))
    return out


def galois_orbits(d, q):
    """Orbits of m -> m q on Z/d as a list of frozensets, by set closure."""
    seen = set()
    orbits = []
    for m in range(d):
        if m in seen:
            continue
        orb = {m}
        cur = m * q % d
        while cur not in orb:
            orb.add(cur)
            cur = cur * q % d
        seen |= orb
        orbits.append(frozenset(orb))
    return orbits


def class_count_by_tables(d, e, q):
    """Conjugacy classes of C_d x| C_e from an explicit multiplication table."""
    elems = [(a, j) for a in range(d) for j in range(e)]
    index = {x: i for i, x in enumerate(elems)}

    def mul(x, y):
        return ((x[0] + pow(q, x[1], d) * y[0]) % d, (x[1] + y[1]) % e)

    ident = (0, 0)
    inv = {}
    for x in elems:
        for y in elems:
            if mul(x, y) == ident:
                inv[x] = y
                break
    seen = [False] * len(elems)
    classes = 0
    for x in elems:
        if seen[index[x]]:
            continue
        classes += 1
        for g in elems:
            seen[index[mul(mul(g, x), inv[g])]] = True
    return classes
