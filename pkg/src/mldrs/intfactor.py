"""Deterministic integer factoring, used to certify primitivity of 2^m - 1 orders."""

from __future__ import annotations

import math
from functools import lru_cache

TRIAL_BOUND = 10**6
RHO_BUDGET = 2_000_000

# Strong-pseudoprime bases proven sufficient below 3.317e24 (Sorenson-Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_PROVEN_LIMIT = 3_317_044_064_679_887_385_961_981


class FactorizationBudgetError(RuntimeError):
    """Pollard rho exhausted its iteration budget without splitting a composite."""


@lru_cache(maxsize=1)
def _small_primes(bound: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, bound + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
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
    # Selfridge parameter choice: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
        if d == 13 and math.isqrt(n) ** 2 == n:
            return False
    p, q = 1, (1 - d) // 4

    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1

    # Binary Lucas chain for U_k, V_k, Q^k.
    u, v, qk = 0, 2, 1
    inv2 = pow(2, -1, n)
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24; Baillie-PSW above that."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, b) for b in _MR_BASES):
        return False
    if n < _MR_PROVEN_LIMIT:
        return True
    return _strong_lucas_probable_prime(n)


def pollard_rho(n: int, budget: int = RHO_BUDGET) -> int:
    """Return a nontrivial factor of the odd composite ``n`` (Brent's variant).

    The polynomial constant runs through c = 1, 2, 3, ... with seed 2, so the
    result is reproducible.
    """
    spent = 0
    c = 1
    while spent < budget:
        y, r, g = 2, 1, 1
        x = ys = y
        f = lambda v: (v * v + c) % n  # noqa: E731
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                prod = 1
                for _ in range(min(128, r - k)):
                    y = f(y)
                    prod = prod * abs(x - y) % n
                g = math.gcd(prod, n)
                k += 128
            spent += r
            r *= 2
        if g == n:
            # Batched gcd overshot; back up one step at a time.
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
        c += 1
    raise FactorizationBudgetError(f"pollard rho budget of {budget} iterations exhausted on {n}")


def factorize(n: int, budget: int = RHO_BUDGET) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: list[int] = []
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors.append(p)
            n //= p
    if n == 1:
        return factors

    stack = [n]
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            factors.append(x)
            continue
        d = pollard_rho(x, budget)
        stack.extend((d, x // d))
    return sorted(factors)
