"""Small-integer number theory: primality, factorization, multiplicative order.

All arguments are bounded by ``MAX_MODULUS`` so every product fits in 64 bits.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd

from .errors import ParameterError

MAX_MODULUS = 2**31

# Deterministic Miller-Rabin witnesses for n < 341,550,071,728,321.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ParameterError(f"cannot factorize {n}")
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def check_modulus(q: int, r: int) -> None:
    """Raise ``ParameterError`` unless ``q`` is an odd-enough prime coprime to radix ``r``."""
    if not isinstance(q, int) or not isinstance(r, int):
        raise ParameterError("q and r must be integers")
    if r < 2:
        raise ParameterError(f"radix must be >= 2, got {r}")
    if q < 3 or q >= MAX_MODULUS:
        raise ParameterError(f"q must be a prime in [3, 2^31), got {q}")
    if not is_prime(q):
        raise ParameterError(f"q must be prime, got {q}")
    if gcd(r, q) != 1:
        raise ParameterError(f"radix {r} is not coprime to q={q}")


@lru_cache(maxsize=4096)
def multiplicative_order(r: int, q: int) -> int:
    """Least ``p >= 1`` with ``r**p == 1 (mod q)`` for prime ``q``.

    Starts from ``q - 1`` and strips each prime factor while the power stays 1.
    """
    check_modulus(q, r)
    order = q - 1
    for p in factorize(q - 1):
        while order % p == 0 and pow(r, order // p, q) == 1:
            order //= p
    return order
