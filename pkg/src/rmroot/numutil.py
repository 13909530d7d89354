"""Small number-theory helpers shared across the package.

Everything here runs at desk scale (arguments well below 10**12), so plain
trial division is both adequate and dependency-free.
"""

from __future__ import annotations

from math import isqrt


def is_prime(n: int) -> bool:
    """Trial-division primality test."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n``, sorted increasingly."""
    divs = [1]
    for p, a in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(a + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    """Euler's totient, by trial factorization."""
    if n < 1:
        raise ValueError(f"totient undefined for {n}")
    out = 1
    for p, a in factorize(n).items():
        out *= p ** (a - 1) * (p - 1)
    return out


def primes_upto(n: int) -> list[int]:
    """All primes <= n, by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for d in range(2, isqrt(n) + 1):
        if sieve[d]:
            sieve[d * d :: d] = bytearray(len(range(d * d, n + 1, d)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_powers_upto(n: int, odd_only: bool = False) -> list[tuple[int, int, int]]:
    """All prime powers q = p**f <= n as ``(p, f, q)``, sorted by q."""
    out = []
    for p in primes_upto(n):
        if odd_only and p == 2:
            continue
        q, f = p, 1
        while q <= n:
            out.append((p, f, q))
            q *= p
            f += 1
    return sorted(out, key=lambda t: t[2])
