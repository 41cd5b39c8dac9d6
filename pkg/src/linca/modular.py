"""Integer factorization, modular inverses and CRT weights."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import InvalidModulusError, NotAUnitError

MAX_MODULUS = 2**64 - 1


@dataclass(frozen=True)
class Factorization:
    m: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**k for p, k in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


@dataclass(frozen=True)
class CrtWeights:
    """``alpha[i] = m / q_i`` and ``beta[i] = alpha[i]^-1 mod q_i`` for ``q_i = p_i^k_i``."""

    moduli: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def combine(self, residues) -> int:
        """Lift one residue per prime power to the unique residue mod m."""
        m = self.moduli[0] * self.alpha[0]
        return sum(a * b * r for a, b, r in zip(self.alpha, self.beta, residues)) % m


def check_modulus(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool):
        raise InvalidModulusError(f"modulus must be an integer, got {m!r}")
    if m < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {m}")
    if m > MAX_MODULUS:
        raise InvalidModulusError(f"modulus {m} does not fit in 64 bits")
    return m


def factorize(m: int) -> Factorization:
    """Prime factorization of ``m`` by trial division."""
    check_modulus(m)
    factors = []
    n = m
    for p in (2, 3):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            factors.append((p, k))
    # candidates 6i +- 1
    p = 5
    while p * p <= n:
        for q in (p, p + 2):
            k = 0
            while n % q == 0:
                n //= q
                k += 1
            if k:
                factors.append((q, k))
        p += 6
    if n > 1:
        factors.append((n, 1))
    return Factorization(m, tuple(factors))


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def mod_inverse(a: int, n: int) -> int:
    if n < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {n}")
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NotAUnitError(f"{a} is not a unit modulo {n}") from None


def crt_weights(f: Factorization) -> CrtWeights:
    moduli = f.prime_powers
    alpha = tuple(f.m // q for q in moduli)
    beta = tuple(mod_inverse(a, q) for a, q in zip(alpha, moduli))
    return CrtWeights(moduli, alpha, beta)
