"""Invertibility test and inverse construction for linear CA.

A rule is invertible iff for every prime ``p | m`` exactly one coefficient
is a unit mod ``p``.  The inverse series is built modulo each prime power
and lifted to Z_m with the CRT weights.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fps
from .ca import LocalRule, unit_positions
from .errors import NotInvertibleError
from .fps import LaurentSeries
from .modular import crt_weights, factorize, mod_inverse


@dataclass(frozen=True)
class PrimeStatus:
    p: int
    k: int
    units: tuple[int, ...]
    coeff: int | None = None  # the unit coefficient when ``units`` has one entry

    @property
    def invertible(self) -> bool:
        return len(self.units) == 1

    @property
    def j(self) -> int:
        if not self.invertible:
            raise NotInvertibleError(f"p={self.p}: {self.reason}")
        return self.units[0]

    @property
    def reason(self) -> str | None:
        if not self.units:
            return "no-unit"
        if len(self.units) > 1:
            return "multiple-units"
        return None

    def explain(self) -> str:
        if self.invertible:
            return f"p={self.p} has a single unit at j={self.units[0]}"
        if not self.units:
            return f"p={self.p} has no unit coefficient"
        return f"p={self.p} has units at {', '.join(map(str, self.units))}"


@dataclass(frozen=True)
class InvertibilityProfile:
    rule: LocalRule
    statuses: tuple[PrimeStatus, ...]

    @property
    def invertible(self) -> bool:
        return all(s.invertible for s in self.statuses)

    def failures(self) -> tuple[PrimeStatus, ...]:
        return tuple(s for s in self.statuses if not s.invertible)

    def explain(self) -> str:
        bad = self.failures()
        if not bad:
            return "invertible"
        return "not invertible: " + "; ".join(s.explain() for s in bad)


def invertibility_profile(rule: LocalRule) -> InvertibilityProfile:
    statuses = []
    for p, k in factorize(rule.m):
        units = unit_positions(rule, p)
        coeff = rule.coeff(units[0]) if len(units) == 1 else None
        statuses.append(PrimeStatus(p, k, units, coeff))
    return InvertibilityProfile(rule, tuple(statuses))


def inverse_mod_prime_power(f: LaurentSeries, p: int, k: int) -> LaurentSeries:
    """Inverse of ``f`` over Z_{p^k}, given a unique unit coefficient mod ``p``.

    Writing ``f = u X^e + p H`` and ``Q = -u^-1 X^-e p H`` (divisible by p),
    ``f^-1 = u^-1 X^-e (1 + Q + ... + Q^(k-1))`` because ``Q^k = 0``.
    """
    q = p**k
    f = fps.reduce_mod(f, q) if f.modulus != q else f
    units = [e for e, c in f.items() if c % p]
    if len(units) != 1:
        raise NotInvertibleError(
            f"series is not invertible mod {p}: unit exponents {units}"
        )
    e = units[0]
    u_inv = mod_inverse(f[e], q)
    lead = LaurentSeries.monomial(q, -e, u_inv)
    rest = f - LaurentSeries.monomial(q, e, f[e])
    nilpotent = -(lead * rest)
    one = LaurentSeries.one(q)
    geometric = one
    for _ in range(k - 1):
        geometric = one + nilpotent * geometric
    return lead * geometric


def inverse_series(f: LaurentSeries) -> LaurentSeries:
    fact = factorize(f.modulus)
    weights = crt_weights(fact)
    m = f.modulus
    total = LaurentSeries(m)
    for (p, k), a, b in zip(fact, weights.alpha, weights.beta):
        g = inverse_mod_prime_power(fps.reduce_mod(f, p**k), p, k)
        total = total + g.with_modulus(m).scale(a * b)
    return total


def inverse(rule: LocalRule) -> LocalRule:
    prof = invertibility_profile(rule)
    if not prof.invertible:
        raise NotInvertibleError(prof.explain(), prof)
    return fps.to_rule(inverse_series(fps.from_rule(rule)))


def inverse_support_bound(rule: LocalRule, p: int, k: int) -> tuple[int, int]:
    """Exponent range that must contain the support of the inverse mod ``p^k``."""
    j = invertibility_profile(rule).statuses[factorize(rule.m).primes.index(p)].j
    return j + (k - 1) * (j - rule.r), j + (k - 1) * (j - rule.l)
