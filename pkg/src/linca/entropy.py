"""Topological entropy of linear CA as exact log-linear values."""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Mapping

from .ca import LocalRule, unit_positions
from .errors import NotInvertibleError
from .invert import inverse, invertibility_profile
from .modular import factorize

_EXACT_SIGN_BITS = 1 << 16


class LogLinearValue:
    """Exact number ``sum_p c_p * ln(p)`` with rational ``c_p``.

    Primes are taken as given; since logarithms of distinct primes are
    linearly independent over Q, equality is coefficient-wise.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, Fraction | int] | None = None):
        clean = {}
        for p, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                clean[int(p)] = c
        self._coeffs = dict(sorted(clean.items()))

    @classmethod
    def log(cls, p: int, c: Fraction | int = 1) -> LogLinearValue:
        return cls({p: c})

    @classmethod
    def log_of(cls, n: int) -> LogLinearValue:
        """``ln(n)`` expanded over the prime factors of ``n``."""
        if n == 1:
            return cls()
        return cls({p: k for p, k in factorize(n)})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, LogLinearValue):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self._coeffs)
        for p, c in other._coeffs.items():
            out[p] = out.get(p, 0) + c
        return LogLinearValue(out)

    __radd__ = __add__

    def __neg__(self):
        return LogLinearValue({p: -c for p, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, LogLinearValue):
            return NotImplemented
        k = Fraction(k)
        return LogLinearValue({p: k * c for p, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __float__(self):
        return math.fsum(float(c) * math.log(p) for p, c in self._coeffs.items())

    def sign(self) -> int:
        """Exact sign of ``sum_p e_p ln p`` with integer ``e_p = D c_p``.

        Small exponents compare ``prod p^e_p`` against 1 directly; large ones
        use decimal logarithms at increasing precision with an explicit error
        bound.  A nonzero value always resolves since the ln p are independent.
        """
        if not self._coeffs:
            return 0
        d = math.lcm(*(c.denominator for c in self._coeffs.values()))
        exps = {p: int(c * d) for p, c in self._coeffs.items()}
        size = sum(abs(e) * p.bit_length() for p, e in exps.items())
        if size <= _EXACT_SIGN_BITS:
            num = den = 1
            for p, e in exps.items():
                if e > 0:
                    num *= p**e
                else:
                    den *= p ** (-e)
            return (num > den) - (num < den)
        prec = 40 + len(str(size))
        while True:
            with decimal.localcontext() as ctx:
                ctx.prec = prec
                total = sum(Decimal(e) * Decimal(p).ln() for p, e in exps.items())
                bound = Decimal(size) * Decimal(10) ** (2 - prec)
                if abs(total) > bound:
                    return 1 if total > 0 else -1
            prec *= 2

    def ratio(self, other: LogLinearValue) -> Fraction | None:
        """``self / other`` when it is rational, else ``None``."""
        if not other:
            raise ZeroDivisionError("division by a zero log-linear value")
        if set(self._coeffs) != set(other._coeffs):
            return Fraction(0) if not self._coeffs else None
        ratios = {c / other._coeffs[p] for p, c in self._coeffs.items()}
        return ratios.pop() if len(ratios) == 1 else None

    def to_json(self) -> dict[str, str]:
        return {str(p): str(c) for p, c in self._coeffs.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> LogLinearValue:
        return cls({int(p): Fraction(c) for p, c in data.items()})

    def __str__(self):
        if not self._coeffs:
            return "0"
        out = ""
        for p, c in self._coeffs.items():
            mag = abs(c)
            term = f"ln({p})" if mag == 1 else f"{mag}*ln({p})"
            if not out:
                out = term if c > 0 else "-" + term
            else:
                out += (" + " if c > 0 else " - ") + term
        return out

    def __repr__(self):
        return f"LogLinearValue({str(self)!r})"


@dataclass(frozen=True)
class PrimePowerProfile:
    """Unit positions of a rule modulo one prime factor ``p^k`` of m.

    ``P`` is the unit set with 0 always adjoined; ``L``/``R`` are its extremes.
    """

    p: int
    k: int
    units: frozenset[int]

    @property
    def P(self) -> frozenset[int]:
        return self.units | {0}

    @property
    def L(self) -> int:
        return min(self.P)

    @property
    def R(self) -> int:
        return max(self.P)

    @property
    def entropy(self) -> LogLinearValue:
        return LogLinearValue.log(self.p, self.k * (self.R - self.L))


def prime_profiles(rule: LocalRule) -> list[PrimePowerProfile]:
    return [
        PrimePowerProfile(p, k, frozenset(unit_positions(rule, p)))
        for p, k in factorize(rule.m)
    ]


def topological_entropy(rule: LocalRule) -> LogLinearValue:
    return sum((pr.entropy for pr in prime_profiles(rule)), LogLinearValue())


def invertible_entropy(rule: LocalRule) -> LogLinearValue:
    """Entropy from the unique unit position ``j`` of each prime: ``sum k |j| ln p``."""
    prof = invertibility_profile(rule)
    if not prof.invertible:
        raise NotInvertibleError(prof.explain(), prof)
    return sum(
        (LogLinearValue.log(s.p, s.k * abs(s.j)) for s in prof.statuses),
        LogLinearValue(),
    )


def entropy_of_inverse_check(rule: LocalRule) -> bool:
    return topological_entropy(rule) == topological_entropy(inverse(rule))
