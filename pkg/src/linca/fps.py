"""Sparse Laurent polynomials over Z_m.

A rule ``sum_i c_i x_{n+i}`` corresponds to the series ``sum_i c_i X^{-i}``;
composition of rules is multiplication of series.
"""

from __future__ import annotations

from typing import Mapping

from .errors import EmptySeriesError, LincaError, ModulusMismatchError
from .modular import check_modulus


class LaurentSeries:
    """A finite Laurent series with coefficients in ``[1, modulus)``.

    Zero coefficients are never stored, so the zero series has no terms.
    Instances are immutable and hashable.
    """

    __slots__ = ("_modulus", "_terms", "_hash")

    def __init__(self, modulus: int, terms: Mapping[int, int] | None = None):
        check_modulus(modulus)
        clean = {}
        for e, c in (terms or {}).items():
            c %= modulus
            if c:
                clean[int(e)] = c
        self._modulus = modulus
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def one(cls, modulus: int) -> LaurentSeries:
        return cls(modulus, {0: 1})

    @classmethod
    def monomial(cls, modulus: int, exponent: int, coeff: int = 1) -> LaurentSeries:
        return cls(modulus, {exponent: coeff})

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def items(self):
        return self._terms.items()

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self._modulus == other._modulus and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._modulus, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentSeries({self._modulus}, {self._terms})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                parts.append(str(c))
            else:
                x = "X" if e == 1 else f"X^{e}"
                parts.append(x if c == 1 else f"{c}*{x}")
        return " + ".join(parts) + f" (mod {self._modulus})"

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(self._modulus, {0: other})
        if other._modulus != self._modulus:
            raise ModulusMismatchError(
                f"moduli differ: {self._modulus} vs {other._modulus}"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentSeries(self._modulus, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self._modulus, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        return power(self, n)

    def scale(self, k: int) -> LaurentSeries:
        return LaurentSeries(self._modulus, {e: k * c for e, c in self._terms.items()})

    def shift(self, s: int) -> LaurentSeries:
        """Multiply by ``X^s``."""
        return LaurentSeries(self._modulus, {e + s: c for e, c in self._terms.items()})

    def with_modulus(self, modulus: int) -> LaurentSeries:
        """Reinterpret the integer coefficients modulo ``modulus`` (no divisibility check)."""
        return LaurentSeries(modulus, self._terms)


def multiply(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    g = f._check(g)
    m = f.modulus
    out: dict[int, int] = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            out[e] = (out.get(e, 0) + c1 * c2) % m
    return LaurentSeries(m, out)


def power(f: LaurentSeries, n: int) -> LaurentSeries:
    if n < 0:
        raise LincaError(f"exponent must be >= 0, got {n}")
    result = LaurentSeries.one(f.modulus)
    base = f
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def reduce_mod(f: LaurentSeries, q: int) -> LaurentSeries:
    if f.modulus % q:
        raise ModulusMismatchError(f"{q} does not divide the modulus {f.modulus}")
    return f.with_modulus(q)


def support(f: LaurentSeries) -> tuple[int, int]:
    if not f:
        raise EmptySeriesError("the zero series has empty support")
    exps = list(f.terms)
    return exps[0], exps[-1]


def from_rule(rule) -> LaurentSeries:
    """Series of ``rule``: the coefficient at position ``i`` goes to ``X^{-i}``."""
    return LaurentSeries(rule.m, {-(rule.l + k): c for k, c in enumerate(rule.coeffs)})


def to_rule(series: LaurentSeries):
    from .ca import LocalRule

    if not series:
        raise EmptySeriesError("the zero series has no associated rule")
    lo, hi = support(series)
    l = -hi
    coeffs = [series[-(l + k)] for k in range(hi - lo + 1)]
    return LocalRule(series.modulus, l, coeffs)
