"""Linear one-dimensional cellular automata over Z_m."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import fps
from .errors import LincaError, ModulusMismatchError, PositionError
from .modular import check_modulus


@dataclass(frozen=True)
class LocalRule:
    """``y_n = sum_{i=l}^{r} coeffs[i - l] * x_{n+i} (mod m)``.

    The rule is canonicalized on construction: coefficients are reduced
    mod ``m`` and zero coefficients at either end are trimmed.  The all-zero
    rule becomes the single coefficient 0 at position 0.
    """

    m: int
    l: int
    coeffs: tuple[int, ...] = field(default=(1,))

    def __post_init__(self):
        check_modulus(self.m)
        cs = [int(c) % self.m for c in self.coeffs]
        if not cs:
            raise LincaError("a rule needs at least one coefficient")
        lo, hi = 0, len(cs)
        while lo < hi and cs[lo] == 0:
            lo += 1
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "l", 0)
            object.__setattr__(self, "coeffs", (0,))
        else:
            object.__setattr__(self, "l", int(self.l) + lo)
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))

    @classmethod
    def identity(cls, m: int) -> LocalRule:
        return cls(m, 0, (1,))

    @classmethod
    def from_dict(cls, m: int, coeffs: dict[int, int]) -> LocalRule:
        """Build a rule from a ``{position: coefficient}`` mapping."""
        if not coeffs:
            return cls(m, 0, (0,))
        lo, hi = min(coeffs), max(coeffs)
        return cls(m, lo, tuple(coeffs.get(i, 0) for i in range(lo, hi + 1)))

    @property
    def r(self) -> int:
        return self.l + len(self.coeffs) - 1

    @property
    def positions(self) -> range:
        return range(self.l, self.r + 1)

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def coeff(self, i: int) -> int:
        if self.l <= i <= self.r:
            return self.coeffs[i - self.l]
        return 0

    def items(self):
        return zip(self.positions, self.coeffs)

    def translate(self, s: int) -> LocalRule:
        """The rule composed with ``s`` shifts: every position moves by ``s``."""
        return LocalRule(self.m, self.l + s, self.coeffs)

    def spec(self) -> str:
        return f"m={self.m}; l={self.l}; c={','.join(map(str, self.coeffs))}"

    def __str__(self):
        terms = [
            (f"x_{{{i}}}" if c == 1 else f"{c}*x_{{{i}}}") for i, c in self.items() if c
        ]
        return (" + ".join(terms) or "0") + f" (mod {self.m})"


@dataclass(frozen=True)
class CyclicConfiguration:
    """A periodic configuration of ``len(cells)`` residues mod ``m``."""

    m: int
    cells: tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.m)
        if len(self.cells) < 1:
            raise LincaError("a configuration needs at least one cell")
        object.__setattr__(self, "cells", tuple(int(c) % self.m for c in self.cells))

    @classmethod
    def random(cls, m: int, n: int, rng: np.random.Generator) -> CyclicConfiguration:
        return cls(m, tuple(rng.integers(0, m, size=n).tolist()))

    def __len__(self):
        return len(self.cells)

    def __add__(self, other: CyclicConfiguration) -> CyclicConfiguration:
        if other.m != self.m or len(other) != len(self):
            raise ModulusMismatchError("configurations are not compatible")
        return CyclicConfiguration(self.m, tuple(a + b for a, b in zip(self.cells, other.cells)))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.cells, dtype=np.int64)


def apply(rule: LocalRule, x: CyclicConfiguration) -> CyclicConfiguration:
    if rule.m != x.m:
        raise ModulusMismatchError(f"rule is mod {rule.m}, configuration is mod {x.m}")
    cells = x.as_array()
    y = np.zeros_like(cells)
    for i, c in rule.items():
        if c:
            # np.roll(cells, -i)[n] == cells[(n + i) % N]
            y = (y + c * np.roll(cells, -i)) % rule.m
    return CyclicConfiguration(x.m, tuple(y.tolist()))


def shift(x: CyclicConfiguration, s: int) -> CyclicConfiguration:
    n = len(x)
    return CyclicConfiguration(x.m, tuple(x.cells[(i + s) % n] for i in range(n)))


def iterate(rule: LocalRule, n: int) -> LocalRule:
    """Local rule of the ``n``-th iterate; ``n = 0`` gives the identity."""
    if n < 0:
        raise LincaError(f"iteration count must be >= 0, got {n}")
    if n == 0:
        return LocalRule.identity(rule.m)
    series = fps.power(fps.from_rule(rule), n)
    if not series:
        return LocalRule(rule.m, 0, (0,))
    return fps.to_rule(series)


def compose(outer: LocalRule, inner: LocalRule) -> LocalRule:
    """Rule of ``outer(inner(x))``."""
    product = fps.multiply(fps.from_rule(outer), fps.from_rule(inner))
    if not product:
        return LocalRule(outer.m, 0, (0,))
    return fps.to_rule(product)


def is_permutative_at(rule: LocalRule, j: int) -> bool:
    if not rule.l <= j <= rule.r:
        raise PositionError(f"position {j} outside [{rule.l}, {rule.r}]")
    return gcd(rule.coeff(j), rule.m) == 1


def is_leftmost_permutative(rule: LocalRule) -> bool:
    return is_permutative_at(rule, rule.l)


def is_rightmost_permutative(rule: LocalRule) -> bool:
    return is_permutative_at(rule, rule.r)


def unit_positions(rule: LocalRule, p: int) -> tuple[int, ...]:
    """Positions whose coefficient is not divisible by ``p``."""
    return tuple(i for i, c in rule.items() if c % p)


def random_rule(rng: np.random.Generator, m: int, radius: int) -> LocalRule:
    coeffs = rng.integers(0, m, size=2 * radius + 1).tolist()
    return LocalRule(m, -radius, tuple(coeffs))


def rules_of_radius(m: int, radius: int):
    """Every rule on positions ``[-radius, radius]`` (canonical forms may repeat)."""
    for coeffs in itertools.product(range(m), repeat=2 * radius + 1):
        yield LocalRule(m, -radius, coeffs)

