"""Brute-force checks that do not go through the closed formulas.

``block_count_estimate`` enumerates every initial segment of the dependency
cone of a window, so the block counts are exact and the only approximation is
the finite time horizon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fps
from .ca import CyclicConfiguration, LocalRule, apply, unit_positions
from .errors import BudgetExceededError, LincaError, NotInvertibleError
from .invert import inverse, invertibility_profile
from .modular import factorize

ENUMERATION_BUDGET = 2**24
_CHUNK = 2**16


@dataclass(frozen=True)
class BlockCountReport:
    width: int
    counts: tuple[int, ...]  # counts[t-1] = N(t)
    estimate: float
    segment_length: int

    @property
    def t_max(self) -> int:
        return len(self.counts)


def cone(rule: LocalRule, width: int, steps: int) -> tuple[int, int]:
    """Half-open range of initial cells that a ``width``-cell window sees over ``steps`` rows."""
    reach = steps - 1
    return min(0, rule.l * reach), width + max(0, rule.r * reach)


def block_count_estimate(
    rule: LocalRule, width: int, t_max: int, budget: int = ENUMERATION_BUDGET
) -> BlockCountReport:
    if width < 1 or t_max < 2:
        raise LincaError("need width >= 1 and t_max >= 2")
    m = rule.m
    lo, hi = cone(rule, width, t_max)
    length = hi - lo
    total = m**length
    if total > budget:
        raise BudgetExceededError(
            f"enumeration needs {m}^{length} = {total} segments (budget {budget})",
            required=total,
        )
    place = m ** np.arange(length, dtype=np.int64)
    code_place = m ** np.arange(width, dtype=np.int64)
    seen = [np.empty((0, t), dtype=np.int64) for t in range(1, t_max + 1)]
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        x = (idx[:, None] // place[None, :]) % m
        rows = np.empty((len(idx), t_max), dtype=np.int64)
        x_lo = lo
        for s in range(t_max):
            window = x[:, -x_lo : -x_lo + width]
            rows[:, s] = window @ code_place
            if s + 1 < t_max:
                x, x_lo = _step_segment(rule, x, x_lo)
        for t in range(1, t_max + 1):
            seen[t - 1] = np.unique(
                np.concatenate([seen[t - 1], np.unique(rows[:, :t], axis=0)]), axis=0
            )
    counts = tuple(len(s) for s in seen)
    estimate = math.log(counts[-1]) - math.log(counts[-2])
    return BlockCountReport(width, counts, estimate, length)


def _step_segment(rule: LocalRule, x: np.ndarray, x_lo: int):
    """Apply the rule to a finite segment starting at absolute cell ``x_lo``.

    The image is defined on the cells whose whole neighbourhood lies inside.
    """
    n = x.shape[1]
    out_len = n - (rule.r - rule.l)
    y = np.zeros((x.shape[0], out_len), dtype=np.int64)
    for i, c in rule.items():
        if c:
            y += c * x[:, i - rule.l : i - rule.l + out_len]
    return y % rule.m, x_lo - rule.l


def verify_inverse_roundtrip(rule: LocalRule, trials: int, n_cells: int, seed: int = 0) -> bool:
    prof = invertibility_profile(rule)
    if not prof.invertible:
        raise NotInvertibleError(prof.explain(), prof)
    g = inverse(rule)
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = CyclicConfiguration.random(rule.m, n_cells, rng)
        if apply(g, apply(rule, x)) != x:
            return False
    return True


@dataclass(frozen=True)
class ExtremeCheck:
    p: int
    expected: tuple[int, int]
    observed: tuple[int, int] | None  # None when the iterate vanishes mod p

    @property
    def ok(self) -> bool:
        return self.observed == self.expected


def impulse_iterate(rule: LocalRule, n: int) -> fps.LaurentSeries:
    """Series of the n-th iterate, read off by stepping a unit impulse n times.

    ``(T delta_0)_c`` is the coefficient at position ``-c``, so the iterate's
    series coefficient of ``X^c`` is cell ``c`` of ``T^n delta_0``.  The cycle
    is long enough that no wraparound occurs.
    """
    reach = n * max(abs(rule.l), abs(rule.r))
    size = 2 * reach + 1
    x = CyclicConfiguration(rule.m, tuple(1 if c == 0 else 0 for c in range(size)))
    for _ in range(n):
        x = apply(rule, x)
    terms = {}
    for c, v in enumerate(x.cells):
        if v:
            terms[c if c <= reach else c - size] = v
    return fps.LaurentSeries(rule.m, terms)


def iterate_extremes(rule: LocalRule, n: int) -> list[ExtremeCheck]:
    """Per prime: exponent support of the n-th iterate's series mod p vs ``n*(-R), n*(-L)``."""
    if n < 1:
        raise LincaError(f"need n >= 1, got {n}")
    series = impulse_iterate(rule, n)
    checks = []
    for p, _ in factorize(rule.m):
        units = unit_positions(rule, p)
        L, R = min([0, *units]), max([0, *units])
        reduced = fps.reduce_mod(series, p)
        observed = fps.support(reduced) if reduced else None
        checks.append(ExtremeCheck(p, (-n * R, -n * L), observed))
    return checks


def verify_iterate_extremes(rule: LocalRule, n: int) -> bool:
    return all(c.ok for c in iterate_extremes(rule, n))
