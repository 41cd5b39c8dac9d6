"""Piecewise closed-form directional entropy of the (T, shift) Z^2-action.

A profile is a list of pieces ``h(theta) = a*cos(theta) + b*sin(theta)`` with
``a``, ``b`` exact log-linear values.  Interior breakpoints are stored by their
cotangent, so for the closed formula every breakpoint is ``arccot`` of an
integer and ordering is integer comparison.  Inside ``(0, pi)`` the value is
``sin(theta) * (a*cot(theta) + b)``; the bracket is what exact checks compare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

import numpy as np

from .ca import LocalRule
from .entropy import LogLinearValue, prime_profiles
from .errors import LincaError, NotInvertibleError, ProfileError
from .invert import invertibility_profile

ZERO_LOG = LogLinearValue()

_NAMED = {Fraction(0): "pi/2", Fraction(1): "pi/4", Fraction(-1): "3pi/4"}


@total_ordering
@dataclass(frozen=True)
class Angle:
    """An angle in ``[0, pi]``: the endpoints, or ``arccot(cot)`` strictly inside.

    ``approximate`` marks a rational stand-in for an irrational root.
    """

    kind: str  # "zero" | "cot" | "pi"
    cot: Fraction | None = None
    approximate: bool = field(default=False, compare=False)

    @classmethod
    def zero(cls) -> Angle:
        return cls("zero")

    @classmethod
    def pi(cls) -> Angle:
        return cls("pi")

    @classmethod
    def from_cot(cls, c, approximate: bool = False) -> Angle:
        return cls("cot", Fraction(c), approximate)

    def _key(self):
        if self.kind == "zero":
            return (0, Fraction(0))
        if self.kind == "pi":
            return (2, Fraction(0))
        return (1, -self.cot)

    def __lt__(self, other: Angle):
        return self._key() < other._key()

    @property
    def radians(self) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "pi":
            return math.pi
        if self.cot == 0:
            return math.pi / 2
        return math.atan2(1.0, float(self.cot))

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "pi":
            return "pi"
        text = _NAMED.get(self.cot, f"arccot({self.cot})")
        return ("~" + text) if self.approximate else text

    def to_json(self) -> dict:
        if self.kind == "cot":
            out = {"kind": "cot", "cot": str(self.cot)}
            if self.approximate:
                out["approximate"] = True
            return out
        return {"kind": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> Angle:
        if data["kind"] == "cot":
            return cls.from_cot(Fraction(data["cot"]), data.get("approximate", False))
        return cls(data["kind"])


def interior_cot(lo: Angle, hi: Angle) -> Fraction:
    """A rational cotangent strictly between ``lo < hi``."""
    if lo.kind == "zero" and hi.kind == "pi":
        return Fraction(0)
    if lo.kind == "zero":
        return hi.cot + 1
    if hi.kind == "pi":
        return lo.cot - 1
    return (lo.cot + hi.cot) / 2


@dataclass(frozen=True)
class Piece:
    start: Angle
    end: Angle
    a: LogLinearValue
    b: LogLinearValue

    def bracket(self, angle: Angle) -> LogLinearValue:
        """Exact value at ``angle``: ``h`` itself at 0 and pi, ``h / sin`` inside."""
        if angle.kind == "zero":
            return self.a
        if angle.kind == "pi":
            return -self.a
        return self.a * angle.cot + self.b

    def value(self, theta: float) -> float:
        c, s = math.cos(theta), math.sin(theta)
        if theta == math.pi / 2:
            c = 0.0
        elif theta == math.pi:
            s = 0.0
        return float(self.a) * c + float(self.b) * s

    def same_form(self, other: Piece) -> bool:
        return self.a == other.a and self.b == other.b

    def to_json(self) -> dict:
        return {
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "a": self.a.to_json(),
            "b": self.b.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> Piece:
        return cls(
            Angle.from_json(data["start"]),
            Angle.from_json(data["end"]),
            LogLinearValue.from_json(data["a"]),
            LogLinearValue.from_json(data["b"]),
        )

    def describe(self) -> str:
        return f"[{self.start}, {self.end}]: ({self.a})*cos + ({self.b})*sin"


@dataclass(frozen=True)
class Discontinuity:
    at: Angle
    left: LogLinearValue
    right: LogLinearValue

    @property
    def jump(self) -> LogLinearValue:
        return self.right - self.left


@dataclass(frozen=True)
class PiecewiseProfile:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        ps = self.pieces
        if not ps:
            raise ProfileError("a profile needs at least one piece")
        if ps[0].start != Angle.zero() or ps[-1].end != Angle.pi():
            raise ProfileError("pieces must cover [0, pi]")
        for left, right in zip(ps, ps[1:]):
            if left.end != right.start:
                raise ProfileError(f"gap between {left.end} and {right.start}")
        for p in ps:
            if not p.start < p.end:
                raise ProfileError(f"empty piece [{p.start}, {p.end}]")

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __getitem__(self, i):
        return self.pieces[i]

    @property
    def breakpoints(self) -> tuple[Angle, ...]:
        return tuple(p.end for p in self.pieces[:-1])

    def piece_at(self, angle: Angle) -> Piece:
        """Piece containing ``angle``; at a breakpoint, the left one."""
        for p in self.pieces:
            if angle <= p.end:
                return p
        raise AssertionError("unreachable: profile ends at pi")

    def exact_value(self, angle: Angle) -> LogLinearValue:
        """``h`` at 0 and pi, ``h / sin`` at interior angles (left piece at breakpoints)."""
        return self.piece_at(angle).bracket(angle)

    def discontinuities(self) -> list[Discontinuity]:
        out = []
        for left, right in zip(self.pieces, self.pieces[1:]):
            lv, rv = left.bracket(left.end), right.bracket(right.start)
            if lv != rv:
                out.append(Discontinuity(left.end, lv, rv))
        return out

    def is_continuous(self) -> bool:
        return not self.discontinuities()

    def to_json(self) -> dict:
        return {"pieces": [p.to_json() for p in self.pieces]}

    @classmethod
    def from_json(cls, data: dict) -> PiecewiseProfile:
        return cls(tuple(Piece.from_json(p) for p in data["pieces"]))


def _merged(pieces: Iterable[Piece]) -> PiecewiseProfile:
    out: list[Piece] = []
    for p in pieces:
        if not p.start < p.end:
            continue
        if out and out[-1].same_form(p):
            out[-1] = Piece(out[-1].start, p.end, p.a, p.b)
        else:
            out.append(p)
    return PiecewiseProfile(tuple(out))


def per_prime_profile(p: int, k: int, L: int, R: int) -> PiecewiseProfile:
    if L > 0 or R < 0:
        raise ProfileError(f"need L <= 0 <= R, got L={L}, R={R}")
    unit = LogLinearValue.log(p, k)
    th_l, th_r = Angle.from_cot(-L), Angle.from_cot(-R)
    return _merged(
        [
            Piece(Angle.zero(), th_l, unit, unit * R),
            Piece(th_l, th_r, ZERO_LOG, unit * (R - L)),
            Piece(th_r, Angle.pi(), unit, unit * L),
        ]
    )


def add_profiles(profiles: Sequence[PiecewiseProfile]) -> PiecewiseProfile:
    """Pointwise sum, on the merged set of breakpoints."""
    cuts = sorted({bp for prof in profiles for bp in prof.breakpoints})
    edges = [Angle.zero(), *cuts, Angle.pi()]
    pieces = []
    for lo, hi in zip(edges, edges[1:]):
        a = b = ZERO_LOG
        for prof in profiles:
            piece = prof.piece_at(hi)
            a, b = a + piece.a, b + piece.b
        pieces.append(Piece(lo, hi, a, b))
    return _merged(pieces)


def directional_profile(rule: LocalRule) -> PiecewiseProfile:
    return add_profiles(
        [per_prime_profile(pr.p, pr.k, pr.L, pr.R) for pr in prime_profiles(rule)]
    )


def evaluate(profile: PiecewiseProfile, theta: float) -> float:
    if not 0.0 <= theta <= math.pi:
        raise LincaError(f"theta={theta} outside [0, pi]")
    for p in profile.pieces:
        if theta <= p.end.radians:
            return p.value(theta)
    return profile.pieces[-1].value(theta)


@dataclass(frozen=True)
class FastPath:
    """Single linear form ``a*cos + b*sin`` for invertible rules.

    It matches ``directional_profile`` on ``[0, valid_until]`` only; beyond
    that it is the unrestricted one-form extension.
    """

    a: LogLinearValue
    b: LogLinearValue
    valid_until: Angle

    def value(self, theta: float) -> float:
        return Piece(Angle.zero(), Angle.pi(), self.a, self.b).value(theta)

    def guaranteed(self, angle: Angle) -> bool:
        return angle <= self.valid_until

    def as_profile(self) -> PiecewiseProfile:
        return PiecewiseProfile((Piece(Angle.zero(), Angle.pi(), self.a, self.b),))


def invertible_fastpath(rule: LocalRule) -> FastPath:
    prof = invertibility_profile(rule)
    if not prof.invertible:
        raise NotInvertibleError(prof.explain(), prof)
    a = b = ZERO_LOG
    js = []
    for s in prof.statuses:
        unit = LogLinearValue.log(s.p, s.k)
        a, b = a + unit, b + unit * s.j
        js.append(s.j)
    if all(j == 0 for j in js):
        until = Angle.pi()
    elif all(j >= 0 for j in js):
        until = Angle.from_cot(0)
    else:
        until = Angle.zero()
    return FastPath(a, b, until)


def _split_at_root(piece: Piece) -> list[Piece]:
    a, b = piece.a, piece.b
    if not a:
        return [piece]
    q = b.ratio(a)
    if q is not None:
        root = Angle.from_cot(-q)
    else:
        s0 = piece.bracket(piece.start).sign()
        s1 = piece.bracket(piece.end).sign()
        if s0 * s1 >= 0:
            return [piece]
        c0 = Fraction(-float(b) / float(a)).limit_denominator(10**12)
        root = Angle.from_cot(c0, approximate=True)
    if not piece.start < root < piece.end:
        return [piece]
    return [
        Piece(piece.start, root, a, b),
        Piece(root, piece.end, a, b),
    ]


def abs_normalize(profile: PiecewiseProfile) -> PiecewiseProfile:
    """Pointwise ``|h|``; pieces are split where their form changes sign."""
    out = []
    for piece in profile.pieces:
        for sub in _split_at_root(piece):
            probe = Angle.from_cot(interior_cot(sub.start, sub.end))
            if sub.bracket(probe).sign() < 0:
                sub = Piece(sub.start, sub.end, -sub.a, -sub.b)
            out.append(sub)
    return _merged(out)


def shear(profile: PiecewiseProfile, s: int) -> PiecewiseProfile:
    """Re-express a profile for the rule shifted by ``s`` positions.

    Replacing T by T o shift^s maps the linear form ``a x + b y`` to
    ``a x + (b + s a) y`` and moves breakpoint ``arccot(c)`` to ``arccot(c - s)``.
    """

    def move(angle: Angle) -> Angle:
        if angle.kind != "cot":
            return angle
        return Angle.from_cot(angle.cot - s, angle.approximate)

    return PiecewiseProfile(
        tuple(Piece(move(p.start), move(p.end), p.a, p.b + p.a * s) for p in profile)
    )


def sample(profile: PiecewiseProfile, n: int) -> list[tuple[float, float]]:
    """``n`` evenly spaced angles plus every breakpoint, sorted and deduplicated."""
    if n < 2:
        raise LincaError(f"need at least 2 samples, got {n}")
    exact = [bp.radians for bp in profile.breakpoints]
    grid = [float(t) for t in np.linspace(0.0, math.pi, n)]
    grid[-1] = math.pi
    thetas = sorted(set(grid) | set(exact))
    kept: list[float] = []
    for t in thetas:
        if kept and t - kept[-1] < 1e-12:
            # keep the exact breakpoint over a grid point that nearly hits it
            if t in exact:
                kept[-1] = t
            continue
        kept.append(t)
    return [(t, evaluate(profile, t)) for t in kept]
