"""Sound interval arithmetic with outward rounding.

Every value produced by this module is a closed interval [lo, hi] of
floats that is guaranteed to contain the exact real result.  Rounding
is realized portably: each endpoint is computed in round-to-nearest
and then widened outward by one ulp (two ulps for libm transcendental
functions, whose results are faithful but not correctly rounded).
This is slightly wider than directed rounding but sound on any IEEE-754
platform, with no dependence on FPU mode switching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Interval",
    "DomainError",
    "VerifiedConstant",
    "arith",
    "elementary",
    "constants",
    "sqrt",
    "sqr",
    "atan",
    "acos",
    "asin",
    "arccot",
    "cos",
    "sin",
]

_next = math.nextafter
_INF = math.inf


class DomainError(ValueError):
    """Raised when an operation is applied outside its real domain."""


def _down(x: float) -> float:
    return _next(x, -_INF)


def _up(x: float) -> float:
    return _next(x, _INF)


def _down2(x: float) -> float:
    return _next(_next(x, -_INF), -_INF)


def _up2(x: float) -> float:
    return _next(_next(x, _INF), _INF)


class Interval:
    """Closed interval with finite float endpoints, lo <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        if hi is None:
            hi = lo
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"non-finite interval endpoints [{lo}, {hi}]")
        if lo > hi:
            raise DomainError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # -- constructors ---------------------------------------------------

    @staticmethod
    def point(v: float) -> "Interval":
        return Interval(v, v)

    @staticmethod
    def literal(text: str) -> "Interval":
        """Tightest float enclosure of a decimal literal such as "2.51".

        The nearest float to the decimal is found with ``float()``; exact
        comparison through Fraction decides which side needs widening.
        """
        f = float(text)
        exact = Fraction(text)
        ff = Fraction(f)
        if ff == exact:
            return Interval(f, f)
        if ff < exact:
            return Interval(f, _up(f))
        return Interval(_down(f), f)

    @staticmethod
    def ratio(p: int, q: int) -> "Interval":
        """Enclosure of the exact rational p/q."""
        if q == 0:
            raise DomainError("rational with zero denominator")
        f = p / q
        ff = Fraction(f)
        exact = Fraction(p, q)
        if ff == exact:
            return Interval(f, f)
        if ff < exact:
            return Interval(f, _up(f))
        return Interval(_down(f), f)

    @staticmethod
    def hull(a: "Interval", b: "Interval") -> "Interval":
        return Interval(min(a.lo, b.lo), max(a.hi, b.hi))

    # -- predicates / accessors -----------------------------------------

    def __contains__(self, v: float) -> bool:
        return self.lo <= v <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise DomainError("empty intersection")
        return Interval(lo, hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        return min(max(m, self.lo), self.hi)

    @property
    def mag(self) -> float:
        """Largest absolute value over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def __repr__(self) -> str:
        return f"[{self.lo!r}, {self.hi!r}]"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> "Interval":
        r = Interval.__new__(Interval)
        r.lo = -self.hi
        r.hi = -self.lo
        return r

    def __add__(self, other) -> "Interval":
        if isinstance(other, Interval):
            olo, ohi = other.lo, other.hi
        else:
            olo = ohi = other
        r = Interval.__new__(Interval)
        r.lo = _next(self.lo + olo, -_INF)
        r.hi = _next(self.hi + ohi, _INF)
        return r

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        if isinstance(other, Interval):
            olo, ohi = other.lo, other.hi
        else:
            olo = ohi = other
        r = Interval.__new__(Interval)
        r.lo = _next(self.lo - ohi, -_INF)
        r.hi = _next(self.hi - olo, _INF)
        return r

    def __rsub__(self, other) -> "Interval":
        r = Interval.__new__(Interval)
        r.lo = _next(other - self.hi, -_INF)
        r.hi = _next(other - self.lo, _INF)
        return r

    def __mul__(self, other) -> "Interval":
        slo, shi = self.lo, self.hi
        if isinstance(other, Interval):
            olo, ohi = other.lo, other.hi
            p1 = slo * olo
            p2 = slo * ohi
            p3 = shi * olo
            p4 = shi * ohi
            lo = min(p1, p2, p3, p4)
            hi = max(p1, p2, p3, p4)
        elif other >= 0:
            lo = slo * other
            hi = shi * other
        else:
            lo = shi * other
            hi = slo * other
        r = Interval.__new__(Interval)
        r.lo = _next(lo, -_INF)
        r.hi = _next(hi, _INF)
        return r

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        if not isinstance(other, Interval):
            other = Interval(other, other)
        if other.lo <= 0.0 <= other.hi:
            raise DomainError(f"division by interval containing zero: {other}")
        p1 = self.lo / other.lo
        p2 = self.lo / other.hi
        p3 = self.hi / other.lo
        p4 = self.hi / other.hi
        r = Interval.__new__(Interval)
        r.lo = _next(min(p1, p2, p3, p4), -_INF)
        r.hi = _next(max(p1, p2, p3, p4), _INF)
        return r

    def __rtruediv__(self, other) -> "Interval":
        return Interval(other, other) / self


def _mk(lo: float, hi: float) -> Interval:
    r = Interval.__new__(Interval)
    r.lo = lo
    r.hi = hi
    return r


# -- elementary functions ------------------------------------------------


def sqr(a: Interval) -> Interval:
    """Tight square: [0, max^2] when the interval straddles zero."""
    lo, hi = a.lo, a.hi
    if lo >= 0.0:
        return _mk(_down(lo * lo), _up(hi * hi))
    if hi <= 0.0:
        return _mk(_down(hi * hi), _up(lo * lo))
    m = max(-lo, hi)
    return _mk(0.0, _up(m * m))


def sqrt(a: Interval) -> Interval:
    if a.lo < 0.0:
        raise DomainError(f"sqrt of interval with negative endpoint {a.lo}")
    lo = _down(math.sqrt(a.lo))
    if lo < 0.0:
        lo = 0.0
    return _mk(lo, _up(math.sqrt(a.hi)))


def atan(a: Interval) -> Interval:
    return _mk(_down2(math.atan(a.lo)), _up2(math.atan(a.hi)))


def asin(a: Interval) -> Interval:
    lo, hi = a.lo, a.hi
    if hi < -1.0 or lo > 1.0:
        raise DomainError(f"asin of {a} outside [-1, 1]")
    rlo = -_PI_HALF_HI if lo < -1.0 else _down2(math.asin(lo))
    rhi = _PI_HALF_HI if hi > 1.0 else _up2(math.asin(hi))
    return _mk(rlo, rhi)


def acos(a: Interval) -> Interval:
    lo, hi = a.lo, a.hi
    if hi < -1.0 or lo > 1.0:
        raise DomainError(f"acos of {a} outside [-1, 1]")
    rlo = 0.0 if hi > 1.0 else _down2(math.acos(hi))
    rhi = _PI_HI if lo < -1.0 else _up2(math.acos(lo))
    if rlo < 0.0:
        rlo = 0.0
    return _mk(rlo, rhi)


def arccot(a: Interval) -> Interval:
    """Branch with range [0, pi]: arccot(x) = pi/2 - arctan(x)."""
    t = atan(a)
    return _mk(_down(_PI_HALF_LO - t.hi), _up(_PI_HALF_HI - t.lo))


def _trig_extrema(a: Interval, phase: float) -> tuple[bool, bool]:
    """Whether cos(x - phase*pi/2) attains +1 / -1 on the interval a.

    Conservative: may report an extremum that is just outside, never
    misses one that is inside.  phase=0 for cos, phase=1 for sin.
    """
    # extrema of cos at k*pi, of sin at pi/2 + k*pi
    has_max = False
    has_min = False
    k_lo = math.floor(a.lo / _PI_LO) - 2
    k_hi = math.ceil(a.hi / _PI_LO) + 2
    for k in range(k_lo, k_hi + 1):
        c = k + phase * 0.5
        # location interval of the extremum c*pi
        if c >= 0:
            loc_lo, loc_hi = _down(c * _PI_LO), _up(c * _PI_HI)
        else:
            loc_lo, loc_hi = _down(c * _PI_HI), _up(c * _PI_LO)
        if loc_hi < a.lo or loc_lo > a.hi:
            continue
        if k % 2 == 0:
            has_max = True
        else:
            has_min = True
    return has_max, has_min


def cos(a: Interval) -> Interval:
    if a.width >= _TWO_PI_HI:
        return _mk(-1.0, 1.0)
    has_max, has_min = _trig_extrema(a, 0.0)
    c1, c2 = math.cos(a.lo), math.cos(a.hi)
    lo = -1.0 if has_min else max(-1.0, _down2(min(c1, c2)))
    hi = 1.0 if has_max else min(1.0, _up2(max(c1, c2)))
    return _mk(lo, hi)


def sin(a: Interval) -> Interval:
    if a.width >= _TWO_PI_HI:
        return _mk(-1.0, 1.0)
    has_max, has_min = _trig_extrema(a, 1.0)
    s1, s2 = math.sin(a.lo), math.sin(a.hi)
    lo = -1.0 if has_min else max(-1.0, _down2(min(s1, s2)))
    hi = 1.0 if has_max else min(1.0, _up2(max(s1, s2)))
    return _mk(lo, hi)


# math.pi is the correctly rounded double, so one ulp outward encloses pi.
_PI_LO = _down(math.pi)
_PI_HI = _up(math.pi)
_PI_HALF_LO = _down(math.pi / 2)
_PI_HALF_HI = _up(math.pi / 2)
_TWO_PI_HI = _up(2 * math.pi)

PI = _mk(_PI_LO, _PI_HI)
TWO_PI = PI * 2
PI_HALF = _mk(_PI_HALF_LO, _PI_HALF_HI)


# -- spec-level operation wrappers ----------------------------------------

_ARITH_OPS = {
    "add": Interval.__add__,
    "sub": Interval.__sub__,
    "mul": Interval.__mul__,
    "div": Interval.__truediv__,
}

_ELEMENTARY = {
    "sqrt": sqrt,
    "arctan": atan,
    "arccos": acos,
    "arccot": arccot,
    "arcsin": asin,
    "cos": cos,
    "sin": sin,
}


def arith(a: Interval, b: Interval, op: str) -> Interval:
    """Dispatch one of add/sub/mul/div with sound outward rounding."""
    try:
        f = _ARITH_OPS[op]
    except KeyError:
        raise ValueError(f"unknown arithmetic op {op!r}") from None
    return f(a, b)


def elementary(a: Interval, f: str) -> Interval:
    """Dispatch a sound enclosure of an elementary function over a."""
    try:
        g = _ELEMENTARY[f]
    except KeyError:
        raise ValueError(f"unknown elementary function {f!r}") from None
    return g(a)


# -- verified constants ----------------------------------------------------


@dataclass(frozen=True)
class VerifiedConstant:
    name: str
    value: Interval


def _build_constants() -> dict[str, VerifiedConstant]:
    sqrt2 = sqrt(Interval(2.0, 2.0))
    sqrt3 = sqrt(Interval(3.0, 3.0))
    acos_inv_sqrt3 = acos(1 / sqrt3)
    # density of the regular octahedron with edge 2
    delta_oct = (-3 * PI + 12 * acos_inv_sqrt3) / (2 * sqrt2)
    # compression of the regular tetrahedron with edge 2, the scoring unit
    pt = 11 * PI / 3 - 12 * acos_inv_sqrt3
    c = sqr(Interval.literal("2.51"))  # 2.51^2
    # extreme dihedral angles of quasi-regular tetrahedra; see the dihedral
    # formula specialized at S(2,2,2.51,2,2,2.51) and S(2.51,2,2,2.51,2,2)
    dih_min = acos(c / (16 - c))
    dih_max = acos(Interval.ratio(-29003, 96999))
    theta0 = 2 * asin(Interval.literal("2.51") / 4)
    values = {
        "pi": PI,
        "sqrt2": sqrt2,
        "delta_oct": delta_oct,
        "pt": pt,
        "dih_min": dih_min,
        "dih_max": dih_max,
        "theta0": theta0,
    }
    return {k: VerifiedConstant(k, v) for k, v in values.items()}


_CONSTANTS: dict[str, VerifiedConstant] | None = None


def constants() -> dict[str, VerifiedConstant]:
    """Verified enclosures of the constants used throughout the library."""
    global _CONSTANTS
    if _CONSTANTS is None:
        _CONSTANTS = _build_constants()
    return _CONSTANTS


def const(name: str) -> Interval:
    return constants()[name].value


# frequently used values, bound once
DELTA_OCT = None
PT = None


def _bind_module_constants() -> None:
    global DELTA_OCT, PT
    DELTA_OCT = const("delta_oct")
    PT = const("pt")


_bind_module_constants()
