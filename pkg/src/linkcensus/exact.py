"""Exact rational vectors and sign predicates.

Coordinates are Python rationals: ``int`` when integral, otherwise a
normalized :class:`fractions.Fraction`.  Nothing in this module uses
floating point, so every degenerate configuration is detected exactly.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence


class DegenerateInput(ValueError):
    """A predicate needed a strict sign but got zero."""


def as_rational(value) -> Rational:
    """Convert ``value`` to an exact rational, preferring ``int``.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are refused: they would smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            num_i, den_i = int(num), int(den)
            if den_i == 0:
                raise ZeroDivisionError(f"zero denominator in {value!r}")
            q = Fraction(num_i, den_i)
        else:
            q = Fraction(int(text))
        return q.numerator if q.denominator == 1 else q
    if isinstance(value, Rational):
        return as_rational(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def format_rational(value: Rational) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` for integers."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    @classmethod
    def of(cls, value) -> "Sign":
        if value > 0:
            return cls.POSITIVE
        if value < 0:
            return cls.NEGATIVE
        return cls.ZERO


class Vec3Q(NamedTuple):
    x: Rational
    y: Rational
    z: Rational

    @classmethod
    def of(cls, x, y, z) -> "Vec3Q":
        return cls(as_rational(x), as_rational(y), as_rational(z))

    @classmethod
    def parse(cls, triple: Sequence) -> "Vec3Q":
        if len(triple) != 3:
            raise ValueError(f"expected 3 coordinates, got {len(triple)}")
        return cls.of(*triple)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self]

    def __add__(self, other: "Vec3Q") -> "Vec3Q":  # type: ignore[override]
        return Vec3Q(_norm(self[0] + other[0]), _norm(self[1] + other[1]), _norm(self[2] + other[2]))

    def __sub__(self, other: "Vec3Q") -> "Vec3Q":
        return Vec3Q(_norm(self[0] - other[0]), _norm(self[1] - other[1]), _norm(self[2] - other[2]))

    def __neg__(self) -> "Vec3Q":
        return Vec3Q(-self[0], -self[1], -self[2])

    def scale(self, k) -> "Vec3Q":
        return Vec3Q(_norm(self[0] * k), _norm(self[1] * k), _norm(self[2] * k))

    def dot(self, other: "Vec3Q"):
        return _norm(self[0] * other[0] + self[1] * other[1] + self[2] * other[2])

    def cross(self, other: "Vec3Q") -> "Vec3Q":
        ax, ay, az = self
        bx, by, bz = other
        return Vec3Q(_norm(ay * bz - az * by), _norm(az * bx - ax * bz), _norm(ax * by - ay * bx))

    def is_zero(self) -> bool:
        return self[0] == 0 and self[1] == 0 and self[2] == 0


ORIGIN = Vec3Q(0, 0, 0)


def _norm(value):
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return value


def det3(u, v, w):
    """Determinant of the 3x3 matrix with rows ``u``, ``v``, ``w``."""
    return (
        u[0] * (v[1] * w[2] - v[2] * w[1])
        - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
    )


def orient3d_value(a, b, c, d):
    """det[b-a, c-a, d-a] as an exact number."""
    ax, ay, az = a
    bx, by, bz = b[0] - ax, b[1] - ay, b[2] - az
    cx, cy, cz = c[0] - ax, c[1] - ay, c[2] - az
    dx, dy, dz = d[0] - ax, d[1] - ay, d[2] - az
    return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx)


def orient3d(a, b, c, d) -> Sign:
    """Sign of det[b-a, c-a, d-a]; ZERO iff the four points are coplanar."""
    return Sign.of(orient3d_value(a, b, c, d))


def _strict(a, b, c, d) -> Sign:
    s = orient3d(a, b, c, d)
    if s is Sign.ZERO:
        raise DegenerateInput(f"coplanar points {a}, {b}, {c}, {d}")
    return s


def segment_pierces_triangle(p, q, a, b, c) -> Sign | None:
    """Does the open segment ``pq`` cross the open triangle ``abc``?

    Returns ``None`` when it does not, otherwise the side of the
    triangle's plane that ``p`` lies on (``orient3d(a, b, c, p)``).
    Raises :class:`DegenerateInput` if any sign consulted is zero.
    """
    sp = _strict(a, b, c, p)
    sq = _strict(a, b, c, q)
    if sp == sq:
        return None
    s1 = _strict(p, q, a, b)
    s2 = _strict(p, q, b, c)
    if s1 != s2:
        return None
    s3 = _strict(p, q, c, a)
    if s3 != s1:
        return None
    return sp


def point_in_tetrahedron(p, a, b, c, d) -> bool:
    """Is ``p`` strictly inside the tetrahedron ``abcd``?

    Each face must see ``p`` on the same side as the opposite vertex.
    """
    faces = ((a, b, c, d), (a, b, d, c), (a, c, d, b), (b, c, d, a))
    for f0, f1, f2, opposite in faces:
        if _strict(f0, f1, f2, p) != _strict(f0, f1, f2, opposite):
            return False
    return True


@dataclass(frozen=True)
class ValidationReport:
    violations: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def general_position(points: Sequence) -> ValidationReport:
    """List every 4-subset (as indices into ``points``) that is coplanar."""
    bad = [
        quad
        for quad in itertools.combinations(range(len(points)), 4)
        if orient3d_value(*(points[i] for i in quad)) == 0
    ]
    return ValidationReport(bad)


def orient2d_value(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def segments_cross_2d(p0, p1, q0, q1) -> bool:
    """Proper crossing of two planar segments; touching or collinear is not a crossing."""
    d1 = orient2d_value(p0, p1, q0)
    d2 = orient2d_value(p0, p1, q1)
    if d1 == 0 or d2 == 0 or (d1 > 0) == (d2 > 0):
        return False
    d3 = orient2d_value(q0, q1, p0)
    d4 = orient2d_value(q0, q1, p1)
    if d3 == 0 or d4 == 0:
        return False
    return (d3 > 0) != (d4 > 0)
