"""Planar geometry primitives: points, axis-aligned ellipses, foci, and
arc-set algebra on the circle of rod angles.

All lengths are millimeters stored as floats; angles are radians.
Every type here is an immutable value and every function is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

TWO_PI = 2.0 * math.pi

# LEGO grid pitch. Stud counts convert to mm exactly (x 8).
STUD = 8.0


def normalize_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi), half-open."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:  # fmod can round up to exactly 2*pi
        t = 0.0
    return t


@dataclass(frozen=True)
class Point2:
    """A point in the drawing plane, millimeters."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point components must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: Point2) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


ORIGIN = Point2(0.0, 0.0)


@dataclass(frozen=True)
class EllipseSpec:
    """Axis-aligned ellipse given by its semi-axes and center.

    The mechanism only ever traces axis-aligned ellipses, so there is no
    rotation field. A circle is the degenerate case semi_x == semi_y.
    """

    semi_x: float
    semi_y: float
    center: Point2 = ORIGIN

    def __post_init__(self) -> None:
        if not (self.semi_x > 0.0 and math.isfinite(self.semi_x)):
            raise ValueError(f"semi_x must be positive and finite, got {self.semi_x}")
        if not (self.semi_y > 0.0 and math.isfinite(self.semi_y)):
            raise ValueError(f"semi_y must be positive and finite, got {self.semi_y}")


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances shared across the toolkit."""

    residual_tol: float = 1e-12  # dimensionless, implicit-equation residual
    solver_tol: float = 1e-9  # mm
    angle_tol: float = 1e-6  # rad

    def __post_init__(self) -> None:
        for name in ("residual_tol", "solver_tol", "angle_tol"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")


def implicit_residual(e: EllipseSpec, p: Point2) -> float:
    """((x-cx)/a)^2 + ((y-cy)/b)^2 - 1; zero exactly when p lies on e."""
    u = (p.x - e.center.x) / e.semi_x
    v = (p.y - e.center.y) / e.semi_y
    return u * u + v * v - 1.0


def foci(e: EllipseSpec) -> tuple[Point2, Point2]:
    """Both foci of the ellipse, on the longer axis at +-c from the center.

    c = sqrt(|semi_x^2 - semi_y^2|). For a circle both foci coincide with
    the center, which keeps focal_sum total (2r) instead of erroring.
    """
    c = math.sqrt(abs(e.semi_x * e.semi_x - e.semi_y * e.semi_y))
    cx, cy = e.center.x, e.center.y
    if e.semi_x >= e.semi_y:
        return Point2(cx + c, cy), Point2(cx - c, cy)
    return Point2(cx, cy + c), Point2(cx, cy - c)


def focal_sum(e: EllipseSpec, p: Point2) -> float:
    """|p F1| + |p F2|; equals 2*max(semi_x, semi_y) for p on the ellipse."""
    f1, f2 = foci(e)
    return p.distance_to(f1) + p.distance_to(f2)


def point_at(e: EllipseSpec, theta: float) -> Point2:
    """Standard parametrization (semi_x*cos, semi_y*sin) offset by the center."""
    return Point2(
        e.center.x + e.semi_x * math.cos(theta),
        e.center.y + e.semi_y * math.sin(theta),
    )


def _normalize_arcs(pairs) -> tuple[tuple[float, float], ...]:
    """Normalize raw (lo, hi) arcs: wrap into [0, 2*pi), split wrap-around
    arcs at 0, drop zero-width arcs (no measure), merge overlapping or
    touching arcs, sort by lo."""
    split: list[tuple[float, float]] = []
    for lo, hi in pairs:
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"arc endpoints must be finite, got ({lo}, {hi})")
        if hi < lo:
            raise ValueError(f"arc must have hi >= lo, got ({lo}, {hi})")
        if hi == lo:
            continue
        if hi - lo >= TWO_PI:
            return ((0.0, TWO_PI),)
        start = normalize_angle(lo)
        end = start + (hi - lo)
        if end > TWO_PI:
            split.append((start, TWO_PI))
            split.append((0.0, end - TWO_PI))
        else:
            split.append((start, end))
    split.sort()
    merged: list[list[float]] = []
    for lo, hi in split:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    if len(merged) == 1 and merged[0][0] == 0.0 and merged[0][1] == TWO_PI:
        return ((0.0, TWO_PI),)
    return tuple((lo, hi) for lo, hi in merged)


@dataclass(frozen=True)
class AngleSet:
    """A union of disjoint closed arcs [lo, hi] on the circle of rod angles.

    Arcs are kept normalized in [0, 2*pi] (wrap-around arcs split at 0),
    sorted by lo, pairwise disjoint. Boundary angles count as contained;
    downstream collision analysis treats a touching configuration as
    forbidden, so the closed convention is the conservative one.

    Construct through empty(), full_circle(), or from_arcs(); the raw
    constructor expects already-normalized arcs and validates them.
    """

    arcs: tuple[tuple[float, float], ...] = field(default=())

    def __post_init__(self) -> None:
        prev_hi = None
        for lo, hi in self.arcs:
            if not (0.0 <= lo <= hi <= TWO_PI):
                raise ValueError(f"arc ({lo}, {hi}) not normalized into [0, 2*pi]")
            if prev_hi is not None and lo <= prev_hi:
                raise ValueError("arcs must be sorted and pairwise disjoint")
            prev_hi = hi

    @classmethod
    def empty(cls) -> AngleSet:
        return cls(())

    @classmethod
    def full_circle(cls) -> AngleSet:
        return cls(((0.0, TWO_PI),))

    @classmethod
    def from_arcs(cls, pairs) -> AngleSet:
        """Build from arbitrary (lo, hi) arcs; wrap-around and overlaps allowed."""
        return cls(_normalize_arcs(pairs))

    def measure(self) -> float:
        """Total arc length in radians, in [0, 2*pi]."""
        return sum(hi - lo for lo, hi in self.arcs)

    def is_empty(self) -> bool:
        return not self.arcs

    def complement(self) -> AngleSet:
        """Closure of the complementary set of angles."""
        if not self.arcs:
            return AngleSet.full_circle()
        gaps: list[tuple[float, float]] = []
        cursor = 0.0
        for lo, hi in self.arcs:
            if lo > cursor:
                gaps.append((cursor, lo))
            cursor = hi
        if cursor < TWO_PI:
            gaps.append((cursor, TWO_PI))
        # re-normalize: a degenerate arc in self leaves touching gaps
        return AngleSet.from_arcs(gaps)

    def contains(self, theta: float) -> bool:
        """Closed-boundary membership; theta is normalized first."""
        t = normalize_angle(theta)
        for lo, hi in self.arcs:
            if lo <= t <= hi or lo <= t + TWO_PI <= hi:
                return True
        return False

    def union(self, other: AngleSet) -> AngleSet:
        return AngleSet.from_arcs(self.arcs + other.arcs)

    def intersection(self, other: AngleSet) -> AngleSet:
        out: list[tuple[float, float]] = []
        for alo, ahi in self.arcs:
            for blo, bhi in other.arcs:
                lo, hi = max(alo, blo), min(ahi, bhi)
                if lo < hi:
                    out.append((lo, hi))
        return AngleSet.from_arcs(out)

    def is_subset_of(self, other: AngleSet, tol: float = 1e-9) -> bool:
        """True when every arc of self is covered by other, allowing tol slack
        at arc boundaries."""
        leftover = self.intersection(other.complement())
        return leftover.measure() <= 2.0 * tol * max(1, len(self.arcs) + len(other.arcs))

    def approx_equal(self, other: AngleSet, tol: float = 1e-6) -> bool:
        """Same arcs up to tol on every endpoint."""
        if len(self.arcs) != len(other.arcs):
            return False
        return all(
            abs(a_lo - b_lo) <= tol and abs(a_hi - b_hi) <= tol
            for (a_lo, a_hi), (b_lo, b_hi) in zip(self.arcs, other.arcs)
        )
