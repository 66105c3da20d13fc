"""Where the mechanism cannot draw: shuttle-shuttle collision arcs and
channel-overrun arcs, and the resulting drawable fraction of the turn.

Shuttles are modeled as the axis-aligned bounding boxes of their tiles.
Collision uses the closed-overlap convention (touching counts), which is
conservative for a physical sliding mechanism. Rod-mount bricks that stick
out past the tile can be accounted for by inflating the footprint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

from .geometry import TWO_PI, AngleSet

if TYPE_CHECKING:
    from .trammel import TrammelConfig

# Default tile footprint: a 1x4 flat tile at the 8 mm stud pitch.
DEFAULT_SHUTTLE_LENGTH = 32.0
DEFAULT_SHUTTLE_WIDTH = 8.0

SCAN_GRID = 4096

CAUSE_COLLISION = "collision"
CAUSE_OVERRUN = "overrun"


@dataclass(frozen=True)
class ShuttleFootprint:
    """Sliding-block bounding box: length along its channel, width across."""

    length: float = DEFAULT_SHUTTLE_LENGTH
    width: float = DEFAULT_SHUTTLE_WIDTH

    def __post_init__(self) -> None:
        if self.length < 0.0 or self.width < 0.0:
            raise ValueError(
                f"shuttle footprint must be non-negative, got {self.length} x {self.width}"
            )


@dataclass(frozen=True)
class Rect:
    """Closed axis-aligned rectangle."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    @classmethod
    def from_center(cls, cx: float, cy: float, x_extent: float, y_extent: float) -> Rect:
        return cls(cx - x_extent / 2.0, cx + x_extent / 2.0,
                   cy - y_extent / 2.0, cy + y_extent / 2.0)

    def overlaps(self, other: Rect) -> bool:
        """Closed overlap: shared boundary points count."""
        return (
            self.x_min <= other.x_max
            and other.x_min <= self.x_max
            and self.y_min <= other.y_max
            and other.y_min <= self.y_max
        )


@dataclass(frozen=True)
class ForbiddenArc:
    """One forbidden arc with the reason it cannot be drawn.

    cause is "collision", "overrun", or "collision+overrun" when a merged
    arc contains both.
    """

    lo: float
    hi: float
    cause: str


@dataclass(frozen=True)
class ClearanceReport:
    forbidden: AngleSet
    drawable_fraction: float
    boundaries: tuple[ForbiddenArc, ...]

    def __post_init__(self) -> None:
        expected = 1.0 - self.forbidden.measure() / TWO_PI
        if abs(self.drawable_fraction - expected) > 1e-12:
            raise ValueError(
                f"drawable_fraction {self.drawable_fraction} inconsistent with "
                f"forbidden measure (expected {expected})"
            )


def shuttle_rects(cfg: TrammelConfig, theta: float) -> tuple[Rect, Rect]:
    """Bounding boxes of both shuttles at drive angle theta.

    The x-channel shuttle is centered at (l*cos, 0) with its long side along
    x; the y-channel shuttle at (0, l*sin) with its long side along y.
    """
    ell = cfg.pivot_separation
    length, width = cfg.shuttle.length, cfg.shuttle.width
    rect_c = Rect.from_center(ell * math.cos(theta), 0.0, length, width)
    rect_d = Rect.from_center(0.0, ell * math.sin(theta), width, length)
    return rect_c, rect_d


def collides(cfg: TrammelConfig, theta: float) -> bool:
    """True when the shuttle rectangles overlap or touch at angle theta."""
    rect_c, rect_d = shuttle_rects(cfg, theta)
    return rect_c.overlaps(rect_d)


def _channel_overrun(cfg: TrammelConfig, theta: float) -> bool:
    """True when either shuttle would slide past its channel end."""
    usable = cfg.channel_half_length - cfg.shuttle.length / 2.0
    ell = cfg.pivot_separation
    return abs(ell * math.cos(theta)) > usable or abs(ell * math.sin(theta)) > usable


def _refine_boundary(indicator: Callable[[float], bool],
                     t_out: float, t_in: float, tol: float) -> float:
    """Bisect an indicator flip between an outside and an inside angle down
    to an interval of width tol; returns the midpoint. The iteration cap
    only matters for tol below float resolution."""
    for _ in range(200):
        if abs(t_in - t_out) <= tol:
            break
        mid = 0.5 * (t_out + t_in)
        if mid == t_out or mid == t_in:
            break
        if indicator(mid):
            t_in = mid
        else:
            t_out = mid
    return 0.5 * (t_out + t_in)


def _scan_indicator(indicator: Callable[[float], bool], tol: float,
                    n_grid: int = SCAN_GRID) -> AngleSet:
    """Forbidden set of an angle indicator: grid scan plus bisection-refined
    boundaries. Regions narrower than the grid spacing (2*pi/n_grid) can be
    missed; the geometry here produces arcs far wider than that."""
    step = TWO_PI / n_grid
    flags = [indicator(k * step) for k in range(n_grid)]
    if all(flags):
        return AngleSet.full_circle()
    if not any(flags):
        return AngleSet.empty()

    arcs: list[tuple[float, float]] = []
    # Walk runs of True grid points, starting from a False point so that a
    # run wrapping past 0 is handled once.
    start = flags.index(False)
    k = start
    for _ in range(n_grid):
        k_next = (k + 1) % n_grid
        if not flags[k] and flags[k_next]:
            # entering a forbidden run: scan to its end
            run_end = k_next
            while flags[(run_end + 1) % n_grid]:
                run_end = (run_end + 1) % n_grid
            lo = _refine_boundary(indicator, k * step, k_next * step, tol)
            hi = _refine_boundary(indicator, (run_end + 1) * step, run_end * step, tol)
            if hi < lo:
                hi += TWO_PI  # run wrapped past 0; from_arcs re-splits it
            arcs.append((lo, hi))
        k = k_next
    return AngleSet.from_arcs(arcs)


def collision_arcs(cfg: TrammelConfig, tol: float = 1e-9) -> AngleSet:
    """Angles at which the shuttles collide, boundaries refined to tol."""
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    return _scan_indicator(lambda t: collides(cfg, t), tol)


def overrun_arcs(cfg: TrammelConfig, tol: float = 1e-9) -> AngleSet:
    """Angles at which a shuttle overruns its channel end."""
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if not math.isfinite(cfg.channel_half_length):
        return AngleSet.empty()
    return _scan_indicator(lambda t: _channel_overrun(cfg, t), tol)


def _arc_cause(arc: tuple[float, float], collision: AngleSet, overrun: AngleSet) -> str:
    piece = AngleSet.from_arcs([arc])
    causes = []
    if piece.intersection(collision).measure() > 0.0:
        causes.append(CAUSE_COLLISION)
    if piece.intersection(overrun).measure() > 0.0:
        causes.append(CAUSE_OVERRUN)
    if not causes:
        # degenerate (measure-zero) arc; attribute by midpoint membership
        mid = 0.5 * (arc[0] + arc[1])
        causes.append(CAUSE_COLLISION if collision.contains(mid) else CAUSE_OVERRUN)
    return "+".join(causes)


def forbidden_arcs(cfg: TrammelConfig, tol: float = 1e-9) -> ClearanceReport:
    """Full clearance report: forbidden angles from both causes, per-arc
    boundaries with cause tags, and the drawable fraction of the turn."""
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    collision = collision_arcs(cfg, tol)
    overrun = overrun_arcs(cfg, tol)
    forbidden = collision.union(overrun)
    boundaries = tuple(
        ForbiddenArc(lo, hi, _arc_cause((lo, hi), collision, overrun))
        for lo, hi in forbidden.arcs
    )
    return ClearanceReport(
        forbidden=forbidden,
        drawable_fraction=1.0 - forbidden.measure() / TWO_PI,
        boundaries=boundaries,
    )


def drawable_trace_domain(cfg: TrammelConfig, tol: float = 1e-9) -> AngleSet:
    """Angles at which the pen can draw: complement of the forbidden set."""
    return forbidden_arcs(cfg, tol).forbidden.complement()
