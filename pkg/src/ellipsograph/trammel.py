"""Closed-form kinematics of the trammel ellipsograph.

Two shuttles slide in perpendicular channels that cross at the origin; a
rigid rod joins them through pivots C (on the x channel) and D (on the y
channel) a fixed distance apart. The pen sits on the rod at a fixed offset
from D and traces an axis-aligned ellipse as the rod turns.

One parametrization covers both classic variants: pen beyond pivot C
(pen_offset > pivot_separation) and pen between the pivots
(pen_offset < pivot_separation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .clearance import ShuttleFootprint
from .geometry import Point2, normalize_angle

DesignVariant = Literal["pen_outside", "pen_between"]


@dataclass(frozen=True)
class TrammelConfig:
    """Mechanism parameters, all in millimeters.

    pivot_separation is the rod distance between the two pivots; pen_offset
    is the distance from the y-channel pivot D to the pen, measured along
    the rod toward the x-channel pivot C. pen_offset == pivot_separation
    would put the pen on pivot C and collapse the trace to a segment, so it
    is rejected. channel_half_length is the usable half-extent of each
    channel from the crossing; math.inf means unconstrained channels.
    """

    pivot_separation: float
    pen_offset: float
    shuttle: ShuttleFootprint = ShuttleFootprint()
    channel_half_length: float = math.inf

    def __post_init__(self) -> None:
        if not (self.pivot_separation > 0.0 and math.isfinite(self.pivot_separation)):
            raise ValueError(f"pivot_separation must be positive, got {self.pivot_separation}")
        if not (self.pen_offset > 0.0 and math.isfinite(self.pen_offset)):
            raise ValueError(f"pen_offset must be positive, got {self.pen_offset}")
        if self.pen_offset == self.pivot_separation:
            raise ValueError(
                "pen_offset equal to pivot_separation degenerates the trace to a segment"
            )
        if not self.channel_half_length > 0.0:
            raise ValueError(
                f"channel_half_length must be positive, got {self.channel_half_length}"
            )


@dataclass(frozen=True)
class RodState:
    """Rod pose at one drive angle: pivot C on the x channel, pivot D on the
    y channel, and the pen point P. C, D, P are collinear by construction."""

    theta: float
    pivot_x: Point2
    pivot_y: Point2
    pen: Point2


def semi_axes(cfg: TrammelConfig) -> tuple[float, float]:
    """Semi-axes (a_x, a_y) of the traced ellipse, centered at the crossing.

    a_x = pen_offset, a_y = |pivot_separation - pen_offset|. The pen at the
    rod midpoint (pen_offset == pivot_separation / 2) traces a circle.
    """
    return cfg.pen_offset, abs(cfg.pivot_separation - cfg.pen_offset)


def rod_state(cfg: TrammelConfig, theta: float) -> RodState:
    """Pose of the rod at drive angle theta (normalized into [0, 2*pi)).

    C = (l*cos, 0) and D = (0, l*sin) keep |C - D| = l for every angle;
    the pen lands at (s*cos, (l - s)*sin). For pen_offset > pivot_separation
    the pen y keeps the sign the formula gives; the traced point set is the
    same ellipse either way.
    """
    t = normalize_angle(theta)
    ell = cfg.pivot_separation
    s = cfg.pen_offset
    cos_t = math.cos(t)
    sin_t = math.sin(t)
    return RodState(
        theta=t,
        pivot_x=Point2(ell * cos_t, 0.0),
        pivot_y=Point2(0.0, ell * sin_t),
        pen=Point2(s * cos_t, (ell - s) * sin_t),
    )


def design_for_ellipse(
    a: float,
    b: float,
    variant: DesignVariant,
    shuttle: ShuttleFootprint = ShuttleFootprint(),
    channel_half_length: float = math.inf,
) -> TrammelConfig:
    """Inverse design: mechanism whose pen traces the ellipse with semi-axes
    {a, b}.

    pen_outside places the pen beyond pivot C (pivot_separation = |a - b|,
    compact rod, needs a != b); pen_between places it between the pivots
    (pivot_separation = a + b). Both satisfy semi_axes(result) == {a, b}
    as a set.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"semi-axes must be positive, got a={a}, b={b}")
    if variant == "pen_outside":
        if a == b:
            raise ValueError(
                "pen_outside cannot realize a circle: it would need pivot_separation 0"
            )
        ell, s = abs(a - b), max(a, b)
    elif variant == "pen_between":
        ell, s = a + b, a
    else:
        raise ValueError(f"unknown design variant: {variant!r}")
    return TrammelConfig(
        pivot_separation=ell,
        pen_offset=s,
        shuttle=shuttle,
        channel_half_length=channel_half_length,
    )


def required_channel_half_length(cfg: TrammelConfig) -> float:
    """Channel half-extent needed for a full rotation.

    Each pivot sweeps [-l, l] along its channel and carries a shuttle of
    cfg.shuttle.length, so the channel must reach l + length/2 each way.
    """
    return cfg.pivot_separation + cfg.shuttle.length / 2.0
