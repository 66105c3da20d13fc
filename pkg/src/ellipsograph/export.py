"""Drawings and data from the mechanism: trace sampling over the drawable
arcs, page-fit checks, and deterministic SVG / CSV documents.

Serialization uses fixed-precision formatting (3 decimals in SVG, 9 in
CSV), so identical inputs always produce byte-identical documents and the
outputs are safe to pin as golden files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import AngleSet, EllipseSpec, Point2
from .trammel import TrammelConfig, rod_state

A4_WIDTH = 210.0
A4_HEIGHT = 297.0

SVG_DECIMALS = 3
CSV_DECIMALS = 9
CSV_HEADER = "arc,theta_rad,x_mm,y_mm"

# One sampled drawable arc: (theta, pen point) in strictly increasing theta.
Polyline = tuple[tuple[float, Point2], ...]


@dataclass(frozen=True)
class PageSpec:
    """Drawing page in millimeters with a uniform margin."""

    width: float
    height: float
    margin: float = 0.0

    def __post_init__(self) -> None:
        if not (self.width > 0.0 and self.height > 0.0):
            raise ValueError(f"page must have positive size, got {self.width} x {self.height}")
        if self.margin < 0.0:
            raise ValueError(f"margin must be non-negative, got {self.margin}")
        if self.margin >= min(self.width, self.height) / 2.0:
            raise ValueError("margin leaves no drawable area")

    @classmethod
    def a4(cls, margin: float = 0.0, landscape: bool = False) -> PageSpec:
        """ISO 216 A4, portrait by default."""
        if landscape:
            return cls(A4_HEIGHT, A4_WIDTH, margin)
        return cls(A4_WIDTH, A4_HEIGHT, margin)


class OutOfPage(ValueError):
    """A trace point landed outside the page margin box."""

    def __init__(self, message: str, theta: float):
        super().__init__(message)
        self.theta = theta


@dataclass(frozen=True)
class Trace:
    """Sampled pen path: one polyline per drawable arc."""

    polylines: tuple[Polyline, ...]
    max_chord: float

    def __post_init__(self) -> None:
        if not self.max_chord > 0.0:
            raise ValueError(f"max_chord must be positive, got {self.max_chord}")
        for line in self.polylines:
            for (t0, p0), (t1, p1) in zip(line, line[1:]):
                if t1 <= t0:
                    raise ValueError("polyline angles must be strictly increasing")
                if p0.distance_to(p1) > self.max_chord:
                    raise ValueError("consecutive trace points exceed max_chord")

    def point_count(self) -> int:
        return sum(len(line) for line in self.polylines)


def _pen_speed(cfg: TrammelConfig, theta: float) -> float:
    # |dP/dtheta| for P = (s*cos, (l-s)*sin); bounded below by min(s, |l-s|) > 0
    s = cfg.pen_offset
    r = cfg.pivot_separation - cfg.pen_offset
    return math.hypot(s * math.sin(theta), r * math.cos(theta))


def sample_trace(cfg: TrammelConfig, domain: AngleSet, max_chord: float) -> Trace:
    """Sample the pen over every arc of the domain.

    Steps adapt to the local pen speed so flat stretches of a large ellipse
    are not oversampled; each proposed step is then verified and halved
    until the realized chord is within max_chord. Arc endpoints are included
    exactly. An empty domain gives an empty trace.
    """
    if not max_chord > 0.0:
        raise ValueError(f"max_chord must be positive, got {max_chord}")
    polylines: list[Polyline] = []
    for lo, hi in domain.arcs:
        samples: list[tuple[float, Point2]] = [(lo, rod_state(cfg, lo).pen)]
        theta = lo
        while theta < hi:
            step = 0.9 * max_chord / _pen_speed(cfg, theta)
            theta_next = min(theta + step, hi)
            pen = rod_state(cfg, theta_next).pen
            while samples[-1][1].distance_to(pen) > max_chord:
                theta_next = theta + 0.5 * (theta_next - theta)
                if theta_next <= theta:
                    raise ValueError(
                        f"max_chord {max_chord} below angle resolution near theta={theta}"
                    )
                pen = rod_state(cfg, theta_next).pen
            if theta_next <= theta:  # step underflowed float spacing
                raise ValueError(
                    f"max_chord {max_chord} below angle resolution near theta={theta}"
                )
            samples.append((theta_next, pen))
            theta = theta_next
        polylines.append(tuple(samples))
    return Trace(polylines=tuple(polylines), max_chord=max_chord)


def fits_page(e: EllipseSpec, page: PageSpec) -> bool:
    """True when the ellipse bounding box fits inside the margin box in
    either orientation (rotating onto a landscape page is allowed)."""
    box_w, box_h = 2.0 * e.semi_x, 2.0 * e.semi_y
    inner_w = page.width - 2.0 * page.margin
    inner_h = page.height - 2.0 * page.margin
    return (box_w <= inner_w and box_h <= inner_h) or (
        box_w <= inner_h and box_h <= inner_w
    )


def _fmt(value: float, decimals: int) -> str:
    text = f"{value:.{decimals}f}"
    # avoid "-0.000" so equal inputs can never format asymmetrically
    if text == "-0." + "0" * decimals:
        return text[1:]
    return text


def _page_coords(p: Point2, page: PageSpec) -> tuple[float, float]:
    # trace centered on the page, y flipped to the page-down convention
    return page.width / 2.0 + p.x, page.height / 2.0 - p.y


def to_svg(trace: Trace, page: PageSpec) -> str:
    """Standalone SVG of the trace, page-centered.

    Emits only svg and polyline elements, one polyline per arc, coordinates
    in mm at 3 decimals. Raises OutOfPage with the first offending angle if
    any point falls outside the margin box.
    """
    lo_x, hi_x = page.margin, page.width - page.margin
    lo_y, hi_y = page.margin, page.height - page.margin
    body: list[str] = []
    for line in trace.polylines:
        coords: list[str] = []
        for theta, p in line:
            x, y = _page_coords(p, page)
            if not (lo_x <= x <= hi_x and lo_y <= y <= hi_y):
                raise OutOfPage(
                    f"trace point at theta={theta} lands at ({x:.3f}, {y:.3f}) mm, "
                    f"outside the {page.margin} mm margin box",
                    theta=theta,
                )
            coords.append(f"{_fmt(x, SVG_DECIMALS)},{_fmt(y, SVG_DECIMALS)}")
        body.append(
            '  <polyline fill="none" stroke="black" stroke-width="0.5" points="'
            + " ".join(coords)
            + '"/>\n'
        )
    w = f"{page.width:g}"
    h = f"{page.height:g}"
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}mm" height="{h}mm" '
        f'viewBox="0 0 {w} {h}">\n' + "".join(body) + "</svg>\n"
    )


def to_csv(trace: Trace) -> str:
    """CSV of the trace: arc index, drive angle, pen coordinates.

    Rows follow traversal order. Values carry 9 decimal places so a
    parse-back reproduces coordinates to well under 1e-8 mm.
    """
    rows = [CSV_HEADER]
    for arc_index, line in enumerate(trace.polylines):
        for theta, p in line:
            rows.append(
                f"{arc_index},{_fmt(theta, CSV_DECIMALS)},"
                f"{_fmt(p.x, CSV_DECIMALS)},{_fmt(p.y, CSV_DECIMALS)}"
            )
    return "\n".join(rows) + "\n"
