import math

import pytest
from hypothesis import given, strategies as st

from ellipsograph.clearance import ShuttleFootprint
from ellipsograph.geometry import TWO_PI, EllipseSpec, implicit_residual
from ellipsograph.trammel import (
    TrammelConfig,
    design_for_ellipse,
    required_channel_half_length,
    rod_state,
    semi_axes,
)


class TestConfigValidation:
    def test_rejects_pen_on_far_pivot(self):
        with pytest.raises(ValueError, match="segment"):
            TrammelConfig(pivot_separation=5.0, pen_offset=5.0)

    @pytest.mark.parametrize("ell,s", [(0.0, 5.0), (-1.0, 5.0), (5.0, 0.0), (5.0, -2.0)])
    def test_rejects_non_positive_lengths(self, ell, s):
        with pytest.raises(ValueError):
            TrammelConfig(pivot_separation=ell, pen_offset=s)


class TestSemiAxes:
    @pytest.mark.parametrize(
        "ell,s,expected",
        [
            (2.0, 5.0, (5.0, 3.0)),  # pen beyond pivot C
            (8.0, 5.0, (5.0, 3.0)),  # pen between pivots
            (4.0, 2.0, (2.0, 2.0)),  # pen at rod midpoint: circle
        ],
    )
    def test_examples(self, ell, s, expected):
        assert semi_axes(TrammelConfig(ell, s)) == expected


class TestRodState:
    def test_theta_zero(self):
        st_ = rod_state(TrammelConfig(2.0, 5.0), 0.0)
        assert (st_.pivot_x.x, st_.pivot_x.y) == (2.0, 0.0)
        assert (st_.pivot_y.x, st_.pivot_y.y) == (0.0, 0.0)
        assert (st_.pen.x, st_.pen.y) == (5.0, 0.0)

    def test_theta_quarter_turn(self):
        st_ = rod_state(TrammelConfig(2.0, 5.0), math.pi / 2)
        assert st_.pivot_x.x == pytest.approx(0.0, abs=1e-12)
        assert st_.pivot_y.y == pytest.approx(2.0, abs=1e-12)
        assert st_.pen.x == pytest.approx(0.0, abs=1e-12)
        assert st_.pen.y == pytest.approx(-3.0, abs=1e-12)

    def test_theta_eighth_turn(self):
        st_ = rod_state(TrammelConfig(2.0, 5.0), math.pi / 4)
        assert st_.pen.x == pytest.approx(3.535534, abs=1e-6)  # 5/sqrt(2)
        assert st_.pen.y == pytest.approx(-2.121320, abs=1e-6)  # -3/sqrt(2)

    @pytest.mark.parametrize("cfg", [TrammelConfig(2.0, 5.0), TrammelConfig(8.0, 5.0)])
    def test_pen_stays_on_ellipse(self, cfg):
        e = EllipseSpec(*semi_axes(cfg))
        worst = max(
            abs(implicit_residual(e, rod_state(cfg, TWO_PI * k / 10_000).pen))
            for k in range(10_000)
        )
        assert worst <= 1e-12

    @pytest.mark.parametrize("cfg", [TrammelConfig(2.0, 5.0), TrammelConfig(56.0, 21.0)])
    def test_rod_rigidity_and_collinearity(self, cfg):
        ell = cfg.pivot_separation
        for k in range(1000):
            st_ = rod_state(cfg, TWO_PI * k / 1000)
            c, d, p = st_.pivot_x, st_.pivot_y, st_.pen
            assert abs(c.distance_to(d) - ell) <= 1e-12 * ell
            cross = (c.x - d.x) * (p.y - d.y) - (c.y - d.y) * (p.x - d.x)
            assert abs(cross) <= 1e-9

    def test_channel_constraint(self):
        st_ = rod_state(TrammelConfig(40.0, 140.0), 1.234)
        assert st_.pivot_x.y == 0.0
        assert st_.pivot_y.x == 0.0

    def test_period(self):
        # fl(theta + 2*pi) rounds, so the recovered angle differs by <= a few
        # ulp; positions agree far below solver tolerance
        cfg = TrammelConfig(40.0, 140.0)
        for theta in [0.0, 0.1, 1.0, 2.5, 4.0, 6.0]:
            a = rod_state(cfg, theta)
            b = rod_state(cfg, theta + TWO_PI)
            assert a.pen.distance_to(b.pen) <= 1e-12
            assert a.pivot_x.distance_to(b.pivot_x) <= 1e-12
            assert a.pivot_y.distance_to(b.pivot_y) <= 1e-12

    def test_angle_normalized_half_open(self):
        assert rod_state(TrammelConfig(2.0, 5.0), TWO_PI).theta == 0.0
        assert rod_state(TrammelConfig(2.0, 5.0), -1.0).theta == pytest.approx(
            TWO_PI - 1.0
        )


class TestDesignForEllipse:
    def test_pen_outside(self):
        cfg = design_for_ellipse(5.0, 3.0, "pen_outside")
        assert (cfg.pivot_separation, cfg.pen_offset) == (2.0, 5.0)

    def test_pen_between(self):
        cfg = design_for_ellipse(5.0, 3.0, "pen_between")
        assert (cfg.pivot_separation, cfg.pen_offset) == (8.0, 5.0)

    def test_circle_pen_between(self):
        cfg = design_for_ellipse(3.0, 3.0, "pen_between")
        assert (cfg.pivot_separation, cfg.pen_offset) == (6.0, 3.0)
        assert semi_axes(cfg) == (3.0, 3.0)

    def test_circle_pen_outside_rejected(self):
        with pytest.raises(ValueError):
            design_for_ellipse(3.0, 3.0, "pen_outside")

    @pytest.mark.parametrize("a,b", [(0.0, 3.0), (5.0, -1.0)])
    def test_non_positive_axes_rejected(self, a, b):
        with pytest.raises(ValueError):
            design_for_ellipse(a, b, "pen_between")

    def test_unknown_variant_rejected(self):
        with pytest.raises(ValueError):
            design_for_ellipse(5.0, 3.0, "sideways")

    # Half-stud mm values keep every +- exact in binary floating point, so
    # the round trip is checked for exact equality, not approximately.
    half_studs = st.integers(min_value=1, max_value=500).map(lambda n: n * 4.0)

    @given(a=half_studs, b=half_studs)
    def test_round_trip_pen_between(self, a, b):
        assert set(semi_axes(design_for_ellipse(a, b, "pen_between"))) == {a, b}

    @given(a=half_studs, b=half_studs)
    def test_round_trip_pen_outside(self, a, b):
        if a == b:
            return
        assert set(semi_axes(design_for_ellipse(a, b, "pen_outside"))) == {a, b}


class TestRequiredChannelHalfLength:
    @pytest.mark.parametrize(
        "ell,length,expected",
        [(56.0, 32.0, 72.0), (0.001, 32.0, 16.001), (24.0, 0.0, 24.0)],
    )
    def test_examples(self, ell, length, expected):
        cfg = TrammelConfig(ell, ell + 1.0, shuttle=ShuttleFootprint(length, 8.0))
        assert required_channel_half_length(cfg) == expected
