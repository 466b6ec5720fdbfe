import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from replete import (ArchRegion, Box, Disc, Interval, ToleranceError, minkowski_growth, preset,
                     surface_area, unit_ball, unit_cube)
from replete.growth import DEFAULT_TS

LINE_E = ArchRegion([Interval(-1, 1)])
LINE_D = ArchRegion([Interval(0, 1)])
SQUARE_E = ArchRegion([Interval(-1, 1)] * 2)
SQUARE_D = ArchRegion([Interval(0, 1)] * 2)
DISC_E = ArchRegion([Disc(1)])
CELL_D = ArchRegion([Box(0, 1, 0, 1)])


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=Fraction(1, 100), max_value=1, max_denominator=100))
def test_interval_growth_exact(t):
    g = minkowski_growth(LINE_E, LINE_D, t)
    assert g.exact == 2 * t and g.ci == 0
    g = minkowski_growth(SQUARE_E, SQUARE_D, t)
    assert g.exact == 8 * t + 4 * t * t


@pytest.mark.parametrize("t", DEFAULT_TS)
def test_rounded_square_closed_form(t):
    # disc + square of side 2t: 4t^2 + 8t + pi, minus pi
    g = minkowski_growth(DISC_E, CELL_D, t, samples=400_000)
    want = float(8 * t + 4 * t * t)
    assert abs(g.value - want) <= g.ci
    assert g.ci < 0.02 * want + 0.01


def test_disc_plus_disc_closed_form():
    t = Fraction(1, 4)
    g = minkowski_growth(DISC_E, ArchRegion([Disc(1)]), t, samples=400_000)
    assert abs(g.value - math.pi * ((1 + 2 * float(t)) ** 2 - 1)) <= g.ci


def test_box_plus_disc_closed_form():
    # Steiner formula for a rectangle: perimeter * rho + pi rho^2
    E = ArchRegion([Box(-1, 1, 0, 3)])
    rho = 0.5
    g = minkowski_growth(E, ArchRegion([Disc(1)]), Fraction(1, 4), samples=400_000)
    assert abs(g.value - (10 * rho + math.pi * rho**2)) <= g.ci


def test_mixed_places():
    E = ArchRegion([Interval(-1, 1), Disc(1)])
    D = ArchRegion([Interval(0, 1), Box(0, 1, 0, 1)])
    t = Fraction(1, 4)
    g = minkowski_growth(E, D, t, samples=400_000)
    want = 2.5 * (math.pi + 2 + 0.25) - 2 * math.pi
    assert abs(g.value - want) <= g.ci


def test_seeded_reproducible():
    a = minkowski_growth(DISC_E, CELL_D, Fraction(1, 8), samples=50_000, seed=7)
    b = minkowski_growth(DISC_E, CELL_D, Fraction(1, 8), samples=50_000, seed=7)
    c = minkowski_growth(DISC_E, CELL_D, Fraction(1, 8), samples=50_000, seed=8)
    assert a == b
    assert a.value != c.value


def test_growth_validation():
    with pytest.raises(ValueError):
        minkowski_growth(LINE_E, LINE_D, 0)
    with pytest.raises(ValueError):
        minkowski_growth(LINE_E, LINE_D, 2)
    with pytest.raises(ValueError):
        minkowski_growth(LINE_E, CELL_D, Fraction(1, 2))
    with pytest.raises(ToleranceError):
        minkowski_growth(DISC_E, CELL_D, Fraction(1, 2), samples=1000, tol=1e-6)
    with pytest.raises(ValueError):
        Interval(1, 1)
    with pytest.raises(ValueError):
        Disc(0)


def test_surface_examples():
    s = surface_area(LINE_E, LINE_D)
    assert s.exact == 2
    s = surface_area(SQUARE_E, SQUARE_D)
    assert s.exact == 8
    assert [q for _, q, _ in s.quotients] == [10, 9, 8.5, 8.25]
    s = surface_area(DISC_E, CELL_D)
    assert abs(s.slope - 8) <= s.ci
    assert s.ci <= 0.02 * 8


def test_quotients_nonincreasing():
    s = surface_area(DISC_E, CELL_D, samples=200_000)
    qs = [(q, c) for _, q, c in s.quotients]
    for (q1, c1), (q2, c2) in zip(qs, qs[1:]):
        assert q2 <= q1 + c1 + c2


def test_regions_for_fields():
    QI, Q2 = preset("Qi"), preset("Qsqrt:2")
    assert unit_ball(QI) == DISC_E
    assert unit_cube(Q2) == SQUARE_D
    assert unit_ball(Q2).volume() == 4
    assert unit_ball(QI).volume() == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        unit_ball(QI).check_field(Q2)
