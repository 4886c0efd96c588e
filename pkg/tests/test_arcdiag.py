import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import arcs, embedded_arcs

from fwcalc.arcdiag import (
    LEFT,
    RIGHT,
    ArcError,
    DiagramArc,
    MarkedSphere,
    TwistCurve,
    band_sums,
    crossing_table,
    dehn_twist,
    geometric_intersection,
    minimal_position,
    rotate_arc,
    self_intersection,
    standard_arcs,
)
from fwcalc.oracle import brute_force_intersection
from fwcalc.system import standard_system


def test_disjoint_hemispheres_do_not_cross():
    s = MarkedSphere(4)
    assert geometric_intersection(s.chord(0, 1, "U"), s.chord(2, 3, "D")) == 0


def test_bigon_cancels_in_minimal_position():
    a = DiagramArc(5, 0, 2, "U")
    b = DiagramArc(5, 3, 4, "U", (2, 2))
    assert brute_force_intersection(a, b) == 0
    assert geometric_intersection(a, minimal_position(b)) == 0


def test_standard_arcs_are_embedded():
    for n in (1, 2, 3):
        arcs_ = list(standard_arcs(standard_system([n])).values())
        assert crossing_table(arcs_) == {}


def test_parallel_arcs_do_not_cross():
    a = DiagramArc(5, 1, 3, "D", (2,))
    assert geometric_intersection(a, a) == 0


def test_linked_chords_cross_once():
    s = MarkedSphere(4)
    assert geometric_intersection(s.chord(0, 2, "U"), s.chord(1, 3, "U")) == 1
    assert geometric_intersection(s.chord(0, 2, "U"), s.chord(1, 3, "D")) == 0


def test_twist_about_curve_around_crossing_gap():
    # brute force over strand orderings gives 3 for either twist direction
    a = DiagramArc(5, 0, 3, "U", (2,))
    for d in (LEFT, RIGHT):
        t = dehn_twist(a, TwistCurve(5, 1, 2, d))
        assert geometric_intersection(a, t) == brute_force_intersection(a, t) == 3


def test_twist_about_curve_separating_endpoints():
    a = DiagramArc(5, 0, 2, "U")
    t = dehn_twist(a, TwistCurve(5, 1, 3))
    assert t != a
    assert geometric_intersection(a, t) == brute_force_intersection(a, t) == 0


def test_twist_disjoint_from_arc_is_identity():
    a = DiagramArc(6, 0, 1, "U")
    assert dehn_twist(a, TwistCurve(6, 3, 4)) == a


def test_bad_arcs_rejected():
    with pytest.raises(ArcError):
        DiagramArc(3, 1, 1, "U")
    with pytest.raises(ArcError):
        DiagramArc(3, 0, 1, "X")
    with pytest.raises(ArcError):
        TwistCurve(4, 0, 1)


def test_text_round_trip():
    a = DiagramArc(6, 4, 1, "D", (3, 0, 2))
    assert DiagramArc.from_text(a.to_text()) == a


@given(arcs())
def test_minimal_position_idempotent(a):
    once = minimal_position(a)
    assert minimal_position(once) == once
    assert once.is_reduced


@given(st.data())
def test_intersection_symmetric(data):
    m = data.draw(st.integers(3, 6))
    a, b = data.draw(arcs(m)), data.draw(arcs(m))
    assert geometric_intersection(a, b) == geometric_intersection(b, a)


@given(st.data())
def test_intersection_matches_brute_force_on_embedded_arcs(data):
    m = data.draw(st.integers(3, 5))
    a, b = data.draw(embedded_arcs(m, 3)), data.draw(embedded_arcs(m, 3))
    try:
        want = brute_force_intersection(a, b, limit=50_000)
    except ArcError:
        assume(False)
    assert geometric_intersection(a, b) == want


@given(st.data())
def test_twist_invariance_of_crossings(data):
    m = data.draw(st.integers(3, 6))
    a, b = data.draw(embedded_arcs(m)), data.draw(embedded_arcs(m))
    i = data.draw(st.integers(1, m - 1))
    c = TwistCurve(m, i, data.draw(st.integers(i, m - 1)), data.draw(st.sampled_from([LEFT, RIGHT])))
    assert geometric_intersection(dehn_twist(a, c), dehn_twist(b, c)) == geometric_intersection(a, b)


@given(st.data())
def test_twist_then_inverse_is_identity(data):
    m = data.draw(st.integers(3, 6))
    a = data.draw(arcs(m))
    i = data.draw(st.integers(1, m - 1))
    c = TwistCurve(m, i, data.draw(st.integers(i, m - 1)))
    power = data.draw(st.integers(-3, 3))
    assert dehn_twist(dehn_twist(a, c, power), c, -power) == a.reduced()


@given(embedded_arcs())
def test_rotation_is_invertible(a):
    assert rotate_arc(rotate_arc(a, True), False) == a


@given(st.data())
def test_band_sums_stay_embedded_and_disjoint(data):
    m = data.draw(st.integers(4, 6))
    s = MarkedSphere(m)
    x = data.draw(st.integers(0, m - 4))
    mover, over = s.chord(x, x + 1, "U"), s.chord(x + 2, x + 3, "U")
    sums = band_sums([mover, over], 0, 1)
    assert sums
    for arc in sums:
        assert self_intersection(arc) == 0
        assert arc.endpoints == mover.endpoints
