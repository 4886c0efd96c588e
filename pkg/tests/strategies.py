"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from fwcalc.arcdiag import DiagramArc, self_intersection
from fwcalc.gen import GenParams, random_system

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def arcs(draw, m=None, max_len=5):
    m = m or draw(st.integers(3, 6))
    start, end = draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
    half = draw(st.sampled_from("UD"))
    gaps = draw(st.lists(st.integers(0, m - 1), max_size=max_len))
    return DiagramArc(m, start, end, half, tuple(gaps)).reduced()


@st.composite
def embedded_arcs(draw, m=None, max_len=4):
    a = draw(arcs(m, max_len))
    if self_intersection(a):
        a = DiagramArc(a.points, a.start, a.end, a.start_half)
    return a


@st.composite
def systems(draw, **params):
    return random_system(draw(seeds), GenParams(**params))
