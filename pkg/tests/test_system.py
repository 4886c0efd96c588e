from dataclasses import replace

import pytest
from hypothesis import given
from strategies import systems

from fwcalc.moves import birth, k_switch
from fwcalc.system import (
    FINGER,
    WHITNEY,
    ParseError,
    classify_position,
    cycle_decomposition,
    ia_ordering,
    key_example,
    pad_eyes,
    parse,
    serialize,
    standard_system,
    swap_roles,
    validate,
)

KEY_TEXT = """fwsys v1
eyes 1
eye 1 n 1
disc f1 kind=F reye=1 geye=1 gcorners=0,1 rcorners=0,1 germ=0,0
disc w1 kind=W reye=1 geye=1 gcorners=1,2 rcorners=1,2 germ=0,0
xg f1 w1 0
xr f1 w1 0
m f1 w1 1
"""


def _with_disc(sys, disc_id, **changes):
    return sys.evolve(discs=tuple(replace(d, **changes) if d.id == disc_id else d for d in sys.discs))


def test_key_file_parses_to_key_example():
    assert parse(KEY_TEXT) == key_example()
    assert serialize(key_example()) == KEY_TEXT


def test_standard_validates():
    assert validate(standard_system([1])) == []


def test_corner_sign_violation():
    bad = _with_disc(standard_system([2]), "w1", gcorners=(1, 3), rcorners=(1, 3))
    assert any(v.invariant == "corner sign" for v in validate(bad))


def test_germ_parity_violation():
    bad = _with_disc(standard_system([1]), "f1", germ=(1, 0))
    assert any(v.invariant == "germ parity" and "p+q even" in str(v) for v in validate(bad))


def test_completeness_violation():
    s = standard_system([2])
    bad = s.evolve(discs=tuple(d for d in s.discs if d.id != "w2"))
    assert any(v.invariant == "completeness" for v in validate(bad))


def test_standard_decomposition_is_one_path():
    dec = cycle_decomposition(standard_system([3]), 1)
    assert dec.path.discs == ("f1", "w1", "f2", "w2", "f3", "w3")
    assert dec.cycles == ()


def test_birth_on_empty_eye_is_point_plus_cycle():
    s = birth(standard_system([0]), 1)
    dec = cycle_decomposition(s, 1)
    assert dec.path.discs == () and dec.path.points == (0,)
    assert len(dec.cycles) == 1 and set(dec.cycles[0].discs) == {"f1", "w1"}
    assert classify_position(s) == {1: "FingerFirstGeneral"}


def test_classify_standard_and_key():
    assert classify_position(standard_system([2])) == {1: "EA"}
    assert classify_position(key_example()) == {1: "EA"}


def test_classify_partial_positions():
    s = standard_system([2])
    assert classify_position(s.evolve(xg={("f1", "w2"): 1}))[1] == "R-EA"
    assert classify_position(s.evolve(xr={("f1", "w2"): 1}))[1] == "G-EA"
    assert classify_position(s.evolve(xg={("f1", "w2"): 1}, xr={("f2", "w1"): 2}))[1] == "IA"


def test_standard_ia_ordering():
    assert ia_ordering(standard_system([3]), 1) == ("f1", "w1", "f2", "w2", "f3", "w3")


def test_switched_birth_pair_heads_the_order():
    s, info = k_switch(birth(standard_system([1]), 1), 1)
    assert info.k == 1
    assert ia_ordering(s, 1)[:2] == ("f2", "w2*")


def test_padding_appends_standard_eyes():
    s = pad_eyes(key_example(2, 1), 2, 3)
    assert [e.n for e in s.eyes] == [1, 1, 3, 3]
    assert validate(s) == []


def test_parse_error_has_line_number():
    with pytest.raises(ParseError) as err:
        parse("fwsys v1\neyes 1\neye 1 x 1\n")
    assert err.value.line == 3


def test_parse_rejects_missing_header():
    with pytest.raises(ParseError) as err:
        parse("eyes 1\n")
    assert err.value.line == 1


@given(systems(max_eyes=3, max_discs=5, cross_discs=1, twist_range=2))
def test_serialization_round_trip(s):
    text = serialize(s)
    assert parse(text) == s
    assert serialize(parse(text)) == text
    assert text.endswith("\n") and "\r" not in text


@given(systems(max_eyes=2, max_discs=5, cycles=2))
def test_decomposition_partitions_discs(s):
    for e in s.eyes:
        dec = cycle_decomposition(s, e.index)
        parts = list(dec.path.discs) + [d for c in dec.cycles for d in c.discs]
        assert sorted(parts) == sorted(d.id for d in s.fingers(e.index) + s.whitneys(e.index))


@given(systems(max_eyes=2, max_discs=5))
def test_ea_implies_weaker_positions(s):
    for e, pos in classify_position(s).items():
        ids = {d.id for d in s.fingers(e) + s.whitneys(e)}
        g = any(v for (f, w), v in s.xg.items() if f in ids)
        r = any(v for (f, w), v in s.xr.items() if f in ids)
        if pos == "EA":
            assert not g and not r
        if pos != "FingerFirstGeneral":
            assert cycle_decomposition(s, e).cycles == ()


@given(systems(max_eyes=2, max_discs=5, cycles=0))
def test_ia_ordering_alternates(s):
    for e in s.eyes:
        order = ia_ordering(s, e.index)
        kinds = [s.disc(d).kind for d in order]
        assert kinds == [FINGER, WHITNEY] * (len(order) // 2)


@given(systems(max_eyes=2, max_discs=4, offsets=False))
def test_role_swap_is_an_involution(s):
    # arcs survive only when the a_0 relabeling is a symmetry of the point order
    assert swap_roles(swap_roles(s)).evolve(arcs=None) == s.evolve(arcs=None)

