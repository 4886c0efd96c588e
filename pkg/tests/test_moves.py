import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import seeds, systems

from fwcalc.gen import FUZZ_KINDS, GenParams, random_applicable_move, random_system
from fwcalc.homology import clifford_equivalent
from fwcalc.moves import (
    MoveError,
    MoveRecord,
    SaddleSpec,
    apply_move,
    apply_script,
    birth,
    clifford_add,
    death,
    disc_slide,
    format_script,
    inverse_move,
    k_switch,
    parse_script,
    rotate,
    saddle,
    sphere_slide,
    spin,
    x3_insert,
    x3_remove,
)
from fwcalc.system import classify_position, ia_ordering, standard_system, validate

S3 = standard_system([3])


def mdiff(a, b):
    return sorted(a.m ^ b.m)


def test_untwisted_slide_over_clean_disc_keeps_m():
    assert mdiff(S3, disc_slide(S3, "w1", "w2", "G")) == []


def test_odd_twist_adds_clifford_pair_of_over():
    untwisted = disc_slide(S3, "w1", "w2", "G", 0)
    twisted = disc_slide(S3, "w1", "w2", "G", 1)
    assert mdiff(untwisted, twisted) == [("f2", "w1"), ("f3", "w1")]


def test_slide_then_opposite_side_restores_data():
    s = S3.evolve(xg={("f1", "w2"): 1}, xr={("f3", "w2"): 2}, m=frozenset({("f2", "w2")}))
    for surface in "GR":
        there = disc_slide(s, "w1", "w2", surface, 0, side=1)
        back = disc_slide(there, "w1", "w2", surface, 0, side=-1)
        assert (back.m, dict(back.xg), dict(back.xr)) == (s.m, dict(s.xg), dict(s.xr))


def test_rotation_of_clean_disc_only_touches_its_row():
    r = rotate(S3, "w1", "G", 1)
    assert r.m == S3.m and dict(r.xg) == {}
    assert r.xr and all(w == "w1" and v == 1 for (f, w), v in r.xr.items())


def test_rotation_then_opposite_is_identity():
    s = S3.evolve(xg={("f2", "w1"): 1})
    assert rotate(rotate(s, "w1", "G", 1, 1), "w1", "G", 1, -1) == s


def test_rotation_flips_m_against_crossed_finger():
    s = S3.evolve(xg={("f2", "w1"): 1})
    assert mdiff(s, rotate(s, "w1", "G", 1)) == [("f2", "w1")]


def test_clifford_add_examples():
    assert clifford_add(S3, "w1", "w2", 2) == S3
    assert mdiff(S3, clifford_add(S3, "w1", "w2")) == [("f2", "w1"), ("f3", "w1")]
    assert mdiff(S3, clifford_add(S3, "f1", "f1")) == [("f1", "w1")]
    with pytest.raises(MoveError):
        clifford_add(S3, "w1", "f1")


def test_sphere_slide_rule():
    assert mdiff(S3, sphere_slide(S3, "f2", "f1")) == [("f2", "w1")]
    assert mdiff(S3, sphere_slide(S3, "f3", "f2")) == [("f3", "w1"), ("f3", "w2")]


def test_sphere_slide_over_cross_disc_keeps_eye_data():
    s = random_system(3, GenParams(min_eyes=2, max_eyes=2, max_discs=3, cross_discs=2))
    same_eye = lambda t: {(f, w) for f, w in t.m if s.disc(f).space == s.disc(w).space and not s.disc(f).is_cross}  # noqa: E731
    for d in s.fingers():
        if not d.is_cross and d.reye == 1:
            assert same_eye(sphere_slide(s, d.id, "cf1")) == same_eye(s)


def test_cross_slide_over_cross_keeps_eye_entries():
    s = random_system(5, GenParams(min_eyes=2, max_eyes=2, max_discs=3, cross_discs=2))
    out = disc_slide(s, "cw1", "cw2", "G")
    eye = lambda t: {(f, w) for f, w in t.m if not t.disc(f).is_cross and not t.disc(w).is_cross}  # noqa: E731
    assert eye(out) == eye(s)


def test_k_switch_examples():
    s, info = k_switch(S3, 1)
    assert info.k == 0 and s == S3
    s, info = k_switch(birth(S3, 1), 1)
    assert info.k == 1
    assert len(ia_ordering(s, 1)) == 8


def test_birth_death_inverse():
    b = birth(S3, 1)
    assert [e.n for e in b.eyes] == [4]
    assert death(b, 1, "f4", "w4") == S3


def test_birth_on_empty_eye():
    b = birth(standard_system([0]), 1)
    assert classify_position(b) == {1: "FingerFirstGeneral"}


def test_death_refuses_noncanceling_pair():
    with pytest.raises(MoveError):
        death(S3, 1, "f1", "w1")


def test_x3_insert_remove():
    x = x3_insert(S3, 1, 6)
    assert classify_position(x) == {1: "EA"}
    new = sorted({d.id for d in x.discs} - {d.id for d in S3.discs})
    assert x3_remove(x, 1, *new) == S3


def test_saddle_parallel_copy_inherits_data():
    s = S3.evolve(m=frozenset({("f1", "w3"), ("f2", "w3")}))
    out = saddle(s, 1, SaddleSpec(point=5, m=frozenset({"f1"})))
    assert validate(out) == []
    assert [e.n for e in out.eyes] == [4]
    # w4 = w_D carries the given row; w3 keeps its corner through a parallel copy of it
    assert {f for f, w in out.m if w == "w4"} == {"f1"}
    assert {f for f, w in out.m if w == "w3"} == {"f2"}


def test_spin_twice_is_identity():
    s = spin(S3, "f1", "f2", ["w1", "w3"])
    assert spin(s, "f1", "f2", ["w1", "w3"]) == S3


def test_script_text_round_trip():
    recs = [MoveRecord.make("Birth", eye=1), MoveRecord.make("GSlide", mover="w1", over="w2", twist=1)]
    assert parse_script(format_script(recs)) == recs


def test_script_parse_error_names_line():
    with pytest.raises(MoveError, match="line 2"):
        parse_script("birth eye=1\nwobble x=1\n")


@given(seeds, systems(max_eyes=2, max_discs=4))
def test_moves_preserve_validity(seed, s):
    rec = random_applicable_move(seed, s)
    assume(rec is not None)
    assert validate(apply_move(s, rec)) == []


@given(seeds, systems(max_eyes=2, max_discs=4), st.sampled_from(FUZZ_KINDS))
def test_inverse_records_undo_moves(seed, s, kind):
    rec = random_applicable_move(seed, s, kinds=(kind,))
    assume(rec is not None)
    try:
        inv = inverse_move(s, rec)
    except MoveError:
        assume(False)
    after = apply_script(s, [rec, inv])
    assert (after.m, dict(after.xg), dict(after.xr)) == (s.m, dict(s.xg), dict(s.xr))


@given(systems(max_eyes=1, max_discs=3, cycles=0, offsets=False))
def test_slides_commute_up_to_clifford(s):
    ws = [d.id for d in s.whitneys()]
    assume(len(ws) >= 2)
    a, b = ws[0], ws[1]
    gr = disc_slide(disc_slide(s, a, b, "G"), a, b, "R")
    rg = disc_slide(disc_slide(s, a, b, "R"), a, b, "G")
    assert clifford_equivalent(gr.evolve(arcs=None), rg.evolve(arcs=None))[0]
