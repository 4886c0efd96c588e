import pytest
from hypothesis import given
from strategies import seeds, systems

from fwcalc.arcdiag import standard_arcs
from fwcalc.checks import ia_sample
from fwcalc.invariant import compute_I
from fwcalc.moves import MoveRecord, apply_move
from fwcalc.oracle import (
    GEOMETRIC_KINDS,
    OracleError,
    all_orderings_I,
    all_slide_scripts_I,
    cross_validate,
    geometric_apply,
    geometric_corpus,
    ia_closed_form,
    read_case,
    write_case,
)
from fwcalc.system import key_example, serialize, standard_system


def geometric_standard(n):
    s = standard_system([n])
    return s.evolve(arcs=standard_arcs(s))


def test_slide_scripts_on_examples():
    assert all_slide_scripts_I(standard_system([2])) == {(0,)}
    assert all_slide_scripts_I(key_example()) == {(1,)}


def test_one_crossing_system_is_singleton_with_and_without_twists():
    s = standard_system([2]).evolve(xg={("f1", "w2"): 1})
    assert all_slide_scripts_I(s, twists=(0,)) == all_slide_scripts_I(s, twists=(0, 1)) == {(0,)}


def test_affine_search_matches_explicit_enumeration():
    for s, bits in ia_sample(11, 6):
        assert all_slide_scripts_I(s, depth=2, exact=True) == all_slide_scripts_I(s, depth=2) == {bits}


def test_slide_scripts_reject_cycles():
    from fwcalc.moves import birth

    with pytest.raises(OracleError):
        all_slide_scripts_I(birth(standard_system([1]), 1))


def test_orderings_on_examples():
    assert all_orderings_I(standard_system([3])) == {(0,)}
    assert all_orderings_I(key_example()) == {(1,)}


def test_cross_validate_examples():
    s = geometric_standard(2)
    for rec in (
        MoveRecord.make("GSlide", mover="w1", over="w2"),
        MoveRecord.make("RRotate", disc="w1", corner=1, sign=1),
        MoveRecord.make("Birth", eye=1),
    ):
        ok, diff = cross_validate(s, rec)
        assert ok, diff


def test_rotation_changes_crossings_by_one_in_both_layers():
    s = geometric_standard(2)
    rec = MoveRecord.make("GRotate", disc="w1", corner=1, sign=1)
    geo = geometric_apply(s, rec)
    assert set(geo.xr.values()) == {1} and not geo.xg
    assert dict(geo.xr) == dict(apply_move(s, rec).xr)


def test_corpus_covers_every_geometric_kind():
    kinds = {rec.kind for _, rec in geometric_corpus(60, seed=3)}
    assert kinds == set(GEOMETRIC_KINDS)


def test_corpus_is_deterministic():
    a = [(serialize(s), r.to_text()) for s, r in geometric_corpus(30, seed=9)]
    b = [(serialize(s), r.to_text()) for s, r in geometric_corpus(30, seed=9)]
    assert a == b


def test_case_round_trip(tmp_path):
    s = key_example(2, 2)
    script = [MoveRecord.make("Birth", eye=1), MoveRecord.make("GSlide", mover="w1", over="w3")]
    stem = write_case(str(tmp_path), "demo", s, script)
    assert read_case(stem) == (s, script)


@given(seeds)
def test_closed_form_matches_pipeline(seed):
    for s, bits in ia_sample(seed, 1, script_limit=99):
        assert tuple(ia_closed_form(s, e.index) for e in s.eyes) == bits


@given(systems(max_eyes=2, max_discs=4, cycles=1))
def test_orderings_are_singletons(s):
    assert all_orderings_I(s) == {compute_I(s).bits}
