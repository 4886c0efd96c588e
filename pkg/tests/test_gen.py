from collections import Counter

import pytest
from hypothesis import given
from strategies import seeds

from fwcalc.gen import FUZZ_KINDS, GenParams, random_applicable_move, random_system
from fwcalc.moves import MoveRecord, SaddleSpec, apply_move, birth, saddle, x3_insert
from fwcalc.system import classify_position, standard_system, validate


def test_same_seed_same_system():
    p = GenParams(max_eyes=2, max_discs=4, cross_discs=1, twist_range=2)
    assert random_system(42, p) == random_system(42, p)
    assert random_applicable_move(7, random_system(42, p)) == random_applicable_move(7, random_system(42, p))


def test_thousand_samples_validate():
    p = GenParams(min_eyes=2, max_eyes=2, max_discs=4)
    assert all(validate(random_system(seed, p)) == [] for seed in range(1000))


def test_zero_crossings_without_cycles_is_ea():
    p = GenParams(max_eyes=2, max_discs=4, max_crossing=0, cycles=0)
    for seed in range(50):
        assert set(classify_position(random_system(seed, p)).values()) <= {"EA"}


def test_small_draws_carry_arcs():
    s = random_system(1, GenParams(geometric=True, max_discs=3))
    assert s.arcs is not None and not s.synthetic


def test_death_offered_after_birth():
    s = birth(standard_system([2]), 1)
    rec = random_applicable_move(0, s, kinds=("Death",))
    assert rec == MoveRecord.make("Death", eye=1, f="f3", w="w3")


def test_death_never_offered_on_standard_pairs():
    assert random_applicable_move(0, standard_system([3]), kinds=("Death",)) is None


def test_move_distribution_covers_every_kind():
    s = birth(x3_insert(saddle(standard_system([3]), 1, SaddleSpec(point=3)), 1, 8), 1)
    seen = Counter()
    for seed in range(1000):
        rec = random_applicable_move(seed, s)
        if rec is not None:
            seen[rec.kind] += 1
    assert set(seen) == set(FUZZ_KINDS)


def test_bad_params_rejected():
    with pytest.raises(ValueError):
        GenParams(max_eyes=0)
    with pytest.raises(ValueError):
        GenParams(max_discs=9)


@given(seeds, seeds)
def test_generated_moves_apply(sys_seed, move_seed):
    s = random_system(sys_seed, GenParams(max_eyes=2, max_discs=4))
    rec = random_applicable_move(move_seed, s)
    if rec is not None:
        assert validate(apply_move(s, rec)) == []
