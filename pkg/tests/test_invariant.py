import pytest
from hypothesis import assume, given
from strategies import seeds, systems

from fwcalc.gen import FUZZ_KINDS, random_applicable_move
from fwcalc.invariant import compute_I, concatenate, hat_I, parity_hypotheses, parity_report, slide_to_EA
from fwcalc.moves import apply_move, birth
from fwcalc.system import SystemError_, classify_position, key_example, pad_eyes, standard_system, swap_roles


def test_hat_I_examples():
    assert hat_I(standard_system([3])) == (0,)
    assert hat_I(key_example()) == (1,)


def test_compute_I_examples():
    assert compute_I(key_example()).bits == (1,)
    assert compute_I(standard_system([1])).bits == (0,)
    assert compute_I(key_example(3, 2)).bits == (0, 1, 0)
    assert str(compute_I(key_example(3, 2))) == "(0,1,0)"


def test_padding_appends_zero():
    for k in (1, 2, 3):
        for j in range(1, k + 1):
            assert compute_I(pad_eyes(key_example(k, j))).bits == tuple(int(i == j) for i in range(1, k + 1)) + (0,)


def test_ea_input_needs_no_script():
    _, script = slide_to_EA(standard_system([2]), 1)
    assert script == []


def test_one_excess_crossing_is_slid_away():
    s = standard_system([2]).evolve(xg={("f1", "w2"): 1})
    ea, script = slide_to_EA(s, 1)
    assert [r.kind for r in script][:2] == ["GSlide", "RRotate"]
    assert script[0].get("mover") == "w2" and script[0].get("over") == "w1"
    assert classify_position(ea) == {1: "EA"}
    assert hat_I(ea) == hat_I(s)


def test_r_clean_input_uses_no_r_slides():
    s = standard_system([3]).evolve(xg={("f1", "w2"): 1, ("f2", "w3"): 1})
    assert classify_position(s)[1] == "R-EA"
    _, script = slide_to_EA(s, 1)
    assert script and not any(r.kind == "RSlide" for r in script)


def test_concatenation_examples():
    k = key_example()
    assert concatenate(k, standard_system([0])) == k
    assert compute_I(concatenate(k, k)).bits == (0,)
    assert compute_I(concatenate(k, standard_system([1]))).bits == (1,)


def test_concatenation_needs_matching_eyes():
    with pytest.raises(SystemError_):
        concatenate(key_example(1), key_example(2))


def test_parity_hypothesis_examples():
    s = standard_system([2]).evolve(xg={("f1", "w2"): 1})
    assert parity_hypotheses(s, s)
    odd = s.evolve(xg={("f1", "w2"): 2})
    assert any(r.startswith("iii") for r in parity_report(s, odd))
    assert parity_hypotheses(s, s.evolve(xg={("f1", "w2"): 3}, xr={("f2", "w1"): 2}))


def test_birth_keeps_I():
    for s in (key_example(), standard_system([2]), key_example(2, 2)):
        assert compute_I(birth(s, 1)).bits == compute_I(s).bits


@given(seeds, systems(max_eyes=2, max_discs=4))
def test_moves_preserve_I(seed, s):
    rec = random_applicable_move(seed, s)
    assume(rec is not None)
    assert compute_I(apply_move(s, rec)).bits == compute_I(s).bits


@given(systems(max_eyes=2, max_discs=3), systems(max_eyes=2, max_discs=3))
def test_additivity(a, b):
    assume(len(a.eyes) == len(b.eyes))
    got = compute_I(concatenate(a, b)).bits
    assert got == tuple(x ^ y for x, y in zip(compute_I(a).bits, compute_I(b).bits))


@given(seeds, systems(max_eyes=2, max_discs=4, cycles=2))
def test_role_symmetry(seed, s):
    rec = random_applicable_move(seed, s, kinds=tuple(k for k in FUZZ_KINDS if k != "Spin"))
    if rec is not None:
        s = apply_move(s, rec)
    assume(not s.a0)
    assert compute_I(swap_roles(s)).bits == compute_I(s).bits
