from hypothesis import given
from hypothesis import strategies as st
from strategies import systems

from fwcalc.homology import (
    H2Class,
    clifford_class,
    clifford_equivalent,
    corner_class,
    pairing,
    reorder_table,
    solve_gf2,
    standard_reference,
    switch_reference_n5,
    upper_sum,
)
from fwcalc.moves import clifford_add
from fwcalc.system import standard_system

S3 = standard_system([3])


def R(j, eye=1):
    return H2Class(frozenset({("R", eye, j)}))


def S(j, eye=1):
    return H2Class(frozenset({("S", eye, j)}))


def test_standard_pairings_are_dual():
    ref = standard_reference(3)
    for i in range(1, 4):
        for j in range(1, 4):
            assert pairing(f"w{i}", R(j), reference=ref) == int(i == j)
            assert pairing(f"f{i}", S(j), reference=ref) == int(i == j)


def test_switched_n5_pairing():
    ref = switch_reference_n5(2)
    assert pairing("w2", S(2), reference=ref) == 1
    assert pairing("w5", S(2), reference=ref) == 0


def test_clifford_class_pairings():
    c = clifford_class("w2", S3)
    assert pairing(c, "f2", S3) == 1
    assert pairing(c, "f3", S3) == 1
    assert pairing(c, "f1", S3) == 0
    assert pairing(c, "w2", S3) == 0


def test_clifford_equivalence_examples():
    ok, wm, fm = clifford_equivalent(S3, S3)
    assert ok and not wm.entries and not fm.entries
    assert clifford_equivalent(S3, clifford_add(S3, "w1", "w2"))[0]
    assert not clifford_equivalent(S3, clifford_add(S3, "w1", "w1"))[0]


def test_gf2_solver():
    # x0 + x1 = 1, x1 = 1
    assert solve_gf2([0b11, 0b10], [1, 1], 2) == 0b10
    assert solve_gf2([0b1, 0b1], [0, 1], 1) is None


def test_tables_agree_for_symmetric_b():
    a = {(i, j): (i * j) % 2 for i in range(1, 6) for j in range(1, 6)}
    b = {(i, j): (i + j) % 2 for i in range(1, 6) for j in range(1, 6)}
    assert upper_sum(reorder_table(a, b, 1)) % 2 == upper_sum(reorder_table(a, b, 2)) % 2


@given(st.lists(st.integers(0, 8), max_size=6), st.lists(st.integers(0, 8), max_size=6))
def test_pairing_is_bilinear(xs, ys):
    s = standard_system([4])
    u, v = corner_class(("eye", 1), xs), corner_class(("eye", 1), ys)
    for d in ("f1", "w2", "f4"):
        assert pairing(u + v, d, s) == pairing(u, d, s) ^ pairing(v, d, s)


@given(systems(max_eyes=2, max_discs=4, cycles=0))
def test_clifford_equivalence_is_reflexive(s):
    assert clifford_equivalent(s, s)[0]
