import json
import os

import pytest
from click.testing import CliRunner

from fwcalc.cli import main
from fwcalc.moves import MoveRecord, format_script, inverse_move
from fwcalc.system import key_example, parse, serialize, standard_system


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)

    return go


@pytest.fixture
def key_file(tmp_path):
    p = tmp_path / "key.fwsys"
    p.write_text(serialize(key_example()))
    return p


def test_invariant_examples(run):
    assert run("invariant", "--example", "key").output == "I = (1)\n"
    assert run("invariant", "--example", "standard").output == "I = (0)\n"
    assert run("invariant", "--example", "padded", "--k", 3, "--eye", 2).output == "I = (0,1,0)\n"


def test_invariant_from_file_with_script(run, tmp_path):
    p = tmp_path / "s.fwsys"
    p.write_text(serialize(standard_system([2]).evolve(xg={("f1", "w2"): 1})))
    out = run("invariant", p, "--emit-script").output.splitlines()
    assert out[0] == "I = (0)"
    assert out[1].startswith("gslide mover=w2 over=w1")


def test_invariant_with_order(run, tmp_path):
    p = tmp_path / "s.fwsys"
    p.write_text(serialize(key_example()))
    assert run("invariant", p, "--order", "1:w1").output == "I = (1)\n"


def test_classify(run, key_file, tmp_path):
    assert run("classify", key_file).output == "eye 1: EA\n"
    script = tmp_path / "b.script"
    script.write_text("birth eye=1\n")
    born = tmp_path / "born.fwsys"
    run("apply", key_file, script, "-o", born)
    assert run("classify", born).output == "eye 1: FingerFirstGeneral, 1 cycle\n"


def test_classify_parse_error(run, tmp_path):
    p = tmp_path / "bad.fwsys"
    p.write_text("fwsys v1\neyes 1\neye 1 n 1\ndisc f1 kind=F reye=1 geye=1 gcorners=0,2 rcorners=0,2 germ=0,0 junk\n")
    res = run("classify", p)
    assert res.exit_code == 2
    assert "line 4" in res.output


def test_apply_birth_and_inverse_round_trip(run, key_file, tmp_path):
    s = key_example()
    rec = MoveRecord.make("Birth", eye=1)
    fwd, back = tmp_path / "f.script", tmp_path / "b.script"
    fwd.write_text(format_script([rec]))
    back.write_text(format_script([inverse_move(s, rec)]))
    mid, end = tmp_path / "mid.fwsys", tmp_path / "end.fwsys"
    res = run("apply", key_file, fwd, "-o", mid, "--check-invariant")
    assert res.exit_code == 0 and "I preserved" in res.output
    assert len(parse(mid.read_text()).discs) == 4
    run("apply", mid, back, "-o", end)
    assert end.read_bytes() == key_file.read_bytes()


def test_apply_rejects_illegal_move(run, key_file, tmp_path):
    script = tmp_path / "d.script"
    script.write_text("death eye=1 f=f1 w=w1\n")
    assert run("apply", key_file, script).exit_code == 1


def test_check_passes_with_exit_zero(run):
    res = run("check", "symmetry", "--seed", 7, "--trials", 500)
    assert res.exit_code == 0 and res.output.startswith("symmetry: pass")
    assert run("check", "clifford-trace-flip", "--trials", 50).exit_code == 0
    assert run("check", "tables-n5").exit_code == 0


def test_fuzz_summary_and_fault_capture(run, tmp_path):
    res = run("fuzz", "--trials", 200, "--seed", 3)
    assert res.exit_code == 0 and res.output.startswith("fuzz: pass (200 passed")
    corpus = tmp_path / "corpus"
    res = run("fuzz", "--trials", 200, "--seed", 3, "--inject-fault", "--corpus-dir", corpus)
    assert res.exit_code == 1
    records = [json.loads(line) for line in res.output.splitlines()[1:]]
    assert records and all(r["check"] == "fuzz" for r in records)
    for r in records:
        assert os.path.exists(r["case"] + ".fwsys") and os.path.exists(r["case"] + ".script")


def test_fuzz_is_reproducible(run):
    a = run("fuzz", "--trials", 150, "--seed", 11).output
    b = run("fuzz", "--trials", 150, "--seed", 11).output
    assert a == b
