from fwcalc.checks import SUITES, CheckResult, check_clifford_trace_flip, faulty_apply, fuzz


def test_result_line_and_status():
    r = CheckResult("demo")
    assert not r.ok
    r.record(True)
    r.record(False, trial=4)
    assert r.line() == "demo: FAIL (1 passed, 1 failed)"
    assert r.failures == [{"check": "demo", "trial": 4}]


def test_suites_pass_on_small_runs():
    small = {"cross-layer"}
    for name, suite in SUITES.items():
        if name in small:
            continue
        res = suite(5, 10 if name != "padding" else 2)
        assert res.ok, (name, res.failures[:3])


def test_fuzz_output_independent_of_jobs():
    a = fuzz(seed=2, trials=80, jobs=1)
    b = fuzz(seed=2, trials=80, jobs=2)
    assert a.line() == b.line() and a.failures == b.failures


def test_injected_fault_is_caught():
    res = fuzz(seed=0, trials=120, apply=faulty_apply)
    assert res.failed > 0
    assert all("CliffordAdd" in f["move"] or f["move"].startswith("clifford") for f in res.failures)


def test_trace_flip_is_a_real_control():
    res = check_clifford_trace_flip(seed=1, trials=40)
    assert res.ok and res.passed == 40
