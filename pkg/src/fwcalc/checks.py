"""Seeded lemma suites and the move-invariance fuzz runner.

Every suite is deterministic in its seed and returns a CheckResult whose
failure records are plain dicts, ready to print as JSON lines.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .gen import FUZZ_KINDS, GenParams, random_applicable_move, random_system
from .homology import clifford_equivalent, reorder_table, upper_sum
from .invariant import compute_I, concatenate, parity_hypotheses
from .moves import MoveError, MoveRecord, apply_move, clifford_add
from .oracle import (
    OracleError,
    all_orderings_I,
    all_slide_scripts_I,
    geometric_corpus,
    run_corpus,
    write_case,
)
from .system import (
    FINGER,
    WHITNEY,
    FWSystem,
    classify_position,
    ia_ordering,
    key_example,
    pad_eyes,
    standard_system,
    swap_roles,
    validate,
)


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, good: bool, **info):
        if good:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append({"check": self.name, **info})

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        extra = "".join(f" {k}={v}" for k, v in sorted(self.notes.items()))
        return f"{self.name}: {status} ({self.passed} passed, {self.failed} failed){extra}"


def _rng(seed, *tags) -> random.Random:
    return random.Random("/".join(str(x) for x in (seed, *tags)))


def _xor(a, b) -> tuple[int, ...]:
    return tuple(x ^ y for x, y in zip(a, b))


def _scramble(sys: FWSystem, rng: random.Random, moves: int, kinds=FUZZ_KINDS) -> FWSystem:
    for _ in range(moves):
        rec = random_applicable_move(rng, sys, kinds=kinds)
        if rec is None:
            break
        sys = apply_move(sys, rec)
    return sys


# combinatorial examples


def check_key(seed: int = 0, trials: int = 1) -> CheckResult:
    res = CheckResult("key")
    res.record(compute_I(key_example()).bits == (1,), system="key")
    res.record(compute_I(standard_system([1])).bits == (0,), system="standard")
    return res


def check_padding(seed: int = 0, trials: int = 3) -> CheckResult:
    res = CheckResult("padding")
    for k in range(1, trials + 1):
        for j in range(1, k + 1):
            got = compute_I(key_example(k, j)).bits
            want = tuple(int(i == j) for i in range(1, k + 1))
            res.record(got == want, k=k, eye=j, got=list(got))
            for count, n in ((1, 1), (2, 2)):
                padded = compute_I(pad_eyes(key_example(k, j), count, n)).bits
                res.record(padded == want + (0,) * count, k=k, eye=j, pad=count, got=list(padded))
    return res


def check_homomorphism(seed: int = 0, trials: int = 500) -> CheckResult:
    res = CheckResult("homomorphism")
    for t in range(trials):
        rng = _rng(seed, "hom", t)
        k = rng.randint(1, 2)
        p = GenParams(min_eyes=k, max_eyes=k, max_discs=3, cycles=1)
        a = random_system(rng, p)
        b = _scramble(random_system(rng, p), rng, 4)
        got = compute_I(concatenate(a, b)).bits
        want = _xor(compute_I(a).bits, compute_I(b).bits)
        res.record(got == want, trial=t, got=list(got), want=list(want))
    return res


def check_symmetry(seed: int = 0, trials: int = 500) -> CheckResult:
    """I(F, W) = I(W, F) on systems reached by random moves other than spin."""
    res = CheckResult("symmetry")
    kinds = tuple(k for k in FUZZ_KINDS if k != "Spin")
    redraws = 0
    for t in range(trials):
        for r in range(100):
            rng = _rng(seed, "sym", t, r)
            s = _scramble(random_system(rng, GenParams(cycles=2)), rng, rng.randint(0, 4), kinds)
            if not s.a0:
                break
            redraws += 1
        got, want = compute_I(swap_roles(s)).bits, compute_I(s).bits
        res.record(got == want, trial=t, got=list(got), want=list(want))
    res.notes["redraws"] = redraws
    return res


# Clifford tori


def _clifford_script(s: FWSystem, eye: int, rng: random.Random, trace: Optional[str] = None) -> list[tuple[str, str]]:
    """Random (target, source) Clifford adds on one eye with zero diagonal sum per kind.

    With trace set to F or W, one extra diagonal add of that kind is appended.
    """
    adds = []
    for kind in (FINGER, WHITNEY):
        ids = [d.id for d in s.discs if d.space == ("eye", eye) and d.kind == kind]
        if not ids:
            continue
        for _ in range(rng.randint(0, 4)):
            t, src = rng.choice(ids), rng.choice(ids)
            if t != src:
                adds.append((t, src))
        diag = rng.choice([0, 2, 2, 4])
        adds += [(i, i) for i in (rng.choice(ids) for _ in range(diag))]
        if trace == kind:
            i = rng.choice(ids)
            adds.append((i, i))
    rng.shuffle(adds)
    return adds


def _apply_adds(s: FWSystem, adds) -> FWSystem:
    for t, src in adds:
        s = clifford_add(s, t, src)
    return s


def _clifford_system(seed, tag, t) -> tuple[random.Random, FWSystem, int]:
    # Cycle-free systems keep every disc on the embedded arc.
    for r in range(100):
        rng = _rng(seed, tag, t, r)
        s = random_system(rng, GenParams(max_discs=4, cycles=0))
        eyes = [e.index for e in s.eyes if e.n]
        if eyes:
            return rng, s, rng.choice(eyes)
    raise RuntimeError("no nonempty eye drawn")


def check_clifford(seed: int = 0, trials: int = 500) -> CheckResult:
    res = CheckResult("clifford")
    for t in range(trials):
        rng, s, eye = _clifford_system(seed, "cl", t)
        adds = _clifford_script(s, eye, rng)
        b = _apply_adds(s, adds)
        eq, wm, fm = clifford_equivalent(s, b)
        ids = [d.id for d in s.discs]
        witness = eq and wm.trace(ids) == 0 and fm.trace(ids) == 0
        same = compute_I(b).bits == compute_I(s).bits
        res.record(same and witness, trial=t, adds=adds, same_I=same, witness=witness)
    return res


def check_clifford_trace_flip(seed: int = 0, trials: int = 500) -> CheckResult:
    """A single diagonal Clifford add flips exactly the component of its eye."""
    res = CheckResult("clifford-trace-flip")
    for t in range(trials):
        rng, s, eye = _clifford_system(seed, "flip", t)
        kind = rng.choice([FINGER, WHITNEY])
        adds = _clifford_script(s, eye, rng, trace=kind)
        b = _apply_adds(s, adds)
        want = tuple(int(e.index == eye) for e in s.eyes)
        got = _xor(compute_I(b).bits, compute_I(s).bits)
        res.record(got == want, trial=t, adds=adds, got=list(got), want=list(want))
    return res


def check_tables(seed: int = 0, trials: int = 50, n: int = 5) -> CheckResult:
    """Standard order and transposition give equal upper sums when b is symmetric mod 2."""
    res = CheckResult("tables-n5")
    control = 0
    for t in range(trials):
        rng = _rng(seed, "tab", t)
        a = {(i, j): rng.randint(0, 3) for i in range(1, n + 1) for j in range(1, n + 1)}
        b = {}
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                b[(i, j)] = rng.randint(0, 3)
                b[(j, i)] = b[(i, j)] + 2 * rng.randint(0, 1)
        s1, s2 = upper_sum(reorder_table(a, b, 1)), upper_sum(reorder_table(a, b, 2))
        res.record(s1 % 2 == s2 % 2, trial=t, standard=s1, transposed=s2)
        asym = dict(b)
        asym[(2, 3)] += 1
        control += upper_sum(reorder_table(a, asym, 1)) % 2 != upper_sum(reorder_table(a, asym, 2)) % 2
    res.notes["asymmetric_differs"] = f"{control}/{trials}"
    return res


# independence oracles


def check_orderings(seed: int = 0, trials: int = 100) -> CheckResult:
    res = CheckResult("orderings")
    for t in range(trials):
        s = random_system(_rng(seed, "ord", t), GenParams(max_eyes=2, max_discs=4, cycles=1))
        got = all_orderings_I(s)
        res.record(len(got) == 1, trial=t, values=sorted(map(list, got)))
    return res


def ia_sample(seed: int, count: int, script_limit: int = 4):
    """IA systems with n <= 3 whose constructive script has at most script_limit moves."""
    out, r = [], 0
    while len(out) < count:
        s = random_system(_rng(seed, "ia", r), GenParams(max_eyes=2, max_discs=3, cycles=0))
        r += 1
        if any(v == "FingerFirstGeneral" for v in classify_position(s).values()):
            continue
        got = compute_I(s)
        if sum(1 for m in got.script if m.kind != "Compress") <= script_limit:
            out.append((s, got.bits))
    return out


def check_slide_scripts(seed: int = 0, trials: int = 100, depth: int = 4) -> CheckResult:
    res = CheckResult("slide-scripts")
    for t, (s, bits) in enumerate(ia_sample(seed, trials)):
        try:
            got = all_slide_scripts_I(s, depth=depth)
        except OracleError as e:
            res.record(False, trial=t, error=str(e))
            continue
        res.record(got == {bits}, trial=t, values=sorted(map(list, got)), pipeline=list(bits))
    return res


def check_parity(seed: int = 0, trials: int = 200) -> CheckResult:
    """Even changes to X and M changes on uncounted pairs leave I alone."""
    res = CheckResult("parity")
    for t, (s, bits) in enumerate(ia_sample(seed, trials, script_limit=99)):
        rng = _rng(seed, "par", t)
        m = set(s.m)
        for e in s.eyes:
            order = ia_ordering(s, e.index)
            for q, w in enumerate(order):
                for f in order[q + 1:]:
                    if s.disc(w).kind == WHITNEY and s.disc(f).kind == FINGER and rng.random() < 0.5:
                        m ^= {(f, w)}
        bump = lambda tab: {k: v + 2 * rng.randint(0, 2) for k, v in tab.items()}  # noqa: E731
        b = replace(s, m=frozenset(m), xg=bump(s.xg), xr=bump(s.xr), arcs=None, synthetic=True)
        good = parity_hypotheses(s, b) and compute_I(b).bits == bits
        res.record(good, trial=t)
    return res


def check_cross_layer(seed: int = 0, trials: int = 200, corpus_dir: Optional[str] = None) -> CheckResult:
    res = CheckResult("cross-layer")
    cases = geometric_corpus(trials, seed)
    bad = {i: (rec, errs) for i, rec, errs in run_corpus(cases, corpus_dir)}
    per_kind = Counter()
    for i, (_, rec) in enumerate(cases):
        if i in bad:
            per_kind[rec.kind] += 1
            res.record(False, case=i, move=rec.to_text(), errors=bad[i][1])
        else:
            res.record(True)
    res.notes["mismatch_by_kind"] = ",".join(f"{k}:{v}" for k, v in sorted(per_kind.items())) or "none"
    return res


# fuzzing


def faulty_apply(sys: FWSystem, rec: MoveRecord) -> FWSystem:
    """apply_move with a deliberately wrong M delta on Clifford adds (negative control)."""
    out = apply_move(sys, rec)
    if rec.kind != "CliffordAdd":
        return out
    d = out.disc(rec.get("target"))
    partner = next((e for e in out.discs if e.space == d.space and e.kind != d.kind and set(e.corners) & set(d.corners)), None)
    if partner is None:
        return out
    pair = (d.id, partner.id) if d.kind == FINGER else (partner.id, d.id)
    return replace(out, m=out.m ^ {pair})


def _fuzz_trial(args) -> dict:
    seed, t, max_eyes, max_discs, moves_per_trial, corpus_dir, apply = args
    rng = random.Random(f"{seed}/{t}")
    start = random_system(rng, GenParams(max_eyes=max_eyes, max_discs=max_discs))
    want = compute_I(start).bits
    s, script, kinds = start, [], []
    for step in range(rng.randint(1, moves_per_trial)):
        rec = random_applicable_move(rng, s)
        if rec is None:
            break
        try:
            s = apply(s, rec)
        except MoveError as e:
            return {"trial": t, "kinds": kinds, "failure": {"step": step, "move": rec.to_text(), "error": str(e)}}
        script.append(rec)
        kinds.append(rec.kind)
        problems = [str(v) for v in validate(s)]
        got = compute_I(s).bits
        if problems or got != want:
            fail = {"trial": t, "step": step, "move": rec.to_text(), "want": list(want), "got": list(got), "invalid": problems}
            if corpus_dir:
                fail["case"] = write_case(corpus_dir, "fuzz", start, script)
            return {"trial": t, "kinds": kinds, "failure": fail}
    return {"trial": t, "kinds": kinds, "failure": None}


def fuzz(
    seed: int = 0,
    trials: int = 10_000,
    max_eyes: int = 2,
    max_discs: int = 4,
    moves_per_trial: int = 5,
    corpus_dir: Optional[str] = None,
    apply: Callable[[FWSystem, MoveRecord], FWSystem] = apply_move,
    jobs: int = 1,
) -> CheckResult:
    """Random systems, 1..moves_per_trial random legal moves each; I must never change."""
    args = [(seed, t, max_eyes, max_discs, moves_per_trial, corpus_dir, apply) for t in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            outs = list(pool.map(_fuzz_trial, args, chunksize=64))
    else:
        outs = [_fuzz_trial(a) for a in args]
    res = CheckResult("fuzz")
    moves = Counter()
    for out in sorted(outs, key=lambda o: o["trial"]):
        moves.update(out["kinds"])
        if out["failure"]:
            res.record(False, **out["failure"])
        else:
            res.record(True)
    res.notes["moves"] = sum(moves.values())
    res.notes["by_kind"] = ",".join(f"{k}:{v}" for k, v in sorted(moves.items()))
    return res


SUITES = {
    "key": check_key,
    "padding": check_padding,
    "homomorphism": check_homomorphism,
    "symmetry": check_symmetry,
    "clifford": check_clifford,
    "clifford-trace-flip": check_clifford_trace_flip,
    "tables-n5": check_tables,
    "orderings": check_orderings,
    "slide-scripts": check_slide_scripts,
    "parity": check_parity,
    "cross-layer": check_cross_layer,
}

DEFAULT_TRIALS = {
    "key": 1,
    "padding": 3,
    "homomorphism": 500,
    "symmetry": 500,
    "clifford": 500,
    "clifford-trace-flip": 500,
    "tables-n5": 50,
    "orderings": 100,
    "slide-scripts": 100,
    "parity": 200,
    "cross-layer": 200,
}

__all__ = ["CheckResult", "DEFAULT_TRIALS", "SUITES", "faulty_apply", "fuzz", "ia_sample"] + [f.__name__ for f in SUITES.values()]
