"""Seeded random systems and applicable moves for fuzzing."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

from .moves import MoveError, MoveRecord, apply_move, _require_path_component
from .system import (
    FINGER,
    WHITNEY,
    CrossRecord,
    DiscRecord,
    EyeRecord,
    FWSystem,
    id_key,
    standard_system,
)

FUZZ_KINDS = (
    "GSlide",
    "RSlide",
    "GRotate",
    "RRotate",
    "CliffordAdd",
    "SphereSlide",
    "Birth",
    "Death",
    "X3Plus",
    "X3Minus",
    "Saddle",
    "Unsaddle",
    "Spin",
)


@dataclass(frozen=True)
class GenParams:
    max_eyes: int = 2
    max_discs: int = 4
    max_crossing: int = 2
    cross_discs: int = 0
    twist_range: int = 0
    cycles: int = 1
    offsets: bool = True
    geometric: bool = False
    min_eyes: int = 1

    def __post_init__(self):
        if not 1 <= self.min_eyes <= self.max_eyes <= 8:
            raise ValueError("need 1 <= min_eyes <= max_eyes <= 8")
        if not 0 <= self.max_discs <= 8:
            raise ValueError("max_discs must be in 0..8")
        if self.max_crossing < 0 or self.cross_discs < 0 or self.twist_range < 0 or self.cycles < 0:
            raise ValueError("bounds must be nonnegative")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _insert_cycle(discs: list[DiscRecord], eye: int, after: int, f: str, w: str) -> list[DiscRecord]:
    out = []
    for d in discs:
        if d.space == ("eye", eye):
            c = tuple(sorted(p + 2 if p > after else p for p in d.corners))
            d = replace(d, gcorners=c, rcorners=c)
        out.append(d)
    c = (after + 1, after + 2)
    out.append(DiscRecord(f, FINGER, eye, eye, c, c))
    out.append(DiscRecord(w, WHITNEY, eye, eye, c, c))
    return out


def random_system(seed, params: GenParams = GenParams()) -> FWSystem:
    """A valid system: framed finger form per eye plus 2-cycles, with random data.

    Crossing data comes from random diagram arcs (arcdiag.attach_random_arcs)
    when params.geometric is set, and also whenever the draw is small enough for
    the arc layer: one eye, n <= 3, no 2-cycles, no cross discs.  Otherwise
    crossings are random integers and the system is flagged synthetic.
    """
    rng = _rng(seed)
    k = rng.randint(params.min_eyes, params.max_eyes)
    if params.geometric:
        k = 1
    total = rng.randint(0 if k > 1 else 1, params.max_discs) if params.max_discs else 0
    ns = [0] * k
    for _ in range(total):
        ns[rng.randrange(k)] += 1
    cyc = [0] * k
    for e in range(k):
        if params.cycles and ns[e] > 1 and not params.geometric:
            cyc[e] = rng.randint(0, min(params.cycles, ns[e] - 1))
    base = standard_system([n - c for n, c in zip(ns, cyc)])
    discs = list(base.discs)
    counter = max([id_key(d.id)[1] for d in discs], default=0)
    eyes = []
    born: set[str] = set()
    for e in range(1, k + 1):
        n_path = ns[e - 1] - cyc[e - 1]
        top = 2 * n_path
        for _ in range(cyc[e - 1]):
            counter += 1
            after = rng.randint(0, top)
            discs = _insert_cycle(discs, e, after, f"f{counter}", f"w{counter}")
            born |= {f"f{counter}", f"w{counter}"}
            top += 2
        eyes.append(EyeRecord(e, ns[e - 1]))
    arcs = params.geometric or (k == 1 and ns[0] <= 3 and not cyc[0])
    crosses = []
    if params.cross_discs and k > 1:
        r, g = rng.sample(range(1, k + 1), 2)
        mm = params.cross_discs
        crosses.append(CrossRecord(r, g, mm))
        for j in range(1, mm + 1):
            fc = (2 * j - 2, 2 * j - 1)
            wc = tuple(sorted((2 * j - 1, (2 * j) % (2 * mm))))
            discs.append(DiscRecord(f"cf{j}", FINGER, r, g, fc, fc))
            discs.append(DiscRecord(f"cw{j}", WHITNEY, r, g, wc, wc))
    if params.twist_range:
        t = params.twist_range
        out = []
        for d in discs:
            if rng.random() < 0.25:
                p = rng.randint(-t, t)
                q = rng.choice([x for x in range(-t, t + 1) if (p + x) % 2 == 0])
                d = replace(d, germ=(p, q))
            out.append(d)
        discs = out
    if params.offsets:
        out = []
        for d in discs:
            if d.kind == FINGER and not d.is_cross and d.id not in born and rng.random() < 0.3:
                pts = range(2 * ns[d.reye - 1] + 1)
                d = replace(d, h2=frozenset(p for p in pts if rng.random() < 0.3))
            out.append(d)
        discs = out
    fs = [d for d in discs if d.kind == FINGER]
    ws = [d for d in discs if d.kind == WHITNEY]
    m, xg, xr = set(), {}, {}
    for f in fs:
        for w in ws:
            if f.id in born or w.id in born:
                # a 2-cycle enters as a local birth: no data against anything
                continue
            if rng.random() < 0.4:
                m.add((f.id, w.id))
            if params.max_crossing and not arcs:
                if f.geye == w.geye and rng.random() < 0.4:
                    xg[(f.id, w.id)] = rng.randint(0, params.max_crossing)
                if f.reye == w.reye and rng.random() < 0.4:
                    xr[(f.id, w.id)] = rng.randint(0, params.max_crossing)
    sys = FWSystem(
        eyes=tuple(eyes), discs=tuple(discs), m=frozenset(m), xg=xg, xr=xr,
        crosses=tuple(crosses), synthetic=bool(params.max_crossing) and not arcs,
    )
    if arcs:
        from .arcdiag import attach_random_arcs

        sys = attach_random_arcs(sys, rng, params.max_crossing)
    return sys


def _on_path(sys: FWSystem, ids) -> bool:
    try:
        _require_path_component(sys, list(ids), "move")
        return True
    except MoveError:
        return False


def _candidates(sys: FWSystem, kind: str, rng: random.Random) -> Optional[MoveRecord]:
    discs = list(sys.discs)
    eyes = [e.index for e in sys.eyes]
    if kind in ("GSlide", "RSlide"):
        s = kind[0]
        pairs = [
            (a.id, b.id) for a in discs for b in discs
            if a.id != b.id and a.kind == b.kind and a.sphere(s) == b.sphere(s)
        ]
        pairs = [p for p in pairs if _on_path(sys, p)]
        if not pairs:
            return None
        mover, over = rng.choice(pairs)
        return MoveRecord.make(
            kind, mover=mover, over=over, twist=rng.choice([0, 0, 1, -1, 2]),
            path=f"P{rng.randrange(3)}", side=rng.choice([1, 1, -1]),
        )
    if kind in ("GRotate", "RRotate"):
        cands = [d for d in discs if d.untwisted and _on_path(sys, [d.id])]
        if not cands:
            return None
        d = rng.choice(cands)
        return MoveRecord.make(kind, disc=d.id, corner=rng.choice(d.corners), sign=rng.choice([1, -1]))
    if kind in ("CliffordAdd", "SphereSlide"):
        pairs = [(a.id, b.id) for a in discs for b in discs if a.id != b.id and a.kind == b.kind and a.space == b.space]
        if not pairs:
            return None
        t, s = rng.choice(pairs)
        if kind == "CliffordAdd":
            return MoveRecord.make(kind, target=t, source=s, count=rng.choice([1, 1, 2, 3]))
        return MoveRecord.make(kind, mover=t, over=s)
    if kind == "Birth":
        return MoveRecord.make(kind, eye=rng.choice(eyes))
    if kind in ("Death", "X3Minus", "Unsaddle"):
        opts = []
        for e in eyes:
            for f in sys.fingers(e):
                for w in sys.whitneys(e):
                    opts.append(MoveRecord.make(kind, eye=e, f=f.id, w=w.id))
        rng.shuffle(opts)
        for rec in opts:
            try:
                apply_move(sys, rec)
                return rec
            except MoveError:
                continue
        return None
    if kind == "X3Plus":
        e = rng.choice(eyes)
        return MoveRecord.make(kind, eye=e, point=rng.randrange(sys.eye(e).point_count), case="-")
    if kind == "Saddle":
        e = rng.choice(eyes)
        pts = [p for p in sys.eye(e).points if WHITNEY in sys.occupants(("eye", e), p)]
        if not pts:
            return None
        p = rng.choice(pts)
        fs = [f.id for f in sys.fingers(e)]
        m = {f for f in fs if rng.random() < 0.3}
        xg = {f: rng.randint(1, 2) for f in fs if rng.random() < 0.2}
        xr = {f: rng.randint(1, 2) for f in fs if rng.random() < 0.2}
        wo = sys.occupants(("eye", e), p)[WHITNEY]
        if not _on_path(sys, [wo]):
            m, xg, xr = set(), {}, {}
        return MoveRecord.make(kind, eye=e, point=p, m=m, xg=xg, xr=xr)
    if kind == "Spin":
        e = rng.choice(eyes)
        fs = [f.id for f in sys.fingers(e)]
        if len(fs) < 2:
            return None
        i, j = rng.sample(fs, 2)
        targets = sorted((w.id for w in sys.whitneys(e) if rng.random() < 0.5), key=id_key)
        return MoveRecord.make(kind, i=i, j=j, targets=targets)
    raise ValueError(f"unknown kind {kind}")


def random_applicable_move(seed, sys: FWSystem, kinds=FUZZ_KINDS, attempts: int = 40) -> Optional[MoveRecord]:
    """A move whose preconditions hold on sys, or None when nothing applies."""
    rng = _rng(seed)
    for _ in range(attempts):
        kind = rng.choice(list(kinds))
        rec = _candidates(sys, kind, rng)
        if rec is None:
            continue
        try:
            apply_move(sys, rec)
        except MoveError:
            continue
        return rec
    return None


__all__ = ["FUZZ_KINDS", "GenParams", "random_applicable_move", "random_system"]
