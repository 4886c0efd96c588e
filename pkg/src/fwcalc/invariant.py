"""The invariant: Î on IA eyes, the switch/slide pipeline for I, and concatenation."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Sequence

from .homology import solve_gf2
from .moves import MoveError, MoveRecord, SwitchInfo, apply_move, default_order, k_switch
from .system import (
    FINGER,
    WHITNEY,
    CrossRecord,
    DiscRecord,
    EyeRecord,
    FWSystem,
    NotIAError,
    SystemError_,
    classify_position,
    ia_ordering,
    id_key,
    relabel_points,
    serialize,
)


@dataclass(frozen=True)
class InvariantResult:
    bits: tuple[int, ...]
    script: tuple[MoveRecord, ...] = ()
    orders: tuple[tuple[int, tuple[str, ...]], ...] = ()

    @property
    def total(self) -> int:
        return sum(self.bits) % 2

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.bits) + ")"


def hat_I_eye(sys: FWSystem, eye: int, switch_info: Optional[SwitchInfo] = None) -> int:
    """Sum of M(f_p, w_q) over p <= q in the IA order of one eye, cross discs excluded."""
    order = ia_ordering(sys, eye, switch_info)
    total = 0
    seen_f = []
    for d in order:
        if sys.disc(d).kind == FINGER:
            seen_f.append(d)
        else:
            total += sum(1 for f in seen_f if (f, d) in sys.m)
    return total % 2


def hat_I(sys: FWSystem, switch_info: Optional[Mapping[int, SwitchInfo]] = None) -> tuple[int, ...]:
    infos = switch_info or {}
    return tuple(hat_I_eye(sys, e.index, infos.get(e.index)) for e in sys.eyes)


def _partner_vector(sys: FWSystem, w: str, fingers: Sequence[str]) -> int:
    v = 0
    for p in sys.partners(w):
        if p in fingers:
            v ^= 1 << fingers.index(p)
    return v


def _solve(vectors: list[int], target: int, n: int) -> list[int]:
    """Coefficients c with sum c_j vectors[j] = target over GF(2)."""
    rows = [sum(1 << j for j, v in enumerate(vectors) if (v >> k) & 1) for k in range(n)]
    rhs = [(target >> k) & 1 for k in range(n)]
    x = solve_gf2(rows, rhs, len(vectors))
    if x is None:
        raise MoveError("crossing parities are not in the span of the corner partners")
    return [j for j in range(len(vectors)) if (x >> j) & 1]


def _rotation(sys: FWSystem, w: str, surface: str) -> MoveRecord:
    other = "R" if surface == "G" else "G"
    partners = sys.partners(w)
    counts = {p: partners.count(p) for p in partners}
    sign = -1 if all(sys.X(other, p, w) >= c for p, c in counts.items()) else 1
    kind = "GRotate" if surface == "G" else "RRotate"
    return MoveRecord.make(kind, disc=w, corner=sys.disc(w).neg_corner, sign=sign)


def slide_to_EA(sys: FWSystem, eye: int, switch_info: Optional[SwitchInfo] = None) -> tuple[FWSystem, list[MoveRecord]]:
    """Reach EA on one IA eye.

    First G-slides and R-rotations clear the G crossing parities, then R-slides
    and G-rotations clear the R parities; the remaining crossings are even and
    are compressed away.
    """
    order = ia_ordering(sys, eye, switch_info)
    fingers = [d for d in order if sys.disc(d).kind == FINGER]
    whitneys = [d for d in order if sys.disc(d).kind == WHITNEY]
    script: list[MoveRecord] = []
    if classify_position(sys)[eye] == "EA":
        return sys, script
    P = [_partner_vector(sys, w, fingers) for w in whitneys]
    for surface, slide in (("G", "GSlide"), ("R", "RSlide")):
        rot_surface = "R" if surface == "G" else "G"
        for i, w in enumerate(whitneys):
            v = 0
            for k, f in enumerate(fingers):
                if sys.X(surface, f, w) % 2:
                    v |= 1 << k
            if not v:
                continue
            coeffs = _solve(P, v, len(fingers))
            overs = sorted((whitneys[j] for j in coeffs if j != i), key=id_key)
            for o in overs:
                rec = MoveRecord.make(slide, mover=w, over=o, twist=0, path="P0")
                sys = apply_move(sys, rec)
                script.append(rec)
            if i in coeffs:
                rec = _rotation(sys, w, rot_surface)
                sys = apply_move(sys, rec)
                script.append(rec)
    if classify_position(sys)[eye] != "EA":
        rec = MoveRecord.make("Compress", eye=eye)
        sys = apply_move(sys, rec)
        script.append(rec)
    if classify_position(sys)[eye] != "EA":
        raise MoveError(f"eye {eye} did not reach EA")
    return sys, script


def compute_I(sys: FWSystem, order: Optional[Mapping[int, Sequence[str]]] = None) -> InvariantResult:
    """Switch each eye to IA, slide to EA and read off Î per eye."""
    order = order or {}
    bits, script, used = [], [], []
    for e in sys.eyes:
        eye = e.index
        if e.n == 0:
            bits.append(0)
            continue
        ordering = tuple(order.get(eye) or sys.w_order.get(eye) or default_order(sys, eye))
        used.append((eye, ordering))
        switched, info = k_switch(sys, eye, ordering)
        if info.k:
            script.append(MoveRecord.make("KSwitch", eye=eye, order=ordering))
        ea, steps = slide_to_EA(switched, eye, info)
        script += steps
        bits.append(hat_I_eye(ea, eye, info))
    return InvariantResult(tuple(bits), tuple(script), tuple(used))


def report(sys: FWSystem, result: Optional[InvariantResult] = None) -> dict:
    result = result or compute_I(sys)
    return {
        "input": hashlib.sha256(serialize(sys).encode()).hexdigest()[:16],
        "script": [r.to_text() for r in result.script],
        "bits": list(result.bits),
        "total": result.total,
    }


# concatenation


def f_unpaired(sys: FWSystem, eye: int) -> int:
    covered = {c for d in sys.fingers(eye) for c in d.corners}
    free = [p for p in sys.eye(eye).points if p not in covered]
    if len(free) != 1:
        raise SystemError_(f"eye {eye}: fingers leave {len(free)} points unpaired")
    return free[0]


def _shift(d: DiscRecord, by: int, new_id: str) -> DiscRecord:
    c = tuple(x + by for x in d.corners)
    return replace(d, id=new_id, gcorners=c, rcorners=c, h2=frozenset(x + by for x in d.h2))


def concatenate(a: FWSystem, b: FWSystem) -> FWSystem:
    """Stack B before A on each eye: B's arc ends where A's begins.

    Discs are renumbered with B's first; there is no data between the blocks.
    B's a_0 becomes the a_0 of the result, so only B may carry a_0 collar data.
    """
    if len(a.eyes) != len(b.eyes):
        raise SystemError_(f"eye counts differ: {len(a.eyes)} vs {len(b.eyes)}")
    if a.a0:
        raise SystemError_("the second factor's a_0 becomes interior; it must carry no collar data")
    for e in b.eyes:
        u, top = f_unpaired(b, e.index), 2 * e.n
        if u != top:
            b = relabel_points(b, ("eye", e.index), {u: top, top: u})
    counters = {"f": 0, "w": 0, "cf": 0, "cw": 0}
    rename: dict[tuple[str, str], str] = {}

    def fresh(d: DiscRecord) -> str:
        pre = ("c" if d.is_cross else "") + ("f" if d.kind == FINGER else "w")
        counters[pre] += 1
        return f"{pre}{counters[pre]}" + ("*" if d.id.endswith("*") else "")

    discs: list[DiscRecord] = []
    eyes = []
    for e in a.eyes:
        nb = b.eye(e.index).n
        eyes.append(EyeRecord(e.index, e.n + nb))
        for tag, src, by in (("B", b, 0), ("A", a, 2 * nb)):
            for d in sorted(src.in_space(("eye", e.index)), key=lambda d: (d.kind, id_key(d.id))):
                new = fresh(d)
                rename[(tag, d.id)] = new
                discs.append(_shift(d, by, new))
    crosses = []
    pairs = sorted({(c.reye, c.geye) for c in a.crosses + b.crosses})
    for r, g in pairs:
        ca, cb = a.cross(r, g), b.cross(r, g)
        ma, mb = (ca.m if ca else 0), (cb.m if cb else 0)
        crosses.append(CrossRecord(r, g, ma + mb))
        for tag, src, by in (("B", b, 0), ("A", a, 2 * mb)):
            for d in sorted(src.in_space(("cross", r, g)), key=lambda d: (d.kind, id_key(d.id))):
                new = fresh(d)
                rename[(tag, d.id)] = new
                discs.append(_shift(d, by, new))
    m, xg, xr = set(), {}, {}
    for tag, src in (("A", a), ("B", b)):
        for f, w in src.m:
            m.add((rename[(tag, f)], rename[(tag, w)]))
        for (f, w), v in src.xg.items():
            xg[(rename[(tag, f)], rename[(tag, w)])] = v
        for (f, w), v in src.xr.items():
            xr[(rename[(tag, f)], rename[(tag, w)])] = v
    w_order = {}
    for e in a.eyes:
        if e.index in a.w_order and e.index in b.w_order:
            w_order[e.index] = tuple(rename[("B", w)] for w in b.w_order[e.index]) + tuple(
                rename[("A", w)] for w in a.w_order[e.index]
            )
    return FWSystem(
        eyes=tuple(eyes),
        discs=tuple(discs),
        m=frozenset(m),
        xg=xg,
        xr=xr,
        crosses=tuple(crosses),
        w_order=w_order,
        synthetic=a.synthetic or b.synthetic,
        a0={rename[("B", f)]: v for f, v in b.a0.items()},
    )


# parity hypotheses


def parity_report(a: FWSystem, b: FWSystem) -> list[str]:
    """Which of the parity hypotheses fail for the pair (empty when all hold)."""
    out = []
    if [(d.id, d.kind, d.space, d.corners) for d in a.discs] != [(d.id, d.kind, d.space, d.corners) for d in b.discs]:
        return ["i: corners do not match"]
    ca, cb = classify_position(a), classify_position(b)
    if any(v == "FingerFirstGeneral" for v in list(ca.values()) + list(cb.values())):
        return ["ii: both systems must be IA"]
    try:
        if hat_I(a) != hat_I(b):
            out.append("ii: hat I differs")
    except NotIAError:
        out.append("ii: both systems must be IA")
    for s, ta, tb in (("G", a.xg, b.xg), ("R", a.xr, b.xr)):
        for k in set(ta) | set(tb):
            if (ta.get(k, 0) - tb.get(k, 0)) % 2:
                out.append(f"iii: X_{s}{k} differs by an odd amount")
    return out


def parity_hypotheses(a: FWSystem, b: FWSystem) -> bool:
    return not parity_report(a, b)


__all__ = [
    "InvariantResult",
    "compute_I",
    "concatenate",
    "hat_I",
    "hat_I_eye",
    "parity_hypotheses",
    "parity_report",
    "report",
    "slide_to_EA",
]
