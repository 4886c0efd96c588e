"""Independent checks: exhaustive slide and ordering enumeration, geometric replay of moves."""

from __future__ import annotations

import hashlib
import itertools
import os
import random
from typing import Iterable, Mapping, Optional, Sequence

from .arcdiag import (
    HALVES,
    ArcError,
    DiagramArc,
    _element,
    arc_violations,
    band_sums,
    crossings_from_arcs,
    rotate_arc,
    surface_table,
)
from .invariant import compute_I, hat_I
from .moves import MoveError, MoveRecord, apply_move, compress, format_script
from .system import (
    FINGER,
    FWSystem,
    classify_position,
    id_key,
    ia_ordering,
    serialize,
)


class GeometryError(ValueError):
    """The system or the move has no concrete arc realization."""


class OracleError(ValueError):
    """An enumeration ran out of budget without reaching a terminal state."""


# brute force on the arc layer


def brute_force_intersection(a: DiagramArc, b: DiagramArc, limit: int = 200_000) -> int:
    """Least crossing count of two reduced arcs over every ordering of strands in every gap.

    Exponential; independent of the ordering rule used by the arc layer.
    """
    arcs = [a.reduced(), b.reduced()]
    m = a.points
    buckets: dict[tuple, list] = {}
    for ai, arc in enumerate(arcs):
        for i in range(len(arc.gaps) + 2):
            buckets.setdefault(_element(arc, i), []).append((ai, i))
    elems = sorted(buckets)
    size = 1
    for e in elems:
        for k in range(2, len(buckets[e]) + 1):
            size *= k
    if size > limit:
        raise ArcError(f"{size} strand orderings exceed the brute-force limit")
    best = None
    for perms in itertools.product(*(itertools.permutations(buckets[e]) for e in elems)):
        order = dict(zip(elems, perms))
        total = 0
        for h in HALVES:
            where: dict = {}
            for p in range(2 * m):
                e = ("G", p // 2) if p % 2 == 0 else ("C", p // 2, h)
                for pt in order.get(e, ()):
                    where[pt] = len(where)
            chords = []
            for ai, arc in enumerate(arcs):
                for k in range(len(arc.gaps) + 1):
                    if arc.half(k) == h:
                        p, q = where[(ai, k)], where[(ai, k + 1)]
                        chords.append((ai, min(p, q), max(p, q)))
            for x, (ax, p1, q1) in enumerate(chords):
                for bx, p2, q2 in chords[x + 1:]:
                    if ax != bx and (p1 < p2 < q1 < q2 or p2 < p1 < q2 < q1):
                        total += 1
        best = total if best is None else min(best, total)
        if best == 0:
            break
    return best or 0


# geometric replay

CARRIED = ("CliffordAdd", "SphereSlide", "Spin", "Birth", "Death", "X3Plus", "X3Minus", "Saddle", "Unsaddle")
REROUTED = ("GSlide", "RSlide", "GRotate", "RRotate")


def _require_geometric(sys: FWSystem):
    if sys.arcs is None:
        raise GeometryError("system carries no diagram arcs")
    if sys.synthetic:
        raise GeometryError("system is flagged synthetic")
    if len(sys.eyes) != 1 or sys.crosses:
        raise GeometryError("the geometric layer covers single-eye systems only")
    bad = arc_violations(sys)
    if bad:
        raise GeometryError(f"arcs do not realize the system: {bad[0]}")


def _recount(sys: FWSystem, arcs: Mapping) -> FWSystem:
    out = sys.evolve(arcs=arcs)
    xg, xr = crossings_from_arcs(out)
    return out.evolve(xg=xg, xr=xr)


def _candidates(sys: FWSystem, rec: MoveRecord) -> list[dict]:
    p = dict(rec.params)
    eye = sys.eyes[0].index
    if rec.kind in ("GSlide", "RSlide"):
        surface = rec.kind[0]
        ids, arcs, _ = surface_table(sys, eye, surface)
        out = []
        for arc in band_sums(arcs, ids.index(p["mover"]), ids.index(p["over"])):
            new = dict(sys.arcs)
            new[(p["mover"], surface)] = arc
            out.append(new)
        return out
    disc, other = p["disc"], ("R" if rec.kind == "GRotate" else "G")
    out = []
    for ccw in (True, False):
        new = dict(sys.arcs)
        new[(disc, other)] = rotate_arc(sys.arcs[(disc, other)], ccw)
        out.append(new)
    return out


def _geometric_errors(geo: FWSystem, ax: FWSystem) -> list[str]:
    diff = []
    for s, gt, at in (("G", geo.xg, ax.xg), ("R", geo.xr, ax.xr)):
        for key in sorted(set(gt) | set(at)):
            if gt.get(key, 0) != at.get(key, 0):
                diff.append(f"X{s} {key[0]} {key[1]}: axiomatic {at.get(key, 0)}, geometric {gt.get(key, 0)}")
    for key in sorted(geo.m ^ ax.m):
        diff.append(f"M {key[0]} {key[1]}: axiomatic {int(key in ax.m)}, geometric {int(key in geo.m)}")
    for v in arc_violations(geo.evolve(xg=ax.xg, xr=ax.xr)):
        if v.invariant != "geometric crossings":
            diff.append(f"{v.field}: {v.message}")
    return diff


def geometric_apply(sys: FWSystem, rec: MoveRecord) -> FWSystem:
    """Replay a move on the arc layer and recount every crossing in minimal position.

    Slides are realized as band sums through faces of the diagram, rotations by
    winding the arc on the other sphere once around both end circles.  Several
    realizations may exist (the path descriptor does not pin one down); the
    first whose counts agree with the axiomatic move is returned, else the first.
    Interior parities come from replaying the move on crossing rows read off the arcs.
    """
    _require_geometric(sys)
    measured = sys.evolve(**dict(zip(("xg", "xr"), crossings_from_arcs(sys))))
    try:
        ax = apply_move(measured, rec)
    except MoveError as exc:
        raise GeometryError(f"move does not apply: {exc}") from None
    if rec.kind in CARRIED:
        if ax.arcs is None:
            raise GeometryError(f"{rec.kind} with these parameters has no arc realization")
        return _recount(ax, ax.arcs)
    if rec.kind not in REROUTED:
        raise GeometryError(f"{rec.kind} has no arc realization")
    tries = _candidates(sys, rec)
    if not tries:
        raise GeometryError("no band joins the two arcs without crossing the diagram")
    results = [_recount(ax, arcs) for arcs in tries]
    for geo in results:
        if not _geometric_errors(geo, ax):
            return geo
    return results[0]


def cross_validate(sys: FWSystem, rec: MoveRecord) -> tuple[bool, list[str]]:
    """Apply a move on both layers; compare crossings exactly and interior parities mod 2."""
    _require_geometric(sys)
    ax = apply_move(sys, rec)
    geo = geometric_apply(sys, rec)
    diff = _geometric_errors(geo, ax)
    return not diff, diff


# exhaustive slide scripts


def _parity_state(sys: FWSystem) -> FWSystem:
    odd = lambda t: {k: 1 for k, v in t.items() if v % 2}  # noqa: E731
    a0 = {k: tuple(x % 2 for x in v) for k, v in sys.a0.items()}
    return sys.evolve(xg=odd(sys.xg), xr=odd(sys.xr), arcs=None, a0=a0, synthetic=False)


def _slide_moves(sys: FWSystem, twists: Sequence[int]) -> list[MoveRecord]:
    out = []
    discs = [d for d in sys.discs if not d.is_cross]
    for s in ("G", "R"):
        for a in discs:
            for b in discs:
                if a.id != b.id and a.kind == b.kind and a.space == b.space:
                    for t in twists:
                        out.append(MoveRecord.make(f"{s}Slide", mover=a.id, over=b.id, twist=t))
        for a in discs:
            if a.untwisted:
                out.append(MoveRecord.make(f"{s}Rotate", disc=a.id, corner=a.corners[0], sign=1))
    return out


def _even(sys: FWSystem) -> bool:
    return not any(v % 2 for v in sys.xg.values()) and not any(v % 2 for v in sys.xr.values())


def _finish(sys: FWSystem) -> tuple[int, ...]:
    for e in sys.eyes:
        if classify_position(sys)[e.index] != "EA":
            sys = compress(sys, e.index)
    return hat_I(sys)


def _crossing_keys(sys: FWSystem) -> list[tuple[str, str, str]]:
    out = []
    for s in ("G", "R"):
        for f in sys.fingers():
            for w in sys.whitneys():
                if f.sphere(s) == w.sphere(s):
                    out.append((s, f.id, w.id))
    return out


def _with_parities(state: FWSystem, keys, bits: int) -> FWSystem:
    xg = {(f, w): 1 for i, (s, f, w) in enumerate(keys) if s == "G" and (bits >> i) & 1}
    xr = {(f, w): 1 for i, (s, f, w) in enumerate(keys) if s == "R" and (bits >> i) & 1}
    return state.evolve(xg=xg, xr=xr)


def _parity_bits(state: FWSystem, keys) -> int:
    out = 0
    for i, (s, f, w) in enumerate(keys):
        if state.X(s, f, w) % 2:
            out |= 1 << i
    return out


def _bits(t: tuple[int, ...]) -> int:
    return sum(b << i for i, b in enumerate(t))


def _affine_action(sys: FWSystem, rec: MoveRecord, keys) -> Optional[tuple[int, int, list[int]]]:
    """(parity shift, Î shift at zero parities, Î shift per parity bit) of one move, or None if it never applies.

    Read off by applying the move to the zero-parity state and to each unit
    parity state; raises OracleError if the parity shift depends on the state.
    """
    base = _parity_state(sys)
    zero = _with_parities(base, keys, 0)
    h0 = _bits(hat_I(zero))
    try:
        r0 = apply_move(zero, rec)
    except MoveError:
        return None
    shift = _parity_bits(r0, keys)
    c = _bits(hat_I(r0)) ^ h0
    lin = []
    for i in range(len(keys)):
        r = apply_move(_with_parities(base, keys, 1 << i), rec)
        if _parity_bits(r, keys) != shift ^ (1 << i):
            raise OracleError(f"{rec}: crossing parities do not shift by a constant")
        lin.append(_bits(hat_I(r)) ^ h0 ^ c)
    return shift, c, lin


def all_slide_scripts_I(
    sys: FWSystem, depth: int = 4, twists: Sequence[int] = (0, 1), exact: bool = False
) -> set[tuple[int, ...]]:
    """Î at every state with even crossings reachable by at most `depth` slides and rotations.

    Slides and rotations shift crossing parities by constants and change Î by
    an affine function of them, and compressing even crossings leaves Î alone.
    So the search runs over (crossing parities, Î) pairs, with each move's
    action probed once through apply_move.  exact=True searches whole parity
    projected systems instead (slow; for cross-checking at small depth).
    The input must be IA or EA on every eye.
    """
    if depth > 4:
        raise ValueError("depth is limited to 4")
    if any(v == "FingerFirstGeneral" for v in classify_position(sys).values()):
        raise OracleError("exhaustive slide scripts need an IA system")
    if exact:
        return _exact_scripts(sys, depth, twists)
    k = len(sys.eyes)
    keys = _crossing_keys(sys)
    start = _parity_state(sys)
    actions = []
    for rec in _slide_moves(start, twists):
        act = _affine_action(sys, rec, keys)
        if act is not None:
            actions.append(act)
    x0 = _parity_bits(start, keys)
    frontier = {(x0, _bits(hat_I(start)))}
    seen = set(frontier)
    found = set()
    for level in range(depth + 1):
        found |= {v for x, v in frontier if x == 0}
        if level == depth:
            break
        nxt = set()
        for x, v in frontier:
            for shift, c, lin in actions:
                dv = c
                y = x
                while y:
                    low = y & -y
                    dv ^= lin[low.bit_length() - 1]
                    y ^= low
                state = (x ^ shift, v ^ dv)
                if state not in seen:
                    seen.add(state)
                    nxt.add(state)
        frontier = nxt
    if not found:
        raise OracleError(f"no state with even crossings within depth {depth}")
    return {tuple((v >> e) & 1 for e in range(k)) for v in found}


def _exact_scripts(sys: FWSystem, depth: int, twists: Sequence[int]) -> set[tuple[int, ...]]:
    start = _parity_state(sys)
    seen = {serialize(start)}
    frontier = [start]
    found: set[tuple[int, ...]] = set()
    for level in range(depth + 1):
        nxt = []
        for state in frontier:
            if _even(state):
                found.add(_finish(state))
            if level == depth:
                continue
            for rec in _slide_moves(state, twists):
                try:
                    new = _parity_state(apply_move(state, rec))
                except MoveError:
                    continue
                key = serialize(new)
                if key not in seen:
                    seen.add(key)
                    nxt.append(new)
        frontier = nxt
    if not found:
        raise OracleError(f"no state with even crossings within depth {depth}")
    return found


def all_orderings_I(sys: FWSystem) -> set[tuple[int, ...]]:
    """I under every total order of each eye's Whitney discs."""
    per_eye = []
    for e in sys.eyes:
        ws = sorted((w.id for w in sys.whitneys(e.index)), key=id_key)
        if len(ws) > 4:
            raise ValueError("ordering enumeration is limited to n <= 4 per eye")
        per_eye.append([(e.index, o) for o in itertools.permutations(ws)])
    out = set()
    for combo in itertools.product(*per_eye):
        out.add(compute_I(sys, order=dict(combo)).bits)
    return out


def ia_closed_form(sys: FWSystem, eye: int) -> int:
    """Î of an IA eye computed directly from M and crossing parities, without sliding.

    Sums M(f, w) over f before w in the IA order, plus one for every pair of odd
    G-crossing (f, w) and odd R-crossing (k, l) with f before l and k before w.
    Offsets and collar data are not modeled here.
    """
    order = ia_ordering(sys, eye)
    pf, pw = {}, {}
    for i, d in enumerate(order):
        (pf if sys.disc(d).kind == FINGER else pw)[d] = i
    s = 0
    for f in pf:
        for w in pw:
            if pf[f] <= pw[w] and (f, w) in sys.m:
                s ^= 1
    g = [(f, w) for (f, w), v in sys.xg.items() if v % 2 and f in pf and w in pw]
    r = [(k, l) for (k, l), v in sys.xr.items() if v % 2 and k in pf and l in pw]
    for f, w in g:
        for k, l in r:
            if pf[f] <= pw[l] and pf[k] <= pw[w]:
                s ^= 1
    return s


# corpus


def _hash(sys: FWSystem, script: Sequence[MoveRecord]) -> str:
    h = hashlib.sha256((serialize(sys) + format_script(script)).encode())
    return h.hexdigest()[:16]


def write_case(root: str, category: str, sys: FWSystem, script: Sequence[MoveRecord]) -> str:
    """Store a system and a script as corpus/<category>/<hash>.fwsys and .script; returns the stem."""
    folder = os.path.join(root, category)
    os.makedirs(folder, exist_ok=True)
    stem = os.path.join(folder, _hash(sys, script))
    with open(stem + ".fwsys", "w") as fh:
        fh.write(serialize(sys))
    with open(stem + ".script", "w") as fh:
        fh.write(format_script(script))
    return stem


def read_case(stem: str) -> tuple[FWSystem, list[MoveRecord]]:
    from .moves import parse_script
    from .system import parse

    with open(stem + ".fwsys") as fh:
        sys = parse(fh.read())
    with open(stem + ".script") as fh:
        script = parse_script(fh.read())
    return sys, script


GEOMETRIC_KINDS = (
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


def _geometric_move(sys: FWSystem, kind: str, rng: random.Random) -> Optional[MoveRecord]:
    from .gen import _candidates

    for _ in range(20):
        rec = _candidates(sys, kind, rng)
        if rec is None:
            return None
        if kind == "Saddle":
            rec = MoveRecord.make("Saddle", eye=rec.get("eye"), point=rec.get("point"))
        if kind in ("GSlide", "RSlide"):
            rec = MoveRecord.make(kind, mover=rec.get("mover"), over=rec.get("over"),
                                  twist=rec.get("twist"), path=rec.get("path"), side=1)
        try:
            ax = apply_move(sys, rec)
        except MoveError:
            continue
        if kind in CARRIED and ax.arcs is None:
            continue
        return rec
    return None


def geometric_corpus(count: int = 200, seed: int = 0, max_discs: int = 3) -> list[tuple[FWSystem, MoveRecord]]:
    """A fixed seeded list of (geometric system, move) cases cycling through every move kind.

    Systems are single-eye with n <= max_discs and random twisted arcs; a short
    random walk of births and x3 moves first varies the point count.
    """
    from .gen import GenParams, random_system

    rng = random.Random(seed)
    params = GenParams(max_eyes=1, max_discs=max_discs, geometric=True, max_crossing=2)
    out: list[tuple[FWSystem, MoveRecord]] = []
    attempt = 0
    while len(out) < count:
        kind = GEOMETRIC_KINDS[len(out) % len(GEOMETRIC_KINDS)]
        attempt += 1
        if attempt > 50 * count:
            raise OracleError("could not fill the geometric corpus")
        sys = random_system(rng.randrange(2**31), params)
        if kind in ("Death", "X3Minus", "Unsaddle"):
            prep = {"Death": "Birth", "X3Minus": "X3Plus", "Unsaddle": "Saddle"}[kind]
            rec = _geometric_move(sys, prep, rng)
            if rec is None:
                continue
            sys = apply_move(sys, rec)
        rec = _geometric_move(sys, kind, rng)
        if rec is not None:
            out.append((sys, rec))
    return out


def run_corpus(cases: Iterable[tuple[FWSystem, MoveRecord]], root: Optional[str] = None) -> list[tuple[int, MoveRecord, list[str]]]:
    """Cross-validate every case; failures are returned and, given a root, written out."""
    bad = []
    for i, (sys, rec) in enumerate(cases):
        try:
            ok, diff = cross_validate(sys, rec)
        except GeometryError as exc:
            ok, diff = False, [str(exc)]
        if not ok:
            bad.append((i, rec, diff))
            if root:
                write_case(root, "cross-layer", sys, [rec])
    return bad


__all__ = [
    "GEOMETRIC_KINDS",
    "GeometryError",
    "OracleError",
    "all_orderings_I",
    "all_slide_scripts_I",
    "brute_force_intersection",
    "cross_validate",
    "geometric_apply",
    "geometric_corpus",
    "ia_closed_form",
    "read_case",
    "run_corpus",
    "write_case",
]
