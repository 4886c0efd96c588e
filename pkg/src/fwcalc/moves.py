"""Moves on finger/Whitney systems as pure rewrites, plus the move-script dialect.

Every move returns a new system.  Interior parities change by the mod-2 rules
below; boundary crossings change by integers.

* A slide of `mover` over `over` on surface s adds 2*X_s(d, over) plus the number
  of corners d shares with `over` to X_s(d, mover), and X_t(d, over) (t the other
  surface) to M(d, mover).
* A rotation on surface s adds X_s(e, disc) to M(disc, e) and moves the crossing
  on the other surface with the partner at each corner by `sign`.
* Corner classes pair with a disc by counting shared corners; Clifford adds,
  sphere slides, spins and twisted slides add such a class to h2 and its pairing
  to M.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence

from .system import (
    FINGER,
    WHITNEY,
    DiscRecord,
    EyeRecord,
    FWSystem,
    SystemError_,
    cycle_decomposition,
    id_key,
    validate,
)


class MoveError(SystemError_):
    """A move's precondition failed."""


# editing helper


class _Edit:
    def __init__(self, sys: FWSystem):
        self.base = sys
        self.discs: dict[str, DiscRecord] = {d.id: d for d in sys.discs}
        self.m: set = set(sys.m)
        self.x = {"G": dict(sys.xg), "R": dict(sys.xr)}
        self.eyes = {e.index: e for e in sys.eyes}
        self.crosses = list(sys.crosses)
        self.w_order = dict(sys.w_order)
        self.arcs = None if sys.arcs is None else dict(sys.arcs)
        self.a0 = {k: list(v) for k, v in sys.a0.items()}

    def a0_add(self, finger: str, slot: int, delta: int):
        row = self.a0.setdefault(finger, [0, 0, 0])
        if slot == 2:
            row[2] ^= delta % 2
            return
        if row[slot] + delta < 0:
            raise MoveError(f"a_0 collar crossing of {finger} would become negative")
        row[slot] += delta

    def key(self, a: str, b: str) -> tuple[str, str]:
        return (a, b) if self.discs[a].kind == FINGER else (b, a)

    def flip(self, a: str, b: str, bit: int = 1):
        if bit % 2:
            self.m ^= {self.key(a, b)}

    def getx(self, s: str, a: str, b: str) -> int:
        return self.x[s].get(self.key(a, b), 0)

    def addx(self, s: str, a: str, b: str, delta: int):
        k = self.key(a, b)
        v = self.x[s].get(k, 0) + delta
        if v < 0:
            raise MoveError(f"crossing {s}({k[0]},{k[1]}) would become negative")
        self.x[s][k] = v

    def opposite(self, disc_id: str, same_space: bool = True) -> list[DiscRecord]:
        d = self.discs[disc_id]
        return [e for e in self.discs.values() if e.kind != d.kind and (not same_space or e.space == d.space)]

    def build(self) -> FWSystem:
        return FWSystem(
            eyes=tuple(self.eyes[k] for k in sorted(self.eyes)),
            discs=tuple(self.discs.values()),
            m=frozenset(self.m),
            xg=self.x["G"],
            xr=self.x["R"],
            crosses=tuple(self.crosses),
            w_order=self.w_order,
            synthetic=self.base.synthetic,
            arcs=self.arcs,
            a0={k: tuple(v) for k, v in self.a0.items() if k in self.discs},
        )


def _other(surface: str) -> str:
    return "R" if surface == "G" else "G"


def _check_surface(surface: str):
    if surface not in ("G", "R"):
        raise MoveError(f"surface must be G or R, got {surface!r}")


def _shared(a: DiscRecord, b: DiscRecord) -> int:
    if a.space != b.space:
        return 0
    return sum(1 for c in a.corners if c in b.corners)


def _xor_points(h2: frozenset, points: Iterable[int], count: int = 1) -> frozenset:
    out = set(h2)
    if count % 2:
        for p in points:
            out ^= {p}
    return frozenset(out)


def _a0_point(sys: FWSystem, eye: int) -> Optional[int]:
    covered = {c for d in sys.whitneys(eye) for c in d.corners}
    free = [p for p in sys.eye(eye).points if p not in covered]
    return free[0] if len(free) == 1 else None


def _require_path_component(sys: FWSystem, ids: Sequence[str], what: str):
    """Slides and rotations on an eye with boundary cycles must stay on the arc through a_0."""
    eyes = {sys.disc(i).reye for i in ids if not sys.disc(i).is_cross}
    for e in eyes:
        dec = cycle_decomposition(sys, e)
        if not dec.cycles:
            continue
        on_cycle = {d for c in dec.cycles for d in c.discs}
        bad = [i for i in ids if i in on_cycle]
        if bad:
            raise MoveError(f"{what} involves {','.join(bad)} on a boundary cycle of eye {e}")


# slides and rotations


def disc_slide(
    sys: FWSystem,
    mover: str,
    over: str,
    surface: str,
    twist: int = 0,
    path: str = "P0",
    side: int = 1,
) -> FWSystem:
    """Band `mover` to a parallel copy of `over` along `path` on `surface`.

    side=-1 uses the opposite parallel and undoes a side=+1 slide along the same path.
    """
    _check_surface(surface)
    if mover == over:
        raise MoveError("a disc cannot slide over itself")
    dm, do = sys.disc(mover), sys.disc(over)
    if dm.kind != do.kind:
        raise MoveError("slides need two discs of the same kind")
    if dm.sphere(surface) != do.sphere(surface):
        raise MoveError(f"{mover} and {over} have boundaries on different {surface} spheres")
    if side not in (1, -1):
        raise MoveError("side must be +1 or -1")
    _require_path_component(sys, [mover, over], "slide")
    ed = _Edit(sys)
    other = _other(surface)
    for d in ed.opposite(mover, same_space=False):
        if d.sphere(surface) == do.sphere(surface):
            delta = 2 * ed.getx(surface, d.id, over) + _shared(d, do)
            if delta:
                ed.addx(surface, d.id, mover, side * delta)
        if d.sphere(other) == do.sphere(other):
            ed.flip(d.id, mover, ed.getx(other, d.id, over))
        if twist % 2:
            ed.flip(d.id, mover, _shared(d, do))
    if twist % 2:
        ed.discs[mover] = replace(dm, h2=_xor_points(dm.h2, do.corners))
    if dm.kind == FINGER and not dm.is_cross and dm.space == do.space:
        # the collar at a_0 behaves like a Whitney corner there
        slot, oslot = (0, 1) if surface == "G" else (1, 0)
        xo = sys.a0_data(over)
        at_a0 = 1 if _a0_point(sys, dm.reye) in do.corners else 0
        if 2 * xo[slot] + at_a0:
            ed.a0_add(mover, slot, side * (2 * xo[slot] + at_a0))
        ed.a0_add(mover, 2, xo[oslot])
    # arcs are rerouted only by the geometric layer (oracle.geometric_apply)
    ed.arcs = None
    return ed.build()


def rotate(sys: FWSystem, disc: str, surface: str, corner: int, sign: int = 1) -> FWSystem:
    """Twist `disc` once about R (surface R) or G (surface G) near its corners."""
    _check_surface(surface)
    d = sys.disc(disc)
    if corner not in d.corners:
        raise MoveError(f"{corner} is not a corner of {disc}")
    if sign not in (1, -1):
        raise MoveError("sign must be +1 or -1")
    if not d.untwisted:
        raise MoveError(f"{disc} is twisted at its corners")
    _require_path_component(sys, [disc], "rotation")
    ed = _Edit(sys)
    for e in ed.opposite(disc, same_space=False):
        if e.sphere(surface) == d.sphere(surface):
            ed.flip(disc, e.id, ed.getx(surface, e.id, disc))
    other = _other(surface)
    for p in sys.partners(disc):
        ed.addx(other, p, disc, sign)
    if d.kind == FINGER and not d.is_cross:
        slot, oslot = (0, 1) if surface == "G" else (1, 0)
        ed.a0_add(disc, 2, sys.a0_data(disc)[slot])
        if _a0_point(sys, d.reye) in d.corners:
            ed.a0_add(disc, oslot, sign)
    ed.arcs = None
    return ed.build()


def clifford_add(sys: FWSystem, target: str, source: str, count: int = 1) -> FWSystem:
    """Tube `count` copies of the Clifford torus pair of `source` into `target`."""
    dt, ds = sys.disc(target), sys.disc(source)
    if dt.kind != ds.kind:
        raise MoveError("Clifford adds need two discs of the same kind")
    if dt.space != ds.space:
        raise MoveError("Clifford adds need two discs on the same point list")
    if count % 2 == 0:
        return sys
    ed = _Edit(sys)
    for e in ed.opposite(target):
        ed.flip(target, e.id, _shared(e, ds))
    ed.discs[target] = replace(dt, h2=_xor_points(dt.h2, ds.corners))
    return ed.build()


def sphere_slide(sys: FWSystem, mover: str, over: str) -> FWSystem:
    """Tube `mover` into the linking sphere of `over`."""
    dm, do = sys.disc(mover), sys.disc(over)
    if mover == over:
        raise MoveError("a disc cannot slide over its own linking sphere")
    if dm.kind != do.kind:
        raise MoveError("sphere slides need two discs of the same kind")
    if dm.space != do.space and not (dm.is_cross or do.is_cross):
        raise MoveError("sphere slides stay within one eye")
    ed = _Edit(sys)
    if dm.space == do.space:
        for e in ed.opposite(mover):
            ed.flip(mover, e.id, _shared(e, do))
        ed.discs[mover] = replace(dm, h2=_xor_points(dm.h2, do.corners))
    return ed.build()


def spin(sys: FWSystem, i: str, j: str, targets: Sequence[str]) -> FWSystem:
    """i,j-spinning: each target Whitney disc gains the linking class of finger j."""
    if i == j:
        raise MoveError("spinning needs i != j")
    fi, fj = sys.disc(i), sys.disc(j)
    if fi.kind != FINGER or fj.kind != FINGER or fi.space != fj.space:
        raise MoveError("spinning needs two fingers of one eye")
    ed = _Edit(sys)
    for t in targets:
        dt = sys.disc(t)
        if dt.kind != WHITNEY or dt.space != fj.space:
            raise MoveError(f"spin target {t} must be a Whitney disc of the same eye")
        for e in ed.opposite(t):
            ed.flip(t, e.id, _shared(e, fj))
        ed.discs[t] = replace(ed.discs[t], h2=_xor_points(ed.discs[t].h2, fj.corners))
    return ed.build()


# switching


@dataclass(frozen=True)
class SwitchInfo:
    eye: int
    order: tuple[str, ...]
    switched: tuple[str, ...]  # old Whitney discs, in chain order
    stars: tuple[str, ...]  # their replacements
    cycles: tuple[tuple[str, ...], ...]  # cycle contents, in chain order

    @property
    def k(self) -> int:
        return len(self.switched)


def default_order(sys: FWSystem, eye: int) -> tuple[str, ...]:
    """Whitney discs sorted by negative corner."""
    return tuple(d.id for d in sorted(sys.whitneys(eye), key=lambda d: d.neg_corner))


def k_switch(sys: FWSystem, eye: int, w_ordering: Optional[Sequence[str]] = None) -> tuple[FWSystem, SwitchInfo]:
    """Replace one Whitney disc per boundary cycle by a switch disc so the eye becomes IA.

    The switch-out disc of each cycle is its minimal Whitney disc under the
    ordering.  Switch discs keep the negative corner and are chained from the
    point with no Whitney disc, so the boundary becomes one arc.  They carry no
    crossings; their interior parity with a finger is the pairing of that
    finger's h2 offset with their corners.
    """
    order = tuple(w_ordering) if w_ordering is not None else sys.w_order.get(eye) or default_order(sys, eye)
    if sorted(order) != sorted(d.id for d in sys.whitneys(eye)):
        raise MoveError(f"order must list each Whitney disc of eye {eye} once")
    dec = cycle_decomposition(sys, eye)
    if not dec.cycles:
        return sys, SwitchInfo(eye, order, (), (), ())
    rank = {w: k for k, w in enumerate(order)}
    remaining = list(dec.cycles)
    chain = []
    while remaining:
        best = min((w for c in remaining for w in c.discs if sys.disc(w).kind == WHITNEY), key=rank.__getitem__)
        cyc = next(c for c in remaining if best in c.discs)
        chain.append((best, cyc))
        remaining.remove(cyc)
    ed = _Edit(sys)
    prev = next(p for p in sys.eye(eye).points if p not in {c for d in sys.whitneys(eye) for c in d.corners})
    stars = []
    for w, _ in chain:
        old = sys.disc(w)
        star = w + "*"
        if star in ed.discs:
            raise MoveError(f"switch disc id {star} already in use")
        corners = tuple(sorted((old.neg_corner, prev)))
        prev = old.pos_corner
        new = DiscRecord(star, WHITNEY, old.reye, old.geye, corners, corners)
        del ed.discs[w]
        ed.m = {k for k in ed.m if k[1] != w}
        for s in ("G", "R"):
            ed.x[s] = {k: v for k, v in ed.x[s].items() if k[1] != w}
        ed.discs[star] = new
        for f in sys.fingers(eye):
            ed.flip(f.id, star, sum(1 for c in corners if c in f.h2))
            if not stars:
                g, r, mm = sys.a0_data(f.id)
                ed.addx("G", f.id, star, g)
                ed.addx("R", f.id, star, r)
                ed.flip(f.id, star, mm)
                ed.a0.pop(f.id, None)
        if ed.arcs is not None:
            ed.arcs = None
        stars.append(star)
    ren = dict(zip((w for w, _ in chain), stars))
    ed.w_order[eye] = tuple(ren.get(w, w) for w in order)
    info = SwitchInfo(eye, order, tuple(w for w, _ in chain), tuple(stars), tuple(c.discs for _, c in chain))
    return ed.build(), info


def compress(sys: FWSystem, eye: int) -> FWSystem:
    """Clear even boundary crossings among an IA eye's discs.

    The result has the same corners, the same interior parities and crossings
    that differ by even amounts, so it computes the same invariant.
    """
    if cycle_decomposition(sys, eye).cycles:
        raise MoveError(f"compress needs eye {eye} in IA position")
    ids = {d.id for d in sys.fingers(eye) + sys.whitneys(eye)}
    ed = _Edit(sys)
    for s in ("G", "R"):
        for (f, w), v in list(ed.x[s].items()):
            if f in ids and w in ids:
                if v % 2:
                    raise MoveError(f"crossing {s}({f},{w}) = {v} is odd")
                ed.x[s][(f, w)] = 0
    ed.arcs = None
    return ed.build()


# birth, death, x^3, saddle


def _insert_points(ed: _Edit, eye: int, after: int, count: int = 2):
    """Shift points above `after` up by `count` on one eye."""
    for k, d in list(ed.discs.items()):
        if d.space == ("eye", eye):
            f = lambda p: p + count if p > after else p  # noqa: E731
            ed.discs[k] = replace(
                d,
                gcorners=tuple(sorted(map(f, d.gcorners))),
                rcorners=tuple(sorted(map(f, d.rcorners))),
                h2=frozenset(map(f, d.h2)),
            )
    e = ed.eyes[eye]
    ed.eyes[eye] = EyeRecord(eye, e.n + count // 2)


def _remove_points(ed: _Edit, eye: int, lo: int, count: int = 2):
    """Delete points lo..lo+count-1 on one eye, shifting higher points down."""
    for k, d in list(ed.discs.items()):
        if d.space == ("eye", eye):
            f = lambda p: p - count if p >= lo + count else p  # noqa: E731
            ed.discs[k] = replace(
                d,
                gcorners=tuple(sorted(map(f, d.gcorners))),
                rcorners=tuple(sorted(map(f, d.rcorners))),
                h2=frozenset(f(p) for p in d.h2 if not lo <= p < lo + count),
            )
    e = ed.eyes[eye]
    ed.eyes[eye] = EyeRecord(eye, e.n - count // 2)


def _f_end(sys: FWSystem, eye: int) -> Optional[int]:
    covered = {c for d in sys.fingers(eye) for c in d.corners}
    free = [p for p in sys.eye(eye).points if p not in covered]
    return free[0] if len(free) == 1 else None


def _move_class(ed: _Edit, eye: int, old: int, new: int):
    """Corner classes at `old` follow the point to `new`."""
    for k, d in list(ed.discs.items()):
        if d.space == ("eye", eye) and old in d.h2:
            ed.discs[k] = replace(d, h2=_xor_points(d.h2 - {old}, [new]))


def _require_no_class(sys: FWSystem, eye: int, points: Iterable[int], what: str):
    for d in sys.in_space(("eye", eye)):
        hit = sorted(set(points) & d.h2)
        if hit:
            raise MoveError(f"{what}: h2 offset of {d.id} uses removed point(s) {hit}")


def _new_pair_ids(sys: FWSystem) -> tuple[str, str]:
    k = max([id_key(d.id)[1] for d in sys.discs if id_key(d.id)[0] in ("f", "w")], default=0) + 1
    return f"f{k}", f"w{k}"


def _move_corner(ed: _Edit, disc_id: str, old: int, new: int):
    d = ed.discs[disc_id]
    corners = tuple(sorted(new if c == old else c for c in d.corners))
    ed.discs[disc_id] = replace(d, gcorners=corners, rcorners=corners)


def _extend_order(ed: _Edit, eye: int, w: str, before: Optional[str] = None):
    if eye in ed.w_order:
        order = list(ed.w_order[eye])
        if before is not None and before in order:
            order.insert(order.index(before), w)
        else:
            order.append(w)
        ed.w_order[eye] = tuple(order)


def _drop_order(ed: _Edit, eye: int, w: str):
    if eye in ed.w_order:
        ed.w_order[eye] = tuple(x for x in ed.w_order[eye] if x != w)


def _arc_edit(ed: _Edit, fn):
    """Carry attached arcs through a local move; the arc layer returns None when it cannot."""
    if ed.arcs is not None:
        from . import arcdiag

        ed.arcs = fn(arcdiag, ed.arcs)


def birth(sys: FWSystem, eye: int) -> FWSystem:
    """Append two points and a canceling pair sharing both corners, with no data."""
    e = sys.eye(eye)
    f, w = _new_pair_ids(sys)
    ed = _Edit(sys)
    top = e.point_count - 1
    _insert_points(ed, eye, top)
    c = (top + 1, top + 2)
    ed.discs[f] = DiscRecord(f, FINGER, eye, eye, c, c)
    ed.discs[w] = DiscRecord(w, WHITNEY, eye, eye, c, c)
    _extend_order(ed, eye, w)
    _arc_edit(ed, lambda ad, arcs: ad.birth_arcs(arcs, sys, eye, f, w))
    return ed.build()


def _require_free_pair(sys: FWSystem, f: str, w: str, what: str):
    df, dw = sys.disc(f), sys.disc(w)
    if df.kind != FINGER or dw.kind != WHITNEY:
        raise MoveError(f"{what}: expected a finger then a Whitney disc")
    for s, table in (("G", sys.xg), ("R", sys.xr)):
        for (a, b), v in table.items():
            if v and (a == f or b == w):
                raise MoveError(f"{what}: crossing {s}({a},{b}) = {v} is not zero")
    for a, b in sys.m:
        if a == f or b == w:
            raise MoveError(f"{what}: interior parity M({a},{b}) is not zero")
    if df.h2 or dw.h2:
        raise MoveError(f"{what}: h2 offsets must vanish")
    if any(sys.a0_data(f)):
        raise MoveError(f"{what}: {f} has a_0 collar data")
    if df.germ != dw.germ:
        raise MoveError(f"{what}: germs differ")


def death(sys: FWSystem, eye: int, f: str, w: str) -> FWSystem:
    """Remove a canceling pair with identical corners and no data."""
    df, dw = sys.disc(f), sys.disc(w)
    if df.space != ("eye", eye) or dw.space != ("eye", eye):
        raise MoveError(f"death: {f}, {w} are not discs of eye {eye}")
    if df.corners != dw.corners:
        raise MoveError("death: corners differ")
    lo, hi = df.corners
    if hi != lo + 1:
        raise MoveError("death: the pair's corners must be adjacent points")
    _require_free_pair(sys, f, w, "death")
    _require_no_class(sys, eye, (lo, hi), "death")
    ed = _Edit(sys)
    del ed.discs[f], ed.discs[w]
    _drop_order(ed, eye, w)
    _remove_points(ed, eye, lo)
    _arc_edit(ed, lambda ad, arcs: ad.death_arcs(arcs, sys, eye, f, w))
    return ed.build()


X3_CASES = ("none", "one", "finger+whitney")


def _require_arc_point(sys: FWSystem, eye: int, point: int, what: str):
    """Insertions must land on the arc through a_0; boundary cycles stay 2-cycles."""
    dec = cycle_decomposition(sys, eye)
    if any(point in c.points for c in dec.cycles):
        raise MoveError(f"{what}: point {point} lies on a boundary cycle")


def _occupancy(sys: FWSystem, eye: int, point: int) -> str:
    occ = sys.occupants(("eye", eye), point)
    return {0: "none", 1: "one", 2: "finger+whitney"}[len(occ)]


def x3_insert(sys: FWSystem, eye: int, point: int, corner_cases: Optional[str] = None) -> FWSystem:
    """Insert a canceling pair extending the boundary arc at `point`.

    New points p', p'' follow p.  The new finger takes (p, p'), the new Whitney
    disc (p', p''), and a finger already at p moves its corner to p'' along a
    parallel of the new finger.
    """
    e = sys.eye(eye)
    if not 0 <= point < e.point_count:
        raise MoveError(f"x3: point {point} outside eye {eye}")
    _require_arc_point(sys, eye, point, "x3")
    actual = _occupancy(sys, eye, point)
    if corner_cases is not None and corner_cases != actual:
        raise MoveError(f"x3: point {point} has occupancy {actual}, not {corner_cases}")
    occ = sys.occupants(("eye", eye), point)
    f, w = _new_pair_ids(sys)
    end = _f_end(sys, eye) == point
    ed = _Edit(sys)
    _insert_points(ed, eye, point)
    if FINGER in occ:
        _move_corner(ed, occ[FINGER], point, point + 2)
    if end:
        # the finger-free end of the arc moves to p''; its corner class goes along
        _move_class(ed, eye, point, point + 2)
    ed.discs[f] = DiscRecord(f, FINGER, eye, eye, (point, point + 1), (point, point + 1))
    ed.discs[w] = DiscRecord(w, WHITNEY, eye, eye, (point + 1, point + 2), (point + 1, point + 2))
    _extend_order(ed, eye, w)
    _arc_edit(ed, lambda ad, arcs: ad.x3_arcs(arcs, sys, eye, point, f, w, occ.get(FINGER)))
    return ed.build()


def x3_remove(sys: FWSystem, eye: int, f: str, w: str) -> FWSystem:
    """Inverse of x3_insert."""
    df, dw = sys.disc(f), sys.disc(w)
    if df.space != ("eye", eye) or dw.space != ("eye", eye):
        raise MoveError(f"x3 removal: {f}, {w} are not discs of eye {eye}")
    p = df.corners[0]
    if df.corners != (p, p + 1) or dw.corners != (p + 1, p + 2):
        raise MoveError("x3 removal: pair must occupy consecutive points p, p+1, p+2")
    occ = sys.occupants(("eye", eye), p + 2)
    if occ.get(WHITNEY) != w:
        raise MoveError("x3 removal: unexpected Whitney occupant")
    _require_free_pair(sys, f, w, "x3 removal")
    mover = occ.get(FINGER)
    _require_no_class(sys, eye, (p + 1, p + 2) if mover is not None else (p, p + 1), "x3 removal")
    ed = _Edit(sys)
    del ed.discs[f], ed.discs[w]
    _drop_order(ed, eye, w)
    if mover is not None:
        _move_corner(ed, mover, p + 2, p)
    else:
        _move_class(ed, eye, p + 2, p)
    _remove_points(ed, eye, p + 1)
    _arc_edit(ed, lambda ad, arcs: ad.x3_remove_arcs(arcs, sys, eye, f, w, mover))
    return ed.build()


@dataclass(frozen=True)
class SaddleSpec:
    """Saddle at `point`: the new Whitney disc w_D carries the given data against fingers.

    The Whitney disc occupying `point` keeps the corner through a parallel copy of
    w_D and therefore gains the same data.
    """

    point: int
    m: frozenset = frozenset()
    xg: Mapping = None  # type: ignore[assignment]
    xr: Mapping = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "m", frozenset(self.m))
        object.__setattr__(self, "xg", dict(self.xg or {}))
        object.__setattr__(self, "xr", dict(self.xr or {}))


def saddle(sys: FWSystem, eye: int, spec: SaddleSpec) -> FWSystem:
    """Insert the saddle pair (f_D, w_D) next to the Whitney disc at spec.point.

    w_D takes the point, f_D pairs the two new points, and the old Whitney
    occupant moves its corner to the far new point.
    """
    e = sys.eye(eye)
    p = spec.point
    if not 0 <= p < e.point_count:
        raise MoveError(f"saddle: point {p} outside eye {eye}")
    _require_arc_point(sys, eye, p, "saddle")
    occ = sys.occupants(("eye", eye), p)
    if WHITNEY not in occ:
        raise MoveError(f"saddle: point {p} has no Whitney disc")
    wo = occ[WHITNEY]
    fingers = {d.id for d in sys.fingers(eye)}
    touched = set(spec.m) | set(spec.xg) | set(spec.xr)
    if not touched <= fingers:
        raise MoveError(f"saddle: data names discs that are not fingers of eye {eye}")
    fD, wD = _new_pair_ids(sys)
    ed = _Edit(sys)
    _insert_points(ed, eye, p)
    _move_corner(ed, wo, p, p + 2)
    ed.discs[wD] = DiscRecord(wD, WHITNEY, eye, eye, (p, p + 1), (p, p + 1))
    ed.discs[fD] = DiscRecord(fD, FINGER, eye, eye, (p + 1, p + 2), (p + 1, p + 2))
    for f in spec.m:
        ed.flip(f, wD)
        ed.flip(f, wo)
    for s, table in (("G", spec.xg), ("R", spec.xr)):
        for f, v in table.items():
            if v < 0:
                raise MoveError("saddle: crossing counts are nonnegative")
            ed.addx(s, f, wD, v)
            ed.addx(s, f, wo, v)
    _extend_order(ed, eye, wD, before=wo)
    if spec.m or any(spec.xg.values()) or any(spec.xr.values()):
        ed.arcs = None
    else:
        _arc_edit(ed, lambda ad, arcs: ad.saddle_arcs(arcs, sys, eye, p, fD, wD, wo))
    return ed.build()


def unsaddle(sys: FWSystem, eye: int, f: str, w: str) -> FWSystem:
    """Inverse of saddle: remove (f_D, w_D) and subtract w_D's data from the occupant."""
    df, dw = sys.disc(f), sys.disc(w)
    p = dw.corners[0]
    if dw.corners != (p, p + 1) or df.corners != (p + 1, p + 2):
        raise MoveError("unsaddle: pair must occupy consecutive points p, p+1, p+2")
    occ = sys.occupants(("eye", eye), p + 2)
    wo = occ.get(WHITNEY)
    if wo is None or wo == w:
        raise MoveError("unsaddle: no Whitney occupant to restore")
    for s, table in (("G", sys.xg), ("R", sys.xr)):
        for (a, b), v in table.items():
            if v and (a == f):
                raise MoveError(f"unsaddle: crossing {s}({a},{b}) of f_D is not zero")
    if any(a == f for a, _ in sys.m) or df.h2 or dw.h2 or df.germ != (0, 0) or dw.germ != (0, 0):
        raise MoveError("unsaddle: f_D must carry no data")
    if any(sys.a0_data(f)):
        raise MoveError(f"unsaddle: {f} has a_0 collar data")
    _require_no_class(sys, eye, (p + 1, p + 2), "unsaddle")
    ed = _Edit(sys)
    for a, b in list(sys.m):
        if b == w:
            ed.flip(a, w)
            ed.flip(a, wo)
    for s in ("G", "R"):
        for (a, b), v in list(ed.x[s].items()):
            if b == w and v:
                ed.addx(s, a, wo, -v)
                ed.x[s][(a, b)] = 0
    del ed.discs[f], ed.discs[w]
    _drop_order(ed, eye, w)
    _move_corner(ed, wo, p + 2, p)
    _remove_points(ed, eye, p + 1)
    _arc_edit(ed, lambda ad, arcs: ad.unsaddle_arcs(arcs, sys, eye, f, w, wo))
    return ed.build()


# move records and scripts

_VERBS = {
    "GSlide": "gslide",
    "RSlide": "rslide",
    "GRotate": "grotate",
    "RRotate": "rrotate",
    "CliffordAdd": "clifford",
    "SphereSlide": "sphereslide",
    "KSwitch": "switch",
    "Birth": "birth",
    "Death": "death",
    "X3Plus": "x3plus",
    "X3Minus": "x3minus",
    "Saddle": "saddle",
    "Unsaddle": "unsaddle",
    "Spin": "spin",
    "Compress": "compress",
}
_KINDS = {v: k for k, v in _VERBS.items()}
_KEYS = {
    "GSlide": ("mover", "over", "twist", "path", "side"),
    "RSlide": ("mover", "over", "twist", "path", "side"),
    "GRotate": ("disc", "corner", "sign"),
    "RRotate": ("disc", "corner", "sign"),
    "CliffordAdd": ("target", "source", "count"),
    "SphereSlide": ("mover", "over"),
    "KSwitch": ("eye", "order"),
    "Birth": ("eye",),
    "Death": ("eye", "f", "w"),
    "X3Plus": ("eye", "point", "case"),
    "X3Minus": ("eye", "f", "w"),
    "Saddle": ("eye", "point", "m", "xg", "xr"),
    "Unsaddle": ("eye", "f", "w"),
    "Spin": ("i", "j", "targets"),
    "Compress": ("eye",),
}
_DEFAULTS = {"case": "-", "twist": "0", "path": "P0", "side": "1", "sign": "1", "count": "1", "m": "-", "xg": "-", "xr": "-"}

MOVE_KINDS = tuple(_VERBS)


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    params: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if self.kind not in _VERBS:
            raise MoveError(f"unknown move kind {self.kind}")
        given = dict(self.params)
        unknown = set(given) - set(_KEYS[self.kind])
        if unknown:
            raise MoveError(f"{self.kind}: unknown parameters {sorted(unknown)}")
        full = []
        for k in _KEYS[self.kind]:
            if k in given:
                full.append((k, str(given[k])))
            elif k in _DEFAULTS:
                full.append((k, _DEFAULTS[k]))
            else:
                raise MoveError(f"{self.kind}: missing parameter {k}")
        object.__setattr__(self, "params", tuple(full))

    @classmethod
    def make(cls, kind: str, **params) -> "MoveRecord":
        return cls(kind, tuple((k, _fmt(v)) for k, v in params.items()))

    def get(self, key: str) -> str:
        return dict(self.params)[key]

    def to_text(self) -> str:
        return " ".join([_VERBS[self.kind]] + [f"{k}={v}" for k, v in self.params])

    @classmethod
    def from_text(cls, line: str) -> "MoveRecord":
        tok = line.split()
        if not tok or tok[0] not in _KINDS:
            raise MoveError(f"unknown move {tok[0] if tok else ''!r}")
        params = []
        for t in tok[1:]:
            if "=" not in t:
                raise MoveError(f"expected key=value, got {t!r}")
            k, v = t.split("=", 1)
            params.append((k, v))
        return cls(_KINDS[tok[0]], tuple(params))

    def __str__(self) -> str:
        return self.to_text()


def _fmt(v) -> str:
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v, key=id_key) if isinstance(v, (set, frozenset)) else list(v)
        return ",".join(str(x) for x in items) if items else "-"
    if isinstance(v, dict):
        items = sorted(((k, x) for k, x in v.items() if x), key=lambda t: id_key(t[0]))
        return ",".join(f"{k}:{x}" for k, x in items) if items else "-"
    return str(v)


def _ids(text: str) -> tuple[str, ...]:
    return () if text in ("", "-") else tuple(text.split(","))


def _counts(text: str) -> dict[str, int]:
    out = {}
    for item in _ids(text):
        k, v = item.split(":")
        out[k] = int(v)
    return out


def apply_move(sys: FWSystem, rec: MoveRecord) -> FWSystem:
    p = dict(rec.params)
    k = rec.kind
    if k in ("GSlide", "RSlide"):
        return disc_slide(sys, p["mover"], p["over"], k[0], int(p["twist"]), p["path"], int(p["side"]))
    if k in ("GRotate", "RRotate"):
        return rotate(sys, p["disc"], k[0], int(p["corner"]), int(p["sign"]))
    if k == "CliffordAdd":
        return clifford_add(sys, p["target"], p["source"], int(p["count"]))
    if k == "SphereSlide":
        return sphere_slide(sys, p["mover"], p["over"])
    if k == "KSwitch":
        order = None if p["order"] in ("-", "default") else _ids(p["order"])
        return k_switch(sys, int(p["eye"]), order)[0]
    if k == "Birth":
        return birth(sys, int(p["eye"]))
    if k == "Death":
        return death(sys, int(p["eye"]), p["f"], p["w"])
    if k == "X3Plus":
        case = None if p["case"] in ("-", "auto") else p["case"]
        return x3_insert(sys, int(p["eye"]), int(p["point"]), case)
    if k == "X3Minus":
        return x3_remove(sys, int(p["eye"]), p["f"], p["w"])
    if k == "Saddle":
        spec = SaddleSpec(int(p["point"]), frozenset(_ids(p["m"])), _counts(p["xg"]), _counts(p["xr"]))
        return saddle(sys, int(p["eye"]), spec)
    if k == "Unsaddle":
        return unsaddle(sys, int(p["eye"]), p["f"], p["w"])
    if k == "Spin":
        return spin(sys, p["i"], p["j"], _ids(p["targets"]))
    if k == "Compress":
        return compress(sys, int(p["eye"]))
    raise MoveError(f"unhandled move {k}")


def apply_script(sys: FWSystem, script: Iterable[MoveRecord], check: bool = False) -> FWSystem:
    for rec in script:
        sys = apply_move(sys, rec)
        if check:
            bad = validate(sys)
            if bad:
                raise MoveError(f"{rec} produced an invalid system: {bad[0]}")
    return sys


def parse_script(text: str) -> list[MoveRecord]:
    out = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(MoveRecord.from_text(line))
        except MoveError as exc:
            raise MoveError(f"script line {lineno}: {exc}") from None
    return out


def format_script(script: Iterable[MoveRecord]) -> str:
    return "".join(r.to_text() + "\n" for r in script)


def inverse_move(sys: FWSystem, rec: MoveRecord) -> MoveRecord:
    """A record undoing `rec` when applied to apply_move(sys, rec)."""
    p = dict(rec.params)
    k = rec.kind
    if k in ("GSlide", "RSlide"):
        return replace_params(rec, twist=str(-int(p["twist"])), side=str(-int(p["side"])))
    if k in ("GRotate", "RRotate"):
        return replace_params(rec, sign=str(-int(p["sign"])))
    if k in ("CliffordAdd", "SphereSlide", "Spin"):
        return rec
    if k in ("Birth", "X3Plus", "Saddle"):
        after = apply_move(sys, rec)
        new = sorted(set(d.id for d in after.discs) - set(d.id for d in sys.discs), key=id_key)
        f = next(i for i in new if after.disc(i).kind == FINGER)
        w = next(i for i in new if after.disc(i).kind == WHITNEY)
        inv = {"Birth": "Death", "X3Plus": "X3Minus", "Saddle": "Unsaddle"}[k]
        return MoveRecord.make(inv, eye=p["eye"], f=f, w=w)
    if k == "Death":
        return MoveRecord.make("Birth", eye=p["eye"])
    if k == "X3Minus":
        return MoveRecord.make("X3Plus", eye=p["eye"], point=sys.disc(p["f"]).corners[0], case="-")
    raise MoveError(f"{k} has no inverse record")


def replace_params(rec: MoveRecord, **changes) -> MoveRecord:
    params = dict(rec.params)
    params.update(changes)
    return MoveRecord(rec.kind, tuple(params.items()))


__all__ = [
    "MOVE_KINDS",
    "MoveError",
    "MoveRecord",
    "SaddleSpec",
    "SwitchInfo",
    "apply_move",
    "apply_script",
    "birth",
    "clifford_add",
    "compress",
    "death",
    "default_order",
    "disc_slide",
    "format_script",
    "inverse_move",
    "k_switch",
    "parse_script",
    "rotate",
    "saddle",
    "sphere_slide",
    "spin",
    "unsaddle",
    "x3_insert",
    "x3_remove",
]
