"""Boundary arcs on a sphere with marked points: normal forms, crossing numbers, Dehn twists.

The sphere with marked points a_0..a_{m-1} is the plane plus infinity.  The
points sit in order on a line L, and each is blown up to a small circle C_x
with an upper half and a lower half.  Gap g is the segment of L between
C_{g-1} and C_g; gap 0 runs through infinity.  Cutting along L leaves two
discs, U above and D below.

An arc leaves a slot on one half of C_start, crosses L at a word of gaps, and
arrives at C_end.  Free reduction of the word (no gap twice in a row) is the
minimal-position normal form.  Crossing numbers come from ordering the strands
inside each gap so that no bigon forms, then counting linked chords in U and D.

Whitney arcs use the upper halves and finger arcs the lower halves, on both
spheres, so the standard arcs of framed finger form are the short chords.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence

U, D = "U", "D"
HALVES = (U, D)
LEFT, RIGHT = "left", "right"


class ArcError(ValueError):
    """A malformed arc, or an operation outside the arc layer's domain."""


def _flip(h: str) -> str:
    return D if h == U else U


@dataclass(frozen=True)
class MarkedSphere:
    point_count: int

    def __post_init__(self):
        if self.point_count < 1:
            raise ArcError("a marked sphere needs at least one point")

    def gap_right_of(self, x: int) -> int:
        return (x + 1) % self.point_count

    def chord(self, a: int, b: int, half: str) -> "DiagramArc":
        """The short arc from a to b that never meets L."""
        return DiagramArc(self.point_count, a, b, half, ())


@dataclass(frozen=True)
class DiagramArc:
    """An arc from slot (start, start_half) to C_end crossing L at `gaps` in order."""

    points: int
    start: int
    end: int
    start_half: str
    gaps: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(int(g) for g in self.gaps))
        m = self.points
        if m < 2:
            raise ArcError("an arc needs at least two marked points")
        if not (0 <= self.start < m and 0 <= self.end < m):
            raise ArcError(f"endpoints {self.start},{self.end} outside 0..{m - 1}")
        if self.start == self.end:
            raise ArcError("an arc joins two different marked points")
        if self.start_half not in HALVES:
            raise ArcError(f"half must be U or D, got {self.start_half!r}")
        bad = [g for g in self.gaps if not 0 <= g < m]
        if bad:
            raise ArcError(f"gaps {bad} outside 0..{m - 1}")

    @property
    def end_half(self) -> str:
        return self.start_half if len(self.gaps) % 2 == 0 else _flip(self.start_half)

    @property
    def endpoints(self) -> frozenset:
        return frozenset((self.start, self.end))

    def half(self, chord: int) -> str:
        """Hemisphere of chord k, which runs from point k to point k+1 of the walk."""
        return self.start_half if chord % 2 == 0 else _flip(self.start_half)

    @property
    def is_reduced(self) -> bool:
        return all(a != b for a, b in zip(self.gaps, self.gaps[1:]))

    def reduced(self) -> "DiagramArc":
        stack: list[int] = []
        for g in self.gaps:
            if stack and stack[-1] == g:
                stack.pop()
            else:
                stack.append(g)
        return replace(self, gaps=tuple(stack))

    def reversed(self) -> "DiagramArc":
        return DiagramArc(self.points, self.end, self.start, self.end_half, self.gaps[::-1])

    def same_arc(self, other: "DiagramArc") -> bool:
        return self == other or self == other.reversed()

    def to_text(self) -> str:
        g = ",".join(map(str, self.gaps)) or "-"
        return f"m={self.points} from={self.start}{self.start_half} to={self.end}{self.end_half} gaps={g}"

    @classmethod
    def from_text(cls, text: str) -> "DiagramArc":
        kv = {}
        for tok in text.split():
            if "=" not in tok:
                raise ArcError(f"expected key=value in arc, got {tok!r}")
            k, v = tok.split("=", 1)
            kv[k] = v
        try:
            a, b = kv["from"], kv["to"]
            gaps = () if kv.get("gaps", "-") == "-" else tuple(int(x) for x in kv["gaps"].split(","))
            arc = cls(int(kv["m"]), int(a[:-1]), int(b[:-1]), a[-1], gaps)
        except (KeyError, ValueError, IndexError) as exc:
            raise ArcError(f"malformed arc {text!r} ({exc})") from None
        if arc.end_half != b[-1]:
            raise ArcError(f"arc {text!r}: a word of {len(gaps)} gaps cannot end on half {b[-1]}")
        return arc


@dataclass(frozen=True)
class TwistCurve:
    """The circle gamma_ij around a_i..a_j; it meets L in gap i (next to C_i) and gap j+1 (next to C_j)."""

    points: int
    i: int
    j: int
    direction: str = LEFT

    def __post_init__(self):
        if not 0 < self.i <= self.j < self.points:
            raise ArcError(f"twist curve needs 0 < i <= j < {self.points}, got {self.i},{self.j}")
        if self.direction not in (LEFT, RIGHT):
            raise ArcError("direction must be left or right")

    def inverse(self) -> "TwistCurve":
        return replace(self, direction=RIGHT if self.direction == LEFT else LEFT)

    def inside(self, elem: tuple) -> bool:
        if elem[0] == "C":
            return self.i <= elem[1] <= self.j
        return self.i < elem[1] <= self.j


# strand ordering


def _element(arc: DiagramArc, i: int) -> tuple:
    """Boundary element of point i of the walk: a slot ('C', x, half) or a gap ('G', g)."""
    if i == 0:
        return ("C", arc.start, arc.start_half)
    if i == len(arc.gaps) + 1:
        return ("C", arc.end, arc.end_half)
    return ("G", arc.gaps[i - 1])


def _rays(arc: DiagramArc, i: int) -> dict[str, list]:
    """From point i, the walks to either side keyed by the hemisphere of their first chord."""
    last = len(arc.gaps) + 1
    out = {}
    for step in (1, -1):
        ray = []
        k = i
        while 0 <= k + step <= last:
            chord = k if step == 1 else k - 1
            ray.append((arc.half(chord), _element(arc, k + step)))
            k += step
        if ray:
            out[ray[0][0]] = ray
    return out


def _pos(elem: tuple) -> int:
    return 2 * elem[1] if elem[0] == "G" else 2 * elem[1] + 1


def _ccw(m: int, half: str, a: tuple, b: tuple) -> int:
    # U is traversed counterclockwise in increasing L order, D in decreasing order
    d = (_pos(b) - _pos(a)) % (2 * m)
    return d if half == U else (-d) % (2 * m)


def _compare(m: int, elem: tuple, ra: dict, rb: dict, first: str = D) -> int:
    """Negative when strand a comes first along L at elem, positive when it comes later, 0 on a tie.

    `first` picks the side read first; along a run of parallel strands it must
    point the same way at every gap, so callers take it from one fixed strand.
    """
    for h in (first, _flip(first)):
        if h not in ra or h not in rb:
            continue
        cur = elem
        for k, ((hx, ex), (_, ey)) in enumerate(zip(ra[h], rb[h])):
            if ex != ey:
                # the strand that leaves by the nearer exit sits further counterclockwise
                a_later_ccw = _ccw(m, hx, cur, ex) < _ccw(m, hx, cur, ey)
                a_after = a_later_ccw if hx == U else not a_later_ccw
                r = 1 if a_after else -1
                # parallel strands swap sides every time they cross a hemisphere
                return r if k % 2 == 0 else -r
            if ex[0] == "C":
                break
            cur = ex
    return 0


class _Layout:
    """All strands of a family of reduced arcs, ordered along L, with their chords per hemisphere."""

    def __init__(self, arcs: Sequence[DiagramArc]):
        if not arcs:
            raise ArcError("empty diagram")
        self.m = arcs[0].points
        if any(a.points != self.m for a in arcs):
            raise ArcError("arcs live on spheres with different point counts")
        for a in arcs:
            if not a.is_reduced:
                raise ArcError(f"arc {a.to_text()} is not reduced; call minimal_position first")
        self.arcs = list(arcs)
        buckets: dict[tuple, list] = {}
        rays = {}
        ahead = {}
        for ai, arc in enumerate(arcs):
            last = len(arc.gaps) + 1
            for i in range(last + 1):
                buckets.setdefault(_element(arc, i), []).append((ai, i))
                rays[(ai, i)] = _rays(arc, i)
                ahead[(ai, i)] = arc.half(i) if i < last else _flip(arc.half(i - 1))

        def order(elem):
            def cmp(p, q):
                c = _compare(self.m, elem, rays[p], rays[q], ahead[min(p, q)])
                return c if c else (-1 if p < q else 1 if p > q else 0)

            return sorted(buckets[elem], key=functools.cmp_to_key(cmp))

        self.order = {e: order(e) for e in buckets}
        # boundary positions per hemisphere: gaps and the slots of that half, in L order
        self.where: dict[str, dict] = {}
        self.sequence: dict[str, list] = {}
        for h in HALVES:
            where, seq = {}, []
            for p in range(2 * self.m):
                elem = ("G", p // 2) if p % 2 == 0 else ("C", p // 2, h)
                for pt in self.order.get(elem, ()):
                    where[pt] = len(seq)
                    seq.append((elem, pt))
            self.where[h] = where
            self.sequence[h] = seq
        self.chords: dict[str, list] = {U: [], D: []}
        for ai, arc in enumerate(arcs):
            for k in range(len(arc.gaps) + 1):
                h = arc.half(k)
                p, q = self.where[h][(ai, k)], self.where[h][(ai, k + 1)]
                self.chords[h].append((ai, k, min(p, q), max(p, q)))

    def crossing_matrix(self) -> dict[tuple[int, int], int]:
        """Linked chord pairs per pair of arcs (a <= b); (a, a) counts self-crossings."""
        out: dict[tuple[int, int], int] = {}
        for h in HALVES:
            cs = self.chords[h]
            for x in range(len(cs)):
                a, _, p1, q1 = cs[x]
                for y in range(x + 1, len(cs)):
                    b, _, p2, q2 = cs[y]
                    if p1 < p2 < q1 < q2 or p2 < p1 < q2 < q1:
                        key = (min(a, b), max(a, b))
                        out[key] = out.get(key, 0) + 1
        return out


def minimal_position(diagram):
    """Reduce an arc, or every arc of a collection (list, set or mapping), to normal form."""
    if isinstance(diagram, DiagramArc):
        return diagram.reduced()
    if isinstance(diagram, Mapping):
        return {k: a.reduced() for k, a in diagram.items()}
    if isinstance(diagram, (set, frozenset)):
        return type(diagram)(a.reduced() for a in diagram)
    return [a.reduced() for a in diagram]


def geometric_intersection(a: DiagramArc, b: DiagramArc) -> int:
    """Interior crossings of two reduced arcs in minimal position; shared corners are not counted.

    Exact for embedded arcs. Strand ties of a self-crossing arc are broken by
    input position, so both orders are laid out and the smaller count is kept.
    """
    if a.same_arc(b):
        if not a.is_reduced:
            raise ArcError(f"arc {a.to_text()} is not reduced; call minimal_position first")
        return 0
    return min(_Layout(p).crossing_matrix().get((0, 1), 0) for p in ([a, b], [b, a]))


def self_intersection(a: DiagramArc) -> int:
    return _Layout([a]).crossing_matrix().get((0, 0), 0)


def crossing_table(arcs: Sequence[DiagramArc]) -> dict[tuple[int, int], int]:
    """Minimal crossing numbers of every pair in a family (a < b) and self-crossings (a, a).

    Each pair is laid out on its own: strands of three or more arcs need not
    admit one ordering that is minimal for every pair at once.
    """
    out = {}
    for a in range(len(arcs)):
        c = self_intersection(arcs[a])
        if c:
            out[(a, a)] = c
        for b in range(a + 1, len(arcs)):
            c = geometric_intersection(arcs[a], arcs[b])
            if c:
                out[(a, b)] = c
    return out


# twists


def _twist_once(arc: DiagramArc, c: TwistCurve) -> DiagramArc:
    i, j1 = c.i, (c.j + 1) % c.points
    out: list[int] = []
    for k in range(len(arc.gaps) + 1):
        a_in, b_in = c.inside(_element(arc, k)), c.inside(_element(arc, k + 1))
        if a_in != b_in:
            # turning left onto the curve: which end of the curve comes first depends
            # on the hemisphere and on whether the chord enters or leaves the disc
            first = [j1, i] if (arc.half(k) == U) == b_in else [i, j1]
            out += first if c.direction == LEFT else first[::-1]
        if k < len(arc.gaps):
            out.append(arc.gaps[k])
    return replace(arc, gaps=tuple(out)).reduced()


def dehn_twist(diagram, curve: TwistCurve, power: int = 1):
    """Image of an arc (or of every arc in a collection) under curve's twist, `power` times."""
    if power < 0:
        return dehn_twist(diagram, curve.inverse(), -power)
    if isinstance(diagram, DiagramArc):
        if diagram.points != curve.points:
            raise ArcError("twist curve and arc live on different spheres")
        arc = diagram.reduced()
        for _ in range(power):
            arc = _twist_once(arc, curve)
        return arc
    if isinstance(diagram, Mapping):
        return {k: dehn_twist(a, curve, power) for k, a in diagram.items()}
    if isinstance(diagram, (set, frozenset)):
        return type(diagram)(dehn_twist(a, curve, power) for a in diagram)
    return [dehn_twist(a, curve, power) for a in diagram]


def turn_word(x: int, half: str, m: int, ccw: bool) -> tuple[int, int]:
    """Gaps of one full turn around C_x starting from its `half` slot."""
    left, right = x, (x + 1) % m
    # counterclockwise from the top slot heads west first, from the bottom slot east
    if (half == U) == ccw:
        return (left, right)
    return (right, left)


def rotate_arc(arc: DiagramArc, ccw: bool) -> DiagramArc:
    """Wind the arc once around the circle at each end, in the same rotational sense."""
    m = arc.points
    head = turn_word(arc.start, arc.start_half, m, ccw)
    tail = turn_word(arc.end, arc.end_half, m, not ccw)[::-1]
    return replace(arc, gaps=head + arc.gaps + tail).reduced()


# relabeling, insertion and removal of circles


def _remap(arc: DiagramArc, new_m: int, circle, gap) -> DiagramArc:
    return DiagramArc(new_m, circle(arc.start), circle(arc.end), arc.start_half, tuple(gap(g) for g in arc.gaps)).reduced()


def relabel_arc(arc: DiagramArc, perm: Mapping[int, int]) -> DiagramArc:
    """Relabel the marked points by a rotation or reflection of their cyclic order.

    Any other permutation is not induced by a symmetry of the cut picture and is refused.
    """
    m = arc.points
    f = [perm.get(x, x) for x in range(m)]
    if sorted(f) != list(range(m)):
        raise ArcError("relabeling must permute the marked points")
    step = (f[1] - f[0]) % m if m > 1 else 1
    if step not in (1, m - 1) or any((f[(x + 1) % m] - f[x]) % m != step for x in range(m)):
        raise ArcError("relabeling is not a symmetry of the cyclic order of the points")
    if step == 1 or m == 2:
        # rotation: the gap right of C_x goes to the gap right of its image
        gap = lambda g: (f[(g - 1) % m] + 1) % m  # noqa: E731
    else:
        # reflection: the gap right of C_x lands left of its image
        gap = lambda g: f[(g - 1) % m]  # noqa: E731
    return _remap(arc, m, lambda x: f[x], gap)


def mirror_arc(arc: DiagramArc) -> DiagramArc:
    """Reflect across L: the same gaps, with the two halves exchanged."""
    return replace(arc, start_half=_flip(arc.start_half))


def insert_circles(arc: DiagramArc, after: int, count: int = 2) -> DiagramArc:
    """Add `count` circles just right of C_after, before every strand of that gap."""
    m = arc.points
    circle = lambda c: c if c <= after else c + count  # noqa: E731

    def gap(g: int) -> int:
        c = (g - 1) % m
        nc = after + count if c == after else circle(c)
        return (nc + 1) % (m + count)

    return _remap(arc, m + count, circle, gap)


def remove_circles(arc: DiagramArc, lo: int, count: int = 2) -> DiagramArc:
    """Fill in circles lo..lo+count-1; the gaps around them merge into one."""
    m = arc.points
    hi = lo + count - 1
    if lo <= arc.start <= hi or lo <= arc.end <= hi:
        raise ArcError("cannot remove a circle an arc ends on")
    circle = lambda c: c if c < lo else c - count  # noqa: E731
    nm = m - count

    def gap(g: int) -> int:
        c = (g - 1) % m
        if c == (lo - 1) % m or lo <= c <= hi:
            nc = (lo - 1) % nm if lo > 0 else nm - 1
        else:
            nc = circle(c)
        return (nc + 1) % nm

    return _remap(arc, nm, circle, gap)


def _move_end(arc: DiagramArc, old: int, new: int) -> DiagramArc:
    if arc.start == old:
        return replace(arc, start=new)
    if arc.end == old:
        return replace(arc, end=new)
    raise ArcError(f"arc does not end at {old}")


# systems


def _kind_half(kind: str) -> str:
    from .system import WHITNEY

    return U if kind == WHITNEY else D


def standard_arc(m: int, corners: tuple[int, int], kind: str) -> DiagramArc:
    a, b = sorted(corners)
    return DiagramArc(m, a, b, _kind_half(kind), ())


def _eye_of(sys, disc_id: str) -> Optional[int]:
    d = sys.disc(disc_id)
    return None if d.is_cross else d.reye


def surface_table(sys, eye: int, surface: str):
    """(ids, arcs, crossing table) for one eye's arcs on one sphere."""
    ds = sys.in_space(("eye", eye))
    ids = [d.id for d in ds]
    arcs = [sys.arcs[(i, surface)] for i in ids]
    return ids, arcs, (crossing_table(arcs) if arcs else {})


def arc_violations(sys) -> list:
    from .system import FINGER, Violation

    out = []
    add = lambda f, inv, msg: out.append(Violation(f, inv, msg))  # noqa: E731
    arcs = sys.arcs
    if sys.crosses:
        add("arcs", "geometric layer", "cross discs have no diagram arcs")
        return out
    want = {(d.id, s) for d in sys.discs for s in ("G", "R")}
    for k in sorted(want - set(arcs)):
        add(f"arc {k[0]} {k[1]}", "arc coverage", "every disc needs an arc on both spheres")
    for k in sorted(set(arcs) - want, key=str):
        add(f"arc {k[0]} {k[1]}", "arc coverage", "arc for an unknown disc or sphere")
    if out:
        return out
    for e in sys.eyes:
        m = e.point_count
        ds = sys.in_space(("eye", e.index))
        for s in ("G", "R"):
            ok = True
            for d in ds:
                a = arcs[(d.id, s)]
                where = f"arc {d.id} {s}"
                half = _kind_half(d.kind)
                if a.points != m:
                    add(where, "point count", f"arc lives on {a.points} points, eye has {m}")
                    ok = False
                elif a.endpoints != frozenset(d.corners):
                    add(where, "arc ends", f"arc ends {sorted(a.endpoints)} differ from corners {d.corners}")
                    ok = False
                elif a.start_half != half or a.end_half != half:
                    add(where, "slot half", f"{d.kind} arcs end on the {half} halves")
                    ok = False
                elif not a.is_reduced:
                    add(where, "normal form", "arc word is not reduced")
                    ok = False
            if not ok or not ds:
                continue
            ids, al, table = surface_table(sys, e.index, s)
            kinds = [sys.disc(i).kind for i in ids]
            x = sys.xg if s == "G" else sys.xr
            for p in range(len(ids)):
                if table.get((p, p), 0):
                    add(f"arc {ids[p]} {s}", "embedded arc", "the arc crosses itself")
                for q in range(p + 1, len(ids)):
                    c = table.get((p, q), 0)
                    if kinds[p] == kinds[q]:
                        if c:
                            add(f"arc {ids[p]} {s}", "disjointness", f"crosses {ids[q]} of the same kind {c} times")
                        continue
                    f, w = (ids[p], ids[q]) if kinds[p] == FINGER else (ids[q], ids[p])
                    if x.get((f, w), 0) != c:
                        add(f"x{s.lower()} {f} {w}", "geometric crossings", f"recorded {x.get((f, w), 0)}, arcs give {c}")
    return out


def crossings_from_arcs(sys) -> tuple[dict, dict]:
    """X tables recomputed from the attached arcs."""
    from .system import FINGER

    tables = {"G": {}, "R": {}}
    for e in sys.eyes:
        for s in ("G", "R"):
            ids, _, table = surface_table(sys, e.index, s)
            kinds = [sys.disc(i).kind for i in ids]
            for (p, q), c in table.items():
                if p != q and kinds[p] != kinds[q] and c:
                    f, w = (ids[p], ids[q]) if kinds[p] == FINGER else (ids[q], ids[p])
                    tables[s][(f, w)] = c
    return tables["G"], tables["R"]


def _map_eye(arcs: Mapping, sys, eye: int, fn) -> dict:
    return {k: (fn(a) if _eye_of(sys, k[0]) == eye else a) for k, a in arcs.items()}


def _is_chord(arcs: Mapping, ids: Iterable[str]) -> bool:
    return all(not arcs[(i, s)].gaps for i in ids for s in ("G", "R"))


def birth_arcs(arcs: Mapping, sys, eye: int, f: str, w: str) -> dict:
    top = sys.eye(eye).point_count - 1
    out = _map_eye(arcs, sys, eye, lambda a: insert_circles(a, top))
    m = top + 3
    for s in ("G", "R"):
        out[(w, s)] = DiagramArc(m, top + 1, top + 2, U)
        out[(f, s)] = DiagramArc(m, top + 1, top + 2, D)
    return out


def death_arcs(arcs: Mapping, sys, eye: int, f: str, w: str) -> Optional[dict]:
    if not _is_chord(arcs, (f, w)):
        return None
    lo = sys.disc(f).corners[0]
    rest = {k: a for k, a in arcs.items() if k[0] not in (f, w)}
    return _map_eye(rest, sys, eye, lambda a: remove_circles(a, lo))


def x3_arcs(arcs: Mapping, sys, eye: int, point: int, f: str, w: str, mover: Optional[str]) -> dict:
    out = _map_eye(arcs, sys, eye, lambda a: insert_circles(a, point))
    m = sys.eye(eye).point_count + 2
    for s in ("G", "R"):
        if mover is not None:
            # the finger at p leaves the new finger's slot and ends at p'' instead
            out[(mover, s)] = _move_end(out[(mover, s)], point, point + 2)
        out[(f, s)] = DiagramArc(m, point, point + 1, D)
        out[(w, s)] = DiagramArc(m, point + 1, point + 2, U)
    return out


def x3_remove_arcs(arcs: Mapping, sys, eye: int, f: str, w: str, mover: Optional[str]) -> Optional[dict]:
    if not _is_chord(arcs, (f, w)):
        return None
    p = sys.disc(f).corners[0]
    out = {k: a for k, a in arcs.items() if k[0] not in (f, w)}
    if mover is not None:
        for s in ("G", "R"):
            out[(mover, s)] = _move_end(out[(mover, s)], p + 2, p)
    return _map_eye(out, sys, eye, lambda a: remove_circles(a, p + 1))


def saddle_arcs(arcs: Mapping, sys, eye: int, point: int, fD: str, wD: str, occupant: str) -> dict:
    out = _map_eye(arcs, sys, eye, lambda a: insert_circles(a, point))
    m = sys.eye(eye).point_count + 2
    for s in ("G", "R"):
        out[(occupant, s)] = _move_end(out[(occupant, s)], point, point + 2)
        out[(wD, s)] = DiagramArc(m, point, point + 1, U)
        out[(fD, s)] = DiagramArc(m, point + 1, point + 2, D)
    return out


def unsaddle_arcs(arcs: Mapping, sys, eye: int, f: str, w: str, occupant: str) -> Optional[dict]:
    if not _is_chord(arcs, (f, w)):
        return None
    if any(v for (a, b), v in list(sys.xg.items()) + list(sys.xr.items()) if b == w):
        return None
    p = sys.disc(w).corners[0]
    out = {k: a for k, a in arcs.items() if k[0] not in (f, w)}
    for s in ("G", "R"):
        out[(occupant, s)] = _move_end(out[(occupant, s)], p + 2, p)
    return _map_eye(out, sys, eye, lambda a: remove_circles(a, p + 1))


def standard_arcs(sys) -> dict:
    out = {}
    for e in sys.eyes:
        m = e.point_count
        for d in sys.in_space(("eye", e.index)):
            for s in ("G", "R"):
                out[(d.id, s)] = standard_arc(m, d.corners, d.kind)
    return out


def attach_random_arcs(sys, rng: random.Random, max_crossing: int = 2, attempts: int = 30):
    """Give every disc chord arcs, then twist one kind of arc on each sphere at random.

    Twists keep each kind embedded and disjoint; a draw is kept when no crossing
    count exceeds max_crossing, else the untwisted chords are used.
    """
    from .system import FINGER, WHITNEY

    if sys.crosses:
        raise ArcError("cross discs have no diagram arcs")
    arcs = standard_arcs(sys)
    check = sys.evolve(arcs=arcs, xg={}, xr={})
    bad = arc_violations(check)
    if bad:
        raise ArcError(f"chord arcs are not embedded: {bad[0]}")
    for e in sys.eyes:
        m = e.point_count
        ds = sys.in_space(("eye", e.index))
        if m < 3 or not ds:
            continue
        for s in ("G", "R"):
            for _ in range(attempts):
                kind = rng.choice([FINGER, FINGER, WHITNEY])
                new = dict(arcs)
                for _ in range(rng.randint(1, 3)):
                    i = rng.randint(1, m - 1)
                    j = rng.randint(i, m - 1)
                    c = TwistCurve(m, i, j, rng.choice([LEFT, RIGHT]))
                    for d in ds:
                        if d.kind == kind:
                            new[(d.id, s)] = dehn_twist(new[(d.id, s)], c)
                trial = sys.evolve(arcs=new)
                ids, _, table = surface_table(trial, e.index, s)
                if max(table.values(), default=0) <= max_crossing:
                    arcs = new
                    break
    out = sys.evolve(arcs=arcs, synthetic=False)
    xg, xr = crossings_from_arcs(out)
    return out.evolve(xg=xg, xr=xr)


# bands and slides


def _faces(lay: _Layout, h: str):
    """Faces of hemisphere h drawn with straight chords on a unit disc.

    Returns (faces, sides, touch, rims): sides[f] lists (arc, chord, LEFT/RIGHT)
    for the chords bounding face f, touch[(g, j)] is the face meeting gap g
    between its j-th and (j+1)-th strands, and rims[x] the faces along the half
    of C_x in this hemisphere.
    """
    from shapely.geometry import LineString, Point
    from shapely.ops import polygonize, unary_union

    m = lay.m
    width = math.pi / m
    sgn = 1.0 if h == U else -1.0  # D is drawn mirrored so that left and right agree with U
    coords, mids, ring = {}, {}, []
    for p in range(2 * m):
        elem = ("G", p // 2) if p % 2 == 0 else ("C", p // 2, h)
        pts = lay.order.get(elem, [])
        n = len(pts)
        marks = [(0.0, None)] + [((t + 1) / (n + 1), pt) for t, pt in enumerate(pts)]
        if elem[0] == "G":
            marks += [((j + 0.5) / (n + 1), ("mid", elem[1], j)) for j in range(n + 1)]
        for t, tag in sorted(marks, key=lambda x: x[0]):
            a = sgn * (p + t) * width
            xy = (math.cos(a), math.sin(a))
            ring.append(xy)
            if tag is None:
                continue
            if tag[0] == "mid":
                mids[(tag[1], tag[2])] = xy
            else:
                coords[tag] = xy
    lines = [LineString(ring + [ring[0]])]
    chords = []
    for ai, k, _, _ in lay.chords[h]:
        chords.append((ai, k, coords[(ai, k)], coords[(ai, k + 1)]))
        lines.append(LineString(chords[-1][2:]))
    noded = unary_union(lines)
    faces = list(polygonize(noded))

    def face_at(x: float, y: float) -> int:
        pt = Point(x, y)
        return min(range(len(faces)), key=lambda i: faces[i].distance(pt))

    eps = 1e-7
    sides: list[list] = [[] for _ in faces]
    for ai, k, a, b in chords:
        dx, dy = b[0] - a[0], b[1] - a[1]
        norm = math.hypot(dx, dy)
        nx, ny = -dy / norm, dx / norm
        # probe both sides of every piece the chord is cut into
        ts = {0.0, 1.0}
        for seg in getattr(noded, "geoms", [noded]):
            for x, y in seg.coords:
                t = ((x - a[0]) * dx + (y - a[1]) * dy) / norm**2
                if 0 < t < 1 and abs((x - a[0]) * ny * norm - (y - a[1]) * nx * norm) < 1e-9 * norm:
                    ts.add(t)
        ts = sorted(ts)
        for t0, t1 in zip(ts, ts[1:]):
            t = (t0 + t1) / 2
            x, y = a[0] + t * dx, a[1] + t * dy
            for side, sg in ((LEFT, 1), (RIGHT, -1)):
                entry = (ai, k, side)
                f = face_at(x + sg * eps * nx, y + sg * eps * ny)
                if entry not in sides[f]:
                    sides[f].append(entry)
    touch = {key: face_at(xy[0] * (1 - eps), xy[1] * (1 - eps)) for key, xy in mids.items()}
    rims: dict[int, set] = {}
    for x in range(m):
        n = len(lay.order.get(("C", x, h), []))
        for j in range(n + 1):
            a = sgn * (2 * x + 1 + (j + 0.5) / (n + 1)) * width
            rims.setdefault(x, set()).add(face_at(math.cos(a) * (1 - eps), math.sin(a) * (1 - eps)))
    return faces, sides, touch, rims


def _loop_word(o: DiagramArc, at: int, cw: bool) -> list[int]:
    """Boundary of a thin neighbourhood of o and its two end circles, read from position `at`.

    Positions cut the clockwise loop (o on the traveller's right) between
    crossings: chord k on the left is k, chord k on the right is 2n+2-k, and the
    far sides of the end and start circles are n+1 and 2n+3 (n gaps in o).
    """
    m = o.points
    g = list(o.gaps)
    seq = g + list(turn_word(o.end, o.end_half, m, False)) + g[::-1] + list(turn_word(o.start, o.start_half, m, False))
    word = seq[at:] + seq[:at]
    return word if cw else word[::-1]


def band_sums(arcs: Sequence[DiagramArc], mover: int, over: int) -> list[DiagramArc]:
    """Arcs obtained by banding arcs[mover] to the loop around arcs[over].

    The band runs through faces of the minimal-position picture, so it meets no
    arc.  One candidate per pair of attaching chords and sides, shortest band
    first; duplicates removed.
    """
    lay = _Layout(arcs)
    info = {h: _faces(lay, h) for h in HALVES}
    adj: dict[tuple, list] = {}
    for (g, j), fu in sorted(info[U][2].items()):
        fd = info[D][2][(g, j)]
        adj.setdefault((U, fu), []).append(((D, fd), g))
        adj.setdefault((D, fd), []).append(((U, fu), g))
    d, o = arcs[mover], arcs[over]
    n = len(o.gaps)
    starts, ends = [], {}
    for h in HALVES:
        for fi, here in enumerate(info[h][1]):
            for ai, k, side in here:
                if ai == mover:
                    starts.append(((h, fi), k, side))
                if ai == over:
                    ends.setdefault((h, fi), set()).add(k if side == LEFT else 2 * n + 2 - k)
    # the loop also runs along the far half of each end circle
    for x, half, at in ((o.end, o.end_half, n + 1), (o.start, o.start_half, 2 * n + 3)):
        h = _flip(half)
        for fi in info[h][3].get(x, ()):
            ends.setdefault((h, fi), set()).add(at)
    found = []
    for node, kd, sd in sorted(starts):
        prev = {node: None}
        queue = [node]
        for cur in queue:
            for nxt, g in adj.get(cur, ()):
                if nxt not in prev:
                    prev[nxt] = (cur, g)
                    queue.append(nxt)
        for tnode in sorted(ends):
            if tnode not in prev:
                continue
            band = []
            cur = tnode
            while prev[cur] is not None:
                cur, g = prev[cur]
                band.append(g)
            band.reverse()
            for at in sorted(ends[tnode]):
                found.append((len(band), kd, sd, at, tuple(band)))
    out, seen = [], set()
    for _, kd, sd, at, band in sorted(found):
        # leaving the mover to its left puts the loop on the traveller's right
        word = list(d.gaps[:kd]) + list(band) + _loop_word(o, at, sd == LEFT) + list(band[::-1]) + list(d.gaps[kd:])
        arc = replace(d, gaps=tuple(word)).reduced()
        if arc not in seen:
            seen.add(arc)
            out.append(arc)
    return out


__all__ = [
    "ArcError",
    "DiagramArc",
    "LEFT",
    "MarkedSphere",
    "RIGHT",
    "TwistCurve",
    "arc_violations",
    "attach_random_arcs",
    "band_sums",
    "crossing_table",
    "crossings_from_arcs",
    "dehn_twist",
    "geometric_intersection",
    "insert_circles",
    "minimal_position",
    "mirror_arc",
    "relabel_arc",
    "remove_circles",
    "rotate_arc",
    "self_intersection",
    "standard_arcs",
    "turn_word",
]
