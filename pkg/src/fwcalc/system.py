"""Finger/Whitney systems: the data model, validation, cycle structure and the fwsys v1 text format."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

FINGER = "F"
WHITNEY = "W"
SURFACES = ("G", "R")

_ID_RE = re.compile(r"^([A-Za-z]+)(\d+)(\**)$")


def id_key(disc_id: str) -> tuple:
    """Natural sort key, so f2 sorts before f10."""
    m = _ID_RE.match(disc_id)
    if not m:
        return (disc_id, -1, "")
    return (m.group(1), int(m.group(2)), m.group(3))


def sign(point: int) -> int:
    return 1 if point % 2 == 0 else -1


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class SystemError_(ValueError):
    """A precondition on a system failed."""


class NotIAError(SystemError_):
    pass


@dataclass(frozen=True)
class EyeRecord:
    index: int
    n: int

    @property
    def point_count(self) -> int:
        return 2 * self.n + 1

    @property
    def points(self) -> range:
        return range(self.point_count)


@dataclass(frozen=True)
class CrossRecord:
    """Intersections between R_reye and G_geye; 2m points, none unpaired."""

    reye: int
    geye: int
    m: int

    @property
    def point_count(self) -> int:
        return 2 * self.m


@dataclass(frozen=True)
class DiscRecord:
    id: str
    kind: str
    reye: int
    geye: int
    gcorners: tuple[int, int]
    rcorners: tuple[int, int]
    germ: tuple[int, int] = (0, 0)
    h2: frozenset = frozenset()

    @property
    def is_cross(self) -> bool:
        return self.reye != self.geye

    @property
    def corners(self) -> tuple[int, int]:
        return self.gcorners

    @property
    def space(self) -> tuple:
        """The marked-point list this disc's corners live on."""
        if self.is_cross:
            return ("cross", self.reye, self.geye)
        return ("eye", self.reye)

    @property
    def untwisted(self) -> bool:
        return self.germ == (0, 0)

    @property
    def neg_corner(self) -> int:
        return next(c for c in self.corners if c % 2 == 1)

    @property
    def pos_corner(self) -> int:
        return next(c for c in self.corners if c % 2 == 0)

    def sphere(self, surface: str) -> int:
        return self.geye if surface == "G" else self.reye


def _freeze(d: Mapping) -> Mapping:
    return MappingProxyType({k: v for k, v in d.items() if v})


@dataclass(frozen=True, eq=True)
class FWSystem:
    """An immutable snapshot of a multi-eye finger/Whitney system.

    Interior parities and boundary crossings are only stored for finger/Whitney
    pairs, keyed (finger id, whitney id); discs of one kind are disjoint.
    """

    eyes: tuple[EyeRecord, ...]
    discs: tuple[DiscRecord, ...]
    m: frozenset = frozenset()
    xg: Mapping = field(default_factory=lambda: MappingProxyType({}))
    xr: Mapping = field(default_factory=lambda: MappingProxyType({}))
    crosses: tuple[CrossRecord, ...] = ()
    w_order: Mapping = field(default_factory=lambda: MappingProxyType({}))
    synthetic: bool = False
    arcs: Optional[Mapping] = None
    a0: Mapping = field(default_factory=lambda: MappingProxyType({}))

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "discs", tuple(sorted(self.discs, key=lambda d: id_key(d.id))))
        object.__setattr__(self, "m", frozenset(self.m))
        object.__setattr__(self, "xg", _freeze(self.xg))
        object.__setattr__(self, "xr", _freeze(self.xr))
        object.__setattr__(self, "w_order", MappingProxyType(dict(self.w_order)))
        if self.arcs is not None:
            object.__setattr__(self, "arcs", MappingProxyType(dict(self.arcs)))
        object.__setattr__(self, "a0", MappingProxyType({k: tuple(v) for k, v in self.a0.items() if any(v)}))
        object.__setattr__(self, "_index", {d.id: d for d in self.discs})

    # lookup

    def disc(self, disc_id: str) -> DiscRecord:
        try:
            return self._index[disc_id]  # type: ignore[attr-defined]
        except KeyError:
            raise SystemError_(f"unknown disc {disc_id}") from None

    def has(self, disc_id: str) -> bool:
        return disc_id in self._index  # type: ignore[attr-defined]

    def eye(self, index: int) -> EyeRecord:
        for e in self.eyes:
            if e.index == index:
                return e
        raise SystemError_(f"unknown eye {index}")

    def cross(self, reye: int, geye: int) -> Optional[CrossRecord]:
        for c in self.crosses:
            if (c.reye, c.geye) == (reye, geye):
                return c
        return None

    def space_size(self, space: tuple) -> int:
        if space[0] == "eye":
            return self.eye(space[1]).point_count
        c = self.cross(space[1], space[2])
        return c.point_count if c else 0

    def fingers(self, eye: Optional[int] = None) -> list[DiscRecord]:
        return [d for d in self.discs if d.kind == FINGER and (eye is None or d.space == ("eye", eye))]

    def whitneys(self, eye: Optional[int] = None) -> list[DiscRecord]:
        return [d for d in self.discs if d.kind == WHITNEY and (eye is None or d.space == ("eye", eye))]

    def in_space(self, space: tuple) -> list[DiscRecord]:
        return [d for d in self.discs if d.space == space]

    @staticmethod
    def key(a: str, b: str, kinds: Mapping) -> tuple[str, str]:
        return (a, b) if kinds[a] == FINGER else (b, a)

    def pair(self, a: str, b: str) -> tuple[str, str]:
        da, db = self.disc(a), self.disc(b)
        if da.kind == db.kind:
            raise SystemError_(f"{a} and {b} are the same kind")
        return (a, b) if da.kind == FINGER else (b, a)

    def M(self, a: str, b: str) -> int:
        if self.disc(a).kind == self.disc(b).kind:
            return 0
        return 1 if self.pair(a, b) in self.m else 0

    def X(self, surface: str, a: str, b: str) -> int:
        if self.disc(a).kind == self.disc(b).kind:
            return 0
        table = self.xg if surface == "G" else self.xr
        return table.get(self.pair(a, b), 0)

    def partners(self, disc_id: str) -> list[str]:
        """Opposite-kind discs at this disc's corners, with multiplicity."""
        d = self.disc(disc_id)
        out = []
        for c in d.corners:
            for e in self.in_space(d.space):
                if e.kind != d.kind and c in e.corners:
                    out.append(e.id)
        return out

    def occupants(self, space: tuple, point: int) -> dict[str, str]:
        out = {}
        for d in self.in_space(space):
            if point in d.corners:
                out[d.kind] = d.id
        return out

    def next_id(self, prefix: str) -> str:
        used = [id_key(d.id)[1] for d in self.discs if id_key(d.id)[0] == prefix]
        return f"{prefix}{max(used, default=0) + 1}"

    def a0_data(self, finger: str) -> tuple[int, int, int]:
        """(xg, xr, m) of a finger against the collar of a_0 that the first switch disc will use."""
        return self.a0.get(finger, (0, 0, 0))

    def evolve(self, **changes) -> "FWSystem":
        return replace(self, **changes)


# validation


@dataclass(frozen=True)
class Violation:
    field: str
    invariant: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.invariant}: {self.message}"


def validate(sys: FWSystem) -> list[Violation]:
    """Return every invariant violation; an empty list means the system is valid."""
    out: list[Violation] = []
    add = lambda f, inv, msg: out.append(Violation(f, inv, msg))  # noqa: E731
    indices = [e.index for e in sys.eyes]
    if indices != list(range(1, len(indices) + 1)):
        add("eyes", "eye numbering", f"eyes must be numbered 1..k, got {indices}")
    for e in sys.eyes:
        if e.n < 0:
            add(f"eye {e.index}", "disc count", "n must be nonnegative")
    ids = [d.id for d in sys.discs]
    if len(set(ids)) != len(ids):
        add("discs", "unique ids", "duplicate disc id")
    for d in sys.discs:
        where = f"disc {d.id}"
        if d.kind not in (FINGER, WHITNEY):
            add(where, "kind", f"unknown kind {d.kind}")
            continue
        if d.reye not in indices or d.geye not in indices:
            add(where, "eye reference", "no such eye")
            continue
        if d.is_cross and sys.cross(d.reye, d.geye) is None:
            add(where, "cross points", f"no cross record for {d.reye},{d.geye}")
            continue
        if tuple(sorted(d.gcorners)) != tuple(sorted(d.rcorners)):
            add(where, "corner agreement", "G and R corners must be the same intersection points")
        size = sys.space_size(d.space)
        a, b = d.gcorners
        if not (0 <= a < size and 0 <= b < size):
            add(where, "corner range", f"corners {a},{b} outside 0..{size - 1}")
        elif (a + b) % 2 == 0:
            add(where, "corner sign", "corners must pair one positive with one negative point")
        p, q = d.germ
        if (p + q) % 2:
            add(where, "germ parity", "p+q even")
        if any(not 0 <= x < size for x in d.h2):
            add(where, "h2 offset", "offset support outside the point list")
    spaces = [("eye", e.index, e.point_count, e.n) for e in sys.eyes]
    spaces += [("cross", (c.reye, c.geye), c.point_count, c.m) for c in sys.crosses]
    for tag, idx, size, n in spaces:
        space = ("eye", idx) if tag == "eye" else ("cross",) + idx
        for kind in (FINGER, WHITNEY):
            ds = [d for d in sys.in_space(space) if d.kind == kind]
            where = f"{tag} {idx}"
            if len(ds) != n:
                add(where, "completeness", f"expected {n} {kind} discs, found {len(ds)}")
            seen: dict[int, str] = {}
            for d in ds:
                for c in d.corners:
                    if c in seen:
                        add(where, "disjointness", f"point {c} is a corner of {seen[c]} and {d.id}")
                    seen[c] = d.id
    kinds = {d.id: d.kind for d in sys.discs}
    discs = {d.id: d for d in sys.discs}
    for name, table in (("m", {k: 1 for k in sys.m}), ("xg", sys.xg), ("xr", sys.xr)):
        for (f, w), v in table.items():
            if kinds.get(f) != FINGER or kinds.get(w) != WHITNEY:
                add(name, "finger/whitney pair", f"entry ({f},{w}) is not a finger/whitney pair")
                continue
            if name != "m":
                if not isinstance(v, int) or v < 0:
                    add(name, "nonnegative crossings", f"({f},{w}) = {v}")
                surface = "G" if name == "xg" else "R"
                if discs[f].sphere(surface) != discs[w].sphere(surface):
                    add(name, "same sphere", f"({f},{w}) have boundaries on different {surface} spheres")
    for e, order in sys.w_order.items():
        want = sorted(d.id for d in sys.whitneys(e))
        if sorted(order) != want:
            add(f"order {e}", "total order", "order must list each Whitney disc of the eye once")
    for f, (g, r, mm) in sys.a0.items():
        if kinds.get(f) != FINGER or discs[f].is_cross:
            add("a0", "collar entry", f"{f} is not a finger of an eye")
        elif g < 0 or r < 0 or mm not in (0, 1):
            add("a0", "collar entry", f"{f}: crossings must be nonnegative and parity 0/1")
    if sys.arcs is not None:
        from .arcdiag import arc_violations

        out.extend(arc_violations(sys))
    return out


def is_valid(sys: FWSystem) -> bool:
    return not validate(sys)


# cycle structure


@dataclass(frozen=True)
class Component:
    discs: tuple[str, ...]
    points: tuple[int, ...]
    closed: bool


@dataclass(frozen=True)
class Decomposition:
    path: Component
    cycles: tuple[Component, ...]


def _adjacency(discs: Iterable[DiscRecord]) -> dict[int, list[DiscRecord]]:
    adj: dict[int, list[DiscRecord]] = {}
    for d in discs:
        for c in d.corners:
            adj.setdefault(c, []).append(d)
    return adj


def w_unpaired(sys: FWSystem, eye: int) -> int:
    covered = {c for d in sys.whitneys(eye) for c in d.corners}
    free = [p for p in sys.eye(eye).points if p not in covered]
    if len(free) != 1:
        raise SystemError_(f"eye {eye}: Whitney discs leave {len(free)} points unpaired")
    return free[0]


def cycle_decomposition(sys: FWSystem, eye: int, surface: str = "G") -> Decomposition:
    """Split the eye's boundary arcs into the arc through the finger end and closed cycles.

    Corners are shared by both spheres, so the result is the same for G and R.
    The path is read from the point with no Whitney disc; each cycle starts at its
    smallest Whitney disc, entered at that disc's negative corner.
    """
    if surface not in SURFACES:
        raise ValueError(f"surface must be G or R, got {surface}")
    discs = sys.fingers(eye) + sys.whitneys(eye)
    adj = _adjacency(discs)

    def step(p: int, kind: str):
        nxt = [d for d in adj.get(p, []) if d.kind == kind]
        return nxt[0] if nxt else None

    start = w_unpaired(sys, eye)
    used: set[str] = set()
    seq, pts = [], [start]
    p, kind = start, FINGER
    while (d := step(p, kind)) is not None:
        used.add(d.id)
        seq.append(d.id)
        p = d.corners[0] if d.corners[1] == p else d.corners[1]
        pts.append(p)
        kind = WHITNEY if kind == FINGER else FINGER
    path = Component(tuple(seq), tuple(pts), False)
    cycles = []
    for w in sorted((d for d in discs if d.kind == WHITNEY), key=lambda d: id_key(d.id)):
        if w.id in used:
            continue
        seq, pts = [], [w.neg_corner]
        p, d = w.neg_corner, w
        while d.id not in used:
            used.add(d.id)
            seq.append(d.id)
            p = d.corners[0] if d.corners[1] == p else d.corners[1]
            pts.append(p)
            d = step(p, FINGER if d.kind == WHITNEY else WHITNEY)
        cycles.append(Component(tuple(seq), tuple(pts[:-1]), True))
    return Decomposition(path, tuple(cycles))


def is_ia(sys: FWSystem, eye: int) -> bool:
    return not cycle_decomposition(sys, eye).cycles


def classify_position(sys: FWSystem) -> dict[int, str]:
    out = {}
    for e in sys.eyes:
        if not is_ia(sys, e.index):
            out[e.index] = "FingerFirstGeneral"
            continue
        ids = {d.id for d in sys.fingers(e.index) + sys.whitneys(e.index)}
        g = any(v for (f, w), v in sys.xg.items() if f in ids and w in ids)
        r = any(v for (f, w), v in sys.xr.items() if f in ids and w in ids)
        out[e.index] = "EA" if not (g or r) else "G-EA" if not g else "R-EA" if not r else "IA"
    return out


def ia_ordering(sys: FWSystem, eye: int, switch_info=None) -> tuple[str, ...]:
    """Discs of an IA eye in order along the arc, starting at the finger end.

    For a switched eye pass the switched system; switch_info is accepted so
    callers can document which switch produced it.
    """
    dec = cycle_decomposition(sys, eye)
    if dec.cycles:
        raise NotIAError(f"eye {eye} has {len(dec.cycles)} boundary cycles")
    return dec.path.discs


# role swap and relabeling


def relabel_points(sys: FWSystem, space: tuple, perm: Mapping[int, int]) -> FWSystem:
    """Apply a sign-preserving relabeling to one point list."""
    if any(sign(a) != sign(b) for a, b in perm.items()):
        raise SystemError_("relabeling must preserve signs")
    f = lambda p: perm.get(p, p)  # noqa: E731
    discs = []
    for d in sys.discs:
        if d.space == space:
            d = replace(
                d,
                gcorners=tuple(sorted(map(f, d.gcorners))),
                rcorners=tuple(sorted(map(f, d.rcorners))),
                h2=frozenset(map(f, d.h2)),
            )
        discs.append(d)
    arcs = sys.arcs
    if arcs is not None:
        from .arcdiag import ArcError, relabel_arc

        try:
            arcs = {k: (relabel_arc(a, perm) if sys.disc(k[0]).space == space else a) for k, a in arcs.items()}
        except ArcError:
            # only rotations and reflections of the point order move arcs along
            arcs = None
    return sys.evolve(discs=tuple(discs), arcs=arcs)


def normalize_a0(sys: FWSystem) -> FWSystem:
    """Relabel each eye so the point with no Whitney disc is a_0."""
    for e in sys.eyes:
        u = w_unpaired(sys, e.index)
        if u != 0:
            sys = relabel_points(sys, ("eye", e.index), {0: u, u: 0})
    return sys


def _swap_id(i: str) -> str:
    m = _ID_RE.match(i)
    if not m:
        return i
    pre = m.group(1)
    table = {"f": "w", "w": "f", "cf": "cw", "cw": "cf"}
    return table.get(pre, pre) + m.group(2) + m.group(3)


def swap_roles(sys: FWSystem) -> FWSystem:
    """Exchange finger and Whitney roles, renaming f<k> <-> w<k>, then restore the a_0 convention."""
    if sys.a0:
        raise SystemError_("role swap needs empty a_0 collar data")
    ren = {d.id: _swap_id(d.id) for d in sys.discs}
    if len(set(ren.values())) != len(ren):
        raise SystemError_("role swap would produce colliding ids")
    discs = tuple(replace(d, id=ren[d.id], kind=WHITNEY if d.kind == FINGER else FINGER) for d in sys.discs)
    flip = lambda t: {(ren[w], ren[f]): v for (f, w), v in t.items()}  # noqa: E731
    arcs = None
    if sys.arcs is not None:
        from .arcdiag import mirror_arc

        # finger and Whitney arcs live on opposite halves, so the roles swap by reflection
        arcs = {(ren[i], s): mirror_arc(a) for (i, s), a in sys.arcs.items()}
    out = FWSystem(
        eyes=sys.eyes,
        discs=discs,
        m=frozenset((ren[w], ren[f]) for f, w in sys.m),
        xg=flip(sys.xg),
        xr=flip(sys.xr),
        crosses=sys.crosses,
        synthetic=sys.synthetic,
        arcs=arcs,
    )
    return normalize_a0(out)


# fwsys v1


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",")) if text not in ("", "-") else ()


def serialize(sys: FWSystem) -> str:
    lines = ["fwsys v1", f"eyes {len(sys.eyes)}"]
    for e in sys.eyes:
        lines.append(f"eye {e.index} n {e.n}")
    for c in sys.crosses:
        lines.append(f"cross {c.reye} {c.geye} m {c.m}")
    for e in sorted(sys.w_order):
        lines.append(f"order {e} {','.join(sys.w_order[e])}")
    if sys.synthetic:
        lines.append("flag synthetic")
    for d in sys.discs:
        lines.append(
            f"disc {d.id} kind={d.kind} reye={d.reye} geye={d.geye} "
            f"gcorners={d.gcorners[0]},{d.gcorners[1]} rcorners={d.rcorners[0]},{d.rcorners[1]} "
            f"germ={d.germ[0]},{d.germ[1]}"
        )
    fs, ws = sys.fingers(), sys.whitneys()
    fs += [d for d in sys.discs if d.kind == FINGER and d.is_cross]
    ws += [d for d in sys.discs if d.kind == WHITNEY and d.is_cross]
    fs.sort(key=lambda d: id_key(d.id))
    ws.sort(key=lambda d: id_key(d.id))
    for tag, surface in (("xg", "G"), ("xr", "R")):
        table = sys.xg if surface == "G" else sys.xr
        for f in fs:
            for w in ws:
                if f.sphere(surface) == w.sphere(surface):
                    lines.append(f"{tag} {f.id} {w.id} {table.get((f.id, w.id), 0)}")
    for f in fs:
        for w in ws:
            lines.append(f"m {f.id} {w.id} {1 if (f.id, w.id) in sys.m else 0}")
    for d in sys.discs:
        if d.h2:
            lines.append(f"germ {d.id} h2={','.join(str(p) for p in sorted(d.h2))}")
    for f in sorted(sys.a0, key=id_key):
        g, r, mm = sys.a0[f]
        lines.append(f"a0 {f} xg={g} xr={r} m={mm}")
    if sys.arcs is not None:
        for (i, s) in sorted(sys.arcs, key=lambda k: (id_key(k[0]), k[1])):
            lines.append(f"arc {i} {s} {sys.arcs[(i, s)].to_text()}")
    return "\n".join(lines) + "\n"


def _kv(tokens: list[str], lineno: int) -> dict[str, str]:
    out = {}
    for t in tokens:
        if "=" not in t:
            raise ParseError(lineno, f"expected key=value, got {t!r}")
        k, v = t.split("=", 1)
        out[k] = v
    return out


def parse(text: str, normalize: bool = True) -> FWSystem:
    """Parse fwsys v1 text; raises ParseError with the offending line number."""
    lines = text.split("\n")
    if not lines or lines[0].strip() != "fwsys v1":
        raise ParseError(1, "missing 'fwsys v1' header")
    eyes, crosses, discs = [], [], []
    order: dict[int, tuple] = {}
    m, xg, xr = set(), {}, {}
    h2: dict[str, frozenset] = {}
    arcs: dict = {}
    a0: dict = {}
    synthetic = False
    declared = None
    disc_line: dict[str, int] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        head = tok[0]
        try:
            if head == "eyes":
                declared = int(tok[1])
            elif head == "eye":
                if len(tok) != 4 or tok[2] != "n":
                    raise ParseError(lineno, "expected 'eye <i> n <n>'")
                eyes.append(EyeRecord(int(tok[1]), int(tok[3])))
            elif head == "cross":
                crosses.append(CrossRecord(int(tok[1]), int(tok[2]), int(tok[4])))
            elif head == "order":
                order[int(tok[1])] = tuple(tok[2].split(","))
            elif head == "flag":
                if tok[1] != "synthetic":
                    raise ParseError(lineno, f"unknown flag {tok[1]}")
                synthetic = True
            elif head == "disc":
                kv = _kv(tok[2:], lineno)
                g, r = _ints(kv["gcorners"]), _ints(kv["rcorners"])
                if len(g) != 2 or len(r) != 2:
                    raise ParseError(lineno, "a disc has exactly two corners")
                if (g[0] + g[1]) % 2 == 0 or (r[0] + r[1]) % 2 == 0:
                    raise ParseError(lineno, "corners must pair one positive with one negative point")
                germ = _ints(kv.get("germ", "0,0"))
                discs.append(
                    DiscRecord(
                        tok[1], kv["kind"], int(kv["reye"]), int(kv["geye"]),
                        tuple(sorted(g)), tuple(sorted(r)), (germ[0], germ[1]),
                    )
                )
                disc_line[tok[1]] = lineno
            elif head in ("xg", "xr", "m"):
                if len(tok) != 4:
                    raise ParseError(lineno, f"expected '{head} <finger> <whitney> <value>'")
                v = int(tok[3])
                if head == "m":
                    if v % 2:
                        m.add((tok[1], tok[2]))
                else:
                    (xg if head == "xg" else xr)[(tok[1], tok[2])] = v
            elif head == "germ":
                kv = _kv(tok[2:], lineno)
                h2[tok[1]] = frozenset(_ints(kv.get("h2", "")))
            elif head == "a0":
                kv = _kv(tok[2:], lineno)
                a0[tok[1]] = (int(kv.get("xg", 0)), int(kv.get("xr", 0)), int(kv.get("m", 0)))
            elif head == "arc":
                from .arcdiag import DiagramArc

                arcs[(tok[1], tok[2])] = DiagramArc.from_text(" ".join(tok[3:]))
            else:
                raise ParseError(lineno, f"unknown record {head!r}")
        except ParseError:
            raise
        except (ValueError, IndexError, KeyError) as exc:
            raise ParseError(lineno, f"malformed {head} record ({exc})") from None
    if declared is not None and declared != len(eyes):
        raise ParseError(2, f"declared {declared} eyes, found {len(eyes)}")
    known = {d.id: d.kind for d in discs}
    for (f, w) in list(xg) + list(xr) + list(m):
        if known.get(f) != FINGER or known.get(w) != WHITNEY:
            raise ParseError(0, f"entry ({f},{w}) must name a finger then a Whitney disc")
    discs = [replace(d, h2=h2.get(d.id, frozenset())) for d in discs]
    sys = FWSystem(
        eyes=tuple(eyes), discs=tuple(discs), m=frozenset(m), xg=xg, xr=xr,
        crosses=tuple(crosses), w_order=order, synthetic=synthetic,
        arcs=arcs or None, a0=a0,
    )
    bad = validate(sys)
    if bad:
        v = bad[0]
        where = v.field.split()
        line = disc_line.get(where[1], 0) if where[0] == "disc" and len(where) > 1 else 0
        raise ParseError(line, str(v))
    return normalize_a0(sys) if normalize else sys


def standard_system(ns: Iterable[int], interior: Iterable[tuple[str, str]] = ()) -> FWSystem:
    """Framed finger form: on each eye f_i = (a_{2i-2}, a_{2i-1}), w_i = (a_{2i-1}, a_{2i}).

    Disc ids are numbered globally across eyes in eye order.
    """
    eyes, discs = [], []
    k = 0
    for e, n in enumerate(ns, start=1):
        eyes.append(EyeRecord(e, n))
        for i in range(1, n + 1):
            k += 1
            discs.append(DiscRecord(f"f{k}", FINGER, e, e, (2 * i - 2, 2 * i - 1), (2 * i - 2, 2 * i - 1)))
            discs.append(DiscRecord(f"w{k}", WHITNEY, e, e, (2 * i - 1, 2 * i), (2 * i - 1, 2 * i)))
    return FWSystem(eyes=tuple(eyes), discs=tuple(discs), m=frozenset(interior))


def key_example(k: int = 1, eye: int = 1) -> FWSystem:
    """k eyes with one disc pair each; the pair in `eye` has M(f, w) = 1."""
    return standard_system([1] * k, interior=[(f"f{eye}", f"w{eye}")])


def pad_eyes(sys: FWSystem, count: int = 1, n: int = 1) -> FWSystem:
    """Append `count` eyes in framed finger form with n disc pairs each and no data."""
    eyes = list(sys.eyes)
    discs = list(sys.discs)
    k = max([id_key(d.id)[1] for d in discs if not d.is_cross], default=0)
    for _ in range(count):
        e = max([x.index for x in eyes], default=0) + 1
        eyes.append(EyeRecord(e, n))
        for i in range(1, n + 1):
            k += 1
            discs.append(DiscRecord(f"f{k}", FINGER, e, e, (2 * i - 2, 2 * i - 1), (2 * i - 2, 2 * i - 1)))
            discs.append(DiscRecord(f"w{k}", WHITNEY, e, e, (2 * i - 1, 2 * i), (2 * i - 1, 2 * i)))
    return sys.evolve(eyes=tuple(eyes), discs=tuple(discs), arcs=None)
