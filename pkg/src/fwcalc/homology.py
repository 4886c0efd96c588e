"""Z2 homology bookkeeping for the complement of a sphere pair.

Classes are Z2 vectors stored as the set of generator labels with coefficient 1.
Two families of generators are used:

* closed generators R_j, S_j per eye (duals of the standard Whitney and finger
  discs) and C_j, U_j for cross fingers;
* corner classes T_x, one per marked point x, whose pairing with a disc is 1
  exactly when x is a corner of the disc.  A Clifford class C_d is T_a + T_b over
  the corners of d; the linking sphere of a finger pairs the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .system import FINGER, WHITNEY, FWSystem, id_key


class BasisError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorBasis:
    """Generator labels: ('R', eye, j), ('S', eye, j), ('C', j), ('U', j)."""

    ns: tuple[int, ...]
    cross_fingers: int = 0
    linking: int = 0

    def __post_init__(self):
        if self.linking > self.cross_fingers:
            raise BasisError("need r <= m for the cross-finger linking spheres")

    @classmethod
    def for_system(cls, sys: FWSystem) -> "GeneratorBasis":
        m = sum(1 for d in sys.discs if d.is_cross and d.kind == FINGER)
        return cls(tuple(e.n for e in sys.eyes), m, m)

    @property
    def labels(self) -> tuple:
        out = []
        for e, n in enumerate(self.ns, start=1):
            out += [("R", e, j) for j in range(1, n + 1)]
            out += [("S", e, j) for j in range(1, n + 1)]
        out += [("C", j) for j in range(1, self.cross_fingers + 1)]
        out += [("U", j) for j in range(1, self.linking + 1)]
        return tuple(out)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class H2Class:
    coeffs: frozenset = frozenset()

    def __add__(self, other: "H2Class") -> "H2Class":
        return H2Class(self.coeffs ^ other.coeffs)

    def scale(self, k: int) -> "H2Class":
        return self if k % 2 else H2Class()

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self, basis: GeneratorBasis) -> tuple[int, ...]:
        labels = basis.labels
        extra = [c for c in self.coeffs if c[0] != "T" and c not in labels]
        if extra:
            raise BasisError(f"labels {extra} not in basis")
        return tuple(1 if lab in self.coeffs else 0 for lab in labels)


def corner_class(space: tuple, points: Iterable[int]) -> H2Class:
    """Sum of the corner classes T_x, x in points (repeats cancel)."""
    out: set = set()
    for p in points:
        out ^= {("T", space, p)}
    return H2Class(frozenset(out))


_tsum = corner_class


def clifford_class(disc_id: str, context: FWSystem) -> H2Class:
    """The torus pair at the disc's two corners."""
    d = context.disc(disc_id)
    return _tsum(d.space, d.corners)


def offset_class(disc_id: str, context: FWSystem) -> H2Class:
    d = context.disc(disc_id)
    return _tsum(d.space, d.h2)


# Reference pairings of named discs against the closed generators of one eye.
# Each entry maps a disc label to (R indices, S indices) with pairing 1.
Reference = Mapping[str, tuple[frozenset, frozenset]]


def standard_reference(n: int) -> dict[str, tuple[frozenset, frozenset]]:
    ref = {}
    for i in range(1, n + 1):
        ref[f"w{i}"] = (frozenset({i}), frozenset())
        ref[f"f{i}"] = (frozenset(), frozenset({i}))
    return ref


def switch_reference_n5(ordering: int) -> dict[str, tuple[frozenset, frozenset]]:
    """Pairings of the n=5 switch discs w^1_i (standard order) or w^2_i (w_2, w_3 transposed)."""
    if ordering == 1:
        return {f"w{i}": (frozenset({i}), frozenset()) for i in range(1, 6)}
    if ordering != 2:
        raise BasisError("ordering must be 1 or 2")
    return {
        "w1": (frozenset({1}), frozenset()),
        "w2": (frozenset({2, 3}), frozenset({2})),
        "w3": (frozenset({3}), frozenset({2, 3})),
        "w4": (frozenset({3, 4}), frozenset({3})),
        "w5": (frozenset({5}), frozenset()),
    }


def _ref_pair(cls: H2Class, label: str, reference: Reference, eye: int) -> int:
    if label not in reference:
        raise BasisError(f"{label} has no reference pairing")
    rs, ss = reference[label]
    total = 0
    for c in cls.coeffs:
        if c[0] == "R" and c[1] == eye and c[2] in rs:
            total ^= 1
        elif c[0] == "S" and c[1] == eye and c[2] in ss:
            total ^= 1
    return total


DiscRef = str


def pairing(
    u: Union[H2Class, DiscRef],
    v: Union[H2Class, DiscRef],
    context: Optional[FWSystem] = None,
    reference: Optional[Reference] = None,
    eye: int = 1,
) -> int:
    """Mod-2 intersection number of a class with a disc (in either argument order).

    Corner classes are evaluated against the disc's corners in `context`; the
    closed generators need an explicit reference table of standard pairings.
    Two closed classes, or two discs, are not paired here.
    """
    if isinstance(u, str) and isinstance(v, H2Class):
        u, v = v, u
    if not (isinstance(u, H2Class) and isinstance(v, str)):
        raise BasisError("pairing needs one class and one disc")
    total = 0
    closed = H2Class(frozenset(c for c in u.coeffs if c[0] != "T"))
    corners = [c for c in u.coeffs if c[0] == "T"]
    if corners:
        if context is None:
            raise BasisError("corner classes need a system context")
        d = context.disc(v)
        total ^= sum(1 for c in corners if c[1] == d.space and c[2] in d.corners) % 2
    if not closed.is_zero:
        if reference is None:
            raise BasisError("closed generators need a standard reference")
        total ^= _ref_pair(closed, v, reference, eye)
    return total


def finger_class(a: Mapping, b: Mapping, i: int, eye: int = 1) -> H2Class:
    """[f_i] - [f_i^std] = sum_j a_ij R_j + sum_{j != i} b_ij S_j."""
    out = set()
    for (p, j), v in a.items():
        if p == i and v % 2:
            out.add(("R", eye, j))
    for (p, j), v in b.items():
        if p == i and j != i and v % 2:
            out.add(("S", eye, j))
    return H2Class(frozenset(out))


# n=5 reordering tables

TABLE_ORDERS = {
    1: ((5, 4, 3, 2, 1), (5, 4, 3, 2, 1)),
    2: ((5, 4, 2, 3, 1), (5, 4, 3, 2, 1)),
}


def reorder_table(a: Mapping, b: Mapping, ordering: int) -> list[list[Optional[int]]]:
    """Upper-triangular table of <f_{p}, w*_{q}> in the IA order of the given switch.

    Entry [p][q] is None below the diagonal.
    """
    ref = switch_reference_n5(ordering)
    fo, wo = TABLE_ORDERS[ordering]
    rows = []
    for p, fi in enumerate(fo):
        cls = finger_class(a, b, fi)
        rows.append([pairing(cls, f"w{wj}", reference=ref) if p <= q else None for q, wj in enumerate(wo)])
    return rows


def upper_sum(table: list[list[Optional[int]]]) -> int:
    return sum(v for row in table for v in row if v is not None) % 2


# Clifford equivalence


@dataclass(frozen=True)
class CliffordMatrix:
    """Coefficients n_ij (Whitney) or m_ij (finger): target i gains C of source j."""

    kind: str
    entries: frozenset  # (target id, source id) with coefficient 1

    def trace(self, ids: Iterable[str]) -> int:
        ids = set(ids)
        return sum(1 for t, s in self.entries if t == s and t in ids) % 2


class MismatchError(ValueError):
    pass


def solve_gf2(rows: list[int], rhs: list[int], nvars: int) -> Optional[int]:
    """Solve A x = b over GF(2); rows are int bitsets. Returns one solution or None."""
    work = [(r, y) for r, y in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(nvars):
        piv = next((k for k in range(rank, len(work)) if (work[k][0] >> col) & 1), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        for k in range(len(work)):
            if k != rank and (work[k][0] >> col) & 1:
                work[k] = (work[k][0] ^ work[rank][0], work[k][1] ^ work[rank][1])
        pivots.append(col)
        rank += 1
    if any(r == 0 and y for r, y in work[rank:]):
        return None
    x = 0
    for k, col in enumerate(pivots):
        if work[k][1]:
            x |= 1 << col
    return x


def similarly_matched(a: FWSystem, b: FWSystem) -> Optional[str]:
    """None if the systems agree on everything except interior parities and offsets."""
    if a.eyes != b.eyes or a.crosses != b.crosses:
        return "eye structure differs"
    if [d.id for d in a.discs] != [d.id for d in b.discs]:
        return "disc ids differ"
    for da, db in zip(a.discs, b.discs):
        if (da.kind, da.reye, da.geye, da.corners, da.germ) != (db.kind, db.reye, db.geye, db.corners, db.germ):
            return f"disc {da.id} differs in corners or germ"
    if dict(a.xg) != dict(b.xg) or dict(a.xr) != dict(b.xr):
        return "boundary crossings differ"
    return None


def clifford_equivalent(a: FWSystem, b: FWSystem) -> tuple[bool, Optional[CliffordMatrix], Optional[CliffordMatrix]]:
    """Decide whether M(b) - M(a) is a sum of Clifford deltas with zero trace on each eye.

    Returns (equivalent, whitney matrix, finger matrix); the matrices are a witness.
    """
    why = similarly_matched(a, b)
    if why:
        raise MismatchError(why)
    diff = a.m ^ b.m
    spaces = sorted({d.space for d in a.discs}, key=str)
    for f, w in diff:
        if a.disc(f).space != a.disc(w).space:
            return False, None, None
    n_entries, m_entries = set(), set()
    for space in spaces:
        ds = a.in_space(space)
        fs = sorted((d for d in ds if d.kind == FINGER), key=lambda d: id_key(d.id))
        ws = sorted((d for d in ds if d.kind == WHITNEY), key=lambda d: id_key(d.id))
        unknowns = [("W", t.id, s.id) for t in ws for s in ws] + [("F", t.id, s.id) for t in fs for s in fs]
        col = {u: k for k, u in enumerate(unknowns)}
        rows, rhs = [], []
        for f in fs:
            for w in ws:
                r = 0
                for s in ws:
                    if len(set(s.corners) & set(f.corners)) % 2:
                        r |= 1 << col[("W", w.id, s.id)]
                for s in fs:
                    if len(set(s.corners) & set(w.corners)) % 2:
                        r |= 1 << col[("F", f.id, s.id)]
                rows.append(r)
                rhs.append(1 if (f.id, w.id) in diff else 0)
        if space[0] == "eye":
            rows.append(sum(1 << col[("W", w.id, w.id)] for w in ws))
            rhs.append(0)
            rows.append(sum(1 << col[("F", f.id, f.id)] for f in fs))
            rhs.append(0)
        x = solve_gf2(rows, rhs, len(unknowns))
        if x is None:
            return False, None, None
        for u, k in col.items():
            if (x >> k) & 1:
                (n_entries if u[0] == "W" else m_entries).add((u[1], u[2]))
    return True, CliffordMatrix(WHITNEY, frozenset(n_entries)), CliffordMatrix(FINGER, frozenset(m_entries))


__all__ = [
    "BasisError",
    "CliffordMatrix",
    "GeneratorBasis",
    "H2Class",
    "MismatchError",
    "clifford_class",
    "clifford_equivalent",
    "corner_class",
    "finger_class",
    "offset_class",
    "pairing",
    "reorder_table",
    "standard_reference",
    "switch_reference_n5",
    "upper_sum",
]
