"""Exact planar primitives.

Points carry :class:`fractions.Fraction` coordinates and every predicate is
decided with exact arithmetic.  A member of a family is a :class:`Region`
(one or more simple polygons with optional hole loops); the usual case is a
single simply connected polygon.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from . import kernels
from .errors import DegenerateContact, InvalidGeometry


def to_fraction(value) -> Fraction:
    """Accept ints, ``"p/q"`` strings and Fractions; reject floats."""
    if isinstance(value, bool):
        raise InvalidGeometry(f"boolean is not a coordinate: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidGeometry(f"bad rational {value!r}") from exc
    raise InvalidGeometry(f"coordinates must be exact (int or 'p/q'), got {value!r}")


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point":
        return cls(to_fraction(x), to_fraction(y))

    def __sub__(self, other):
        return (self.x - other.x, self.y - other.y)


def orient(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle abc (positive = counterclockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def on_segment(a: Point, b: Point, p: Point) -> bool:
    return (
        orient(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def signed_area(vertices: Sequence[Point]) -> Fraction:
    total = Fraction(0)
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total / 2


class SegmentIntersection(NamedTuple):
    kind: str  # "empty" | "point" | "overlap"
    points: tuple[Point, ...] = ()


def line_crossing(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Intersection of the supporting lines of ab and cd (must not be parallel)."""
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    denom = rx * sy - ry * sx
    t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom
    return Point(a.x + t * rx, a.y + t * ry)


def segment_intersect(s1: tuple[Point, Point], s2: tuple[Point, Point]) -> SegmentIntersection:
    """Exact intersection of two closed segments."""
    a, b = s1
    c, d = s2
    d1, d2 = _sign(orient(c, d, a)), _sign(orient(c, d, b))
    d3, d4 = _sign(orient(a, b, c)), _sign(orient(a, b, d))
    if d1 == d2 == d3 == d4 == 0:
        # collinear: project on the dominant axis
        key = (lambda p: (p.x, p.y)) if a.x != b.x else (lambda p: (p.y, p.x))
        lo1, hi1 = sorted((a, b), key=key)
        lo2, hi2 = sorted((c, d), key=key)
        lo = max(lo1, lo2, key=key)
        hi = min(hi1, hi2, key=key)
        if key(lo) > key(hi):
            return SegmentIntersection("empty")
        if lo == hi:
            return SegmentIntersection("point", (lo,))
        return SegmentIntersection("overlap", (lo, hi))
    if d1 * d2 > 0 or d3 * d4 > 0:
        return SegmentIntersection("empty")
    if d1 == 0:
        return SegmentIntersection("point", (a,))
    if d2 == 0:
        return SegmentIntersection("point", (b,))
    if d3 == 0:
        return SegmentIntersection("point", (c,))
    if d4 == 0:
        return SegmentIntersection("point", (d,))
    return SegmentIntersection("point", (line_crossing(a, b, c, d),))


def common_denominator(points: Iterable[Point]) -> int:
    dens = set()
    for p in points:
        dens.add(p.x.denominator)
        dens.add(p.y.denominator)
    return math.lcm(*dens) if dens else 1


def scaled_edges(rings: Sequence[Sequence[Point]], scale: int):
    """Integer edge arrays (x1, y1, x2, y2, ring index) for ``rings``."""
    x1, y1, x2, y2, owner = [], [], [], [], []
    for r, ring in enumerate(rings):
        n = len(ring)
        for i in range(n):
            a, b = ring[i], ring[(i + 1) % n]
            x1.append(int(a.x * scale))
            y1.append(int(a.y * scale))
            x2.append(int(b.x * scale))
            y2.append(int(b.y * scale))
            owner.append(r)
    return x1, y1, x2, y2, owner


class Location(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def locate_in_ring(ring: Sequence[Point], q: Point) -> Location:
    """Crossing-parity point location with exact boundary detection."""
    inside = False
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if on_segment(a, b, q):
            return Location.BOUNDARY
        if (a.y > q.y) != (b.y > q.y):
            # edge straddles the horizontal ray; is the crossing right of q?
            side = orient(a, b, q)
            if (side > 0) == (b.y > a.y):
                inside = not inside
    return Location.INTERIOR if inside else Location.EXTERIOR


def _rotate_to_lowest(vertices: Sequence[Point]) -> tuple[Point, ...]:
    k = min(range(len(vertices)), key=lambda i: (vertices[i].y, vertices[i].x))
    return tuple(vertices[k:]) + tuple(vertices[:k])


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon, taken as a closed set."""

    vertices: tuple[Point, ...]
    id: object = field(default=None, compare=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise InvalidGeometry(f"polygon {self.id!r} needs at least 3 vertices")
        for i in range(n):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % n]
            if a == b:
                raise InvalidGeometry(f"polygon {self.id!r} repeats vertex {b}")
            if orient(a, b, c) == 0:
                raise InvalidGeometry(f"polygon {self.id!r} has collinear vertices at {b}")
        if signed_area(verts) <= 0:
            raise InvalidGeometry(f"polygon {self.id!r} is not counterclockwise")
        if n > 3 and not _is_simple(verts):
            raise InvalidGeometry(f"polygon {self.id!r} self-intersects")

    @classmethod
    def from_coords(cls, coords, id=None) -> "SimplePolygon":
        """Build from ``[[x, y], ...]``, reorienting to counterclockwise."""
        verts = [Point.of(x, y) for x, y in coords]
        if len(verts) >= 3 and signed_area(verts) < 0:
            verts.reverse()
        return cls(tuple(verts), id)

    @cached_property
    def area(self) -> Fraction:
        return signed_area(self.vertices)

    @cached_property
    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def normalized(self) -> "SimplePolygon":
        return SimplePolygon(_rotate_to_lowest(self.vertices), self.id)


def _is_simple(verts: Sequence[Point]) -> bool:
    n = len(verts)
    scale = common_denominator(verts)
    x1, y1, x2, y2, _ = scaled_edges([verts], scale)
    hits = kernels.segment_contacts(x1, y1, x2, y2, list(range(n)))
    for i, j, _code in hits:
        if j - i == 1 or (i == 0 and j == n - 1):
            continue  # neighbours meet at their shared vertex
        return False
    return True


def contains_point(polygon: SimplePolygon, q: Point) -> Location:
    """Classify ``q`` as interior, boundary or exterior of ``polygon``."""
    return locate_in_ring(polygon.vertices, q)


@dataclass(frozen=True)
class Region:
    """Closed planar region: shells minus the interiors of hole loops.

    Hole loops are stored counterclockwise like shells; ``hole_parent[i]``
    is the index of the shell that directly encloses hole ``i``.
    """

    shells: tuple[SimplePolygon, ...] = ()
    holes: tuple[SimplePolygon, ...] = ()
    id: object = None
    hole_parent: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "shells", tuple(self.shells))
        object.__setattr__(self, "holes", tuple(self.holes))
        object.__setattr__(self, "hole_parent", _check_nesting(self.shells, self.holes, self.id))

    @classmethod
    def from_polygon(cls, polygon: SimplePolygon, id=None) -> "Region":
        return cls((polygon,), (), polygon.id if id is None else id)

    @classmethod
    def from_coords(cls, coords, id=None) -> "Region":
        return cls.from_polygon(SimplePolygon.from_coords(coords, id), id)

    @property
    def is_empty(self) -> bool:
        return not self.shells

    @property
    def components(self) -> int:
        return len(self.shells)

    @cached_property
    def area(self) -> Fraction:
        return sum((s.area for s in self.shells), Fraction(0)) - sum(
            (h.area for h in self.holes), Fraction(0)
        )

    @cached_property
    def bbox(self):
        if not self.shells:
            return None
        boxes = [s.bbox for s in self.shells]
        return (
            min(b[0] for b in boxes),
            min(b[1] for b in boxes),
            max(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def rings(self) -> list[tuple[Point, ...]]:
        """Boundary rings oriented so the region lies on their left."""
        return [s.vertices for s in self.shells] + [h.vertices[::-1] for h in self.holes]

    def vertices(self) -> list[Point]:
        return [p for ring in self.rings() for p in ring]

    def locate(self, q: Point) -> Location:
        depth = 0
        for ring in self.rings():
            loc = locate_in_ring(ring, q)
            if loc is Location.BOUNDARY:
                return Location.BOUNDARY
            depth += loc is Location.INTERIOR
        return Location.INTERIOR if depth % 2 else Location.EXTERIOR

    def contains(self, q: Point) -> bool:
        return self.locate(q) is not Location.EXTERIOR

    def normalized(self) -> "Region":
        key = lambda poly: (poly.vertices[0].y, poly.vertices[0].x)
        shells = sorted((s.normalized() for s in self.shells), key=key)
        holes = sorted((h.normalized() for h in self.holes), key=key)
        return Region(tuple(shells), tuple(holes), self.id)

    def with_id(self, id) -> "Region":
        return Region(self.shells, self.holes, id)


def _check_nesting(shells, holes, rid) -> tuple[int, ...]:
    rings = list(shells) + list(holes)
    if len(rings) <= 1:
        if holes:
            raise InvalidGeometry(f"region {rid!r}: hole loop without a shell")
        return ()
    scale = common_denominator(p for r in rings for p in r.vertices)
    x1, y1, x2, y2, owner = scaled_edges([r.vertices for r in rings], scale)
    if kernels.segment_contacts(x1, y1, x2, y2, owner):
        raise InvalidGeometry(f"region {rid!r}: boundary loops touch or cross")
    # immediate parent = smallest ring containing a vertex of this ring
    parent = []
    for i, ring in enumerate(rings):
        probe = ring.vertices[0]
        best = None
        for j, other in enumerate(rings):
            if j == i or other.area <= ring.area:
                continue
            if locate_in_ring(other.vertices, probe) is Location.INTERIOR:
                if best is None or other.area < rings[best].area:
                    best = j
        parent.append(best)
    n_shells = len(shells)
    hole_parent = []
    for i, par in enumerate(parent):
        is_shell = i < n_shells
        if is_shell and par is not None and par < n_shells:
            raise InvalidGeometry(f"region {rid!r}: overlapping shells")
        if not is_shell:
            if par is None or par >= n_shells:
                raise InvalidGeometry(f"region {rid!r}: hole loop not inside a shell")
            hole_parent.append(par)
    return tuple(hole_parent)


@dataclass(frozen=True)
class Family:
    """Ordered finite family of regions with unique ids."""

    members: tuple[Region, ...]
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        seen = set()
        for m in self.members:
            if m.id is None:
                raise InvalidGeometry("family members need ids")
            if m.id in seen:
                raise InvalidGeometry(f"duplicate member id {m.id!r}")
            seen.add(m.id)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    @property
    def ids(self) -> list:
        return [m.id for m in self.members]

    def index_of(self, member_id) -> int:
        return self.ids.index(member_id)

    def subfamily(self, indices: Iterable[int]) -> "Family":
        return Family(tuple(self.members[i] for i in indices), dict(self.metadata))

    @cached_property
    def scale(self) -> int:
        """Common denominator turning every vertex coordinate into an integer."""
        return common_denominator(p for m in self.members for p in m.vertices())


def boundary_contacts(regions: Sequence[Region], scale: int | None = None):
    """Kernel sweep over all boundary edges of ``regions``.

    Returns ``(edges, hits)`` where ``edges[i] = (region index, a, b)`` and
    ``hits`` lists ``(i, j, code)`` for edges of different regions that touch.
    """
    rings, owners = [], []
    for idx, region in enumerate(regions):
        for ring in region.rings():
            rings.append(ring)
            owners.append(idx)
    if scale is None:
        scale = common_denominator(p for ring in rings for p in ring)
    x1, y1, x2, y2, ring_of = scaled_edges(rings, scale)
    owner = [owners[r] for r in ring_of]
    edges = []
    for ring, idx in zip(rings, owners):
        n = len(ring)
        for i in range(n):
            edges.append((idx, ring[i], ring[(i + 1) % n]))
    hits = kernels.segment_contacts(x1, y1, x2, y2, owner)
    return edges, hits


def contact_locus(a: Point, b: Point, c: Point, d: Point) -> Point:
    hit = segment_intersect((a, b), (c, d))
    return hit.points[0] if hit.points else a


def crossing_points(A: Region, B: Region) -> list[Point]:
    """Proper boundary crossings of two regions; raise on any other contact."""
    edges, hits = boundary_contacts([A, B])
    out = []
    for i, j, code in hits:
        _, a, b = edges[i]
        _, c, d = edges[j]
        if code != kernels.PROPER:
            raise DegenerateContact(
                f"boundaries of {A.id!r} and {B.id!r} touch degenerately",
                (A.id, B.id),
                contact_locus(a, b, c, d),
            )
        out.append(line_crossing(a, b, c, d))
    return out


def _as_region(x) -> Region:
    return x if isinstance(x, Region) else Region.from_polygon(x)


def crossing_count(A, B) -> int:
    """Number of proper crossings between the boundaries of ``A`` and ``B``."""
    return len(crossing_points(_as_region(A), _as_region(B)))


def is_pseudodisc_pair(A, B) -> bool:
    return crossing_count(A, B) <= 2


def boolean_intersection(A: Region, B: Region) -> Region:
    """Exact ``A ∩ B`` as closed sets (boundaries must be in general position)."""
    from .subdivision import overlay

    A, B = _as_region(A), _as_region(B)
    if A.is_empty or B.is_empty or not _boxes_meet(A.bbox, B.bbox):
        return Region((), (), A.id)
    sub = overlay([A, B])
    return sub.region_where(lambda cov: cov == {0, 1}, A.id)


def _boxes_meet(a, b) -> bool:
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def project_onto(family: Family, pivot: int) -> list[Region]:
    """``X_i ∩ X_pivot`` for every ``i != pivot``, keeping member ids."""
    if not 0 <= pivot < len(family):
        raise IndexError(f"pivot {pivot} out of range")
    base = family[pivot]
    return [
        boolean_intersection(member, base).with_id(member.id)
        for i, member in enumerate(family)
        if i != pivot
    ]
