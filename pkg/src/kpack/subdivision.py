"""Half-edge overlay of region boundaries with per-face coverage sets.

Every boundary ring contributes directed edges with its region on the left.
Edges are split at proper crossings, half-edges are linked around each
vertex by exact angular order, and face coverage is propagated from the
unbounded face: crossing a half-edge into the side its region lies on adds
that region, the opposite direction removes it.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Sequence

from . import kernels
from .errors import DegenerateContact, GeneralPositionViolation
from .geometry import (
    Location,
    Point,
    Region,
    SimplePolygon,
    boundary_contacts,
    contact_locus,
    line_crossing,
    locate_in_ring,
    orient,
    signed_area,
)


def _direction_cmp(u, v) -> int:
    # counterclockwise order of direction vectors starting at angle 0
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


@dataclass
class Face:
    outer: int | None          # cycle index of the outer boundary (None = unbounded)
    inner: list[int]           # cycle indices of boundaries of holes in this face
    coverage: frozenset        # indices of regions containing the face
    area: Fraction | None      # None for the unbounded face


class Subdivision:
    """Planar subdivision induced by the boundaries of ``regions``.

    Half-edges ``h`` and ``h ^ 1`` are twins.  ``member[h]`` is the region
    whose boundary carries the edge and ``inward[h]`` tells whether that
    region lies to the left of ``h``.
    """

    def __init__(self, regions: Sequence[Region], scale: int | None = None):
        self.regions = list(regions)
        self.points: list[Point] = []
        self._index: dict[Point, int] = {}
        self.origin: list[int] = []
        self.member: list[int] = []
        self.inward: list[bool] = []
        self._build_edges(scale)
        self._link()
        self._cycles()
        self._faces()
        self._coverage()

    # -- construction -------------------------------------------------
    def _vertex(self, p: Point) -> int:
        idx = self._index.get(p)
        if idx is None:
            idx = len(self.points)
            self._index[p] = idx
            self.points.append(p)
        return idx

    def _build_edges(self, scale):
        edges, hits = boundary_contacts(self.regions, scale)
        splits = defaultdict(list)
        through = {}
        ids = [r.id for r in self.regions]
        for i, j, code in hits:
            mi, a, b = edges[i]
            mj, c, d = edges[j]
            if code != kernels.PROPER:
                raise DegenerateContact(
                    f"boundaries of {ids[mi]!r} and {ids[mj]!r} touch degenerately",
                    (ids[mi], ids[mj]),
                    contact_locus(a, b, c, d),
                )
            p = line_crossing(a, b, c, d)
            splits[i].append(p)
            splits[j].append(p)
            owners = through.setdefault(p, set())
            owners.update((mi, mj))
            if len(owners) > 2:
                raise GeneralPositionViolation(
                    "three boundaries pass through one point",
                    sorted((ids[m] for m in owners), key=str),
                    p,
                )
        self.n_crossings = len(through)
        for e, (m, a, b) in enumerate(edges):
            pts = splits.get(e)
            chain = [a]
            if pts:
                forward = (a.x, a.y) < (b.x, b.y)
                chain.extend(sorted(pts, key=lambda p: (p.x, p.y), reverse=not forward))
            chain.append(b)
            for u, v in zip(chain, chain[1:]):
                self.origin.append(self._vertex(u))
                self.origin.append(self._vertex(v))
                self.member.extend((m, m))
                self.inward.extend((True, False))

    def dest(self, h: int) -> int:
        return self.origin[h ^ 1]

    def _link(self):
        outgoing = defaultdict(list)
        for h, v in enumerate(self.origin):
            outgoing[v].append(h)
        pts = self.points
        self.next = [0] * len(self.origin)
        for v, hs in outgoing.items():
            if len(hs) > 2:
                p = pts[v]

                def vec(h, p=p):
                    q = pts[self.origin[h ^ 1]]
                    return (q.x - p.x, q.y - p.y)

                hs.sort(key=cmp_to_key(lambda a, b: _direction_cmp(vec(a), vec(b))))
            d = len(hs)
            for i, h in enumerate(hs):
                self.next[h ^ 1] = hs[i - 1] if d > 1 else h
        self.outgoing = dict(outgoing)

    def _cycles(self):
        n = len(self.origin)
        self.cycle_of = [-1] * n
        self.cycles: list[list[int]] = []
        self.cycle_area: list[Fraction] = []
        for start in range(n):
            if self.cycle_of[start] != -1:
                continue
            c = len(self.cycles)
            cyc = []
            h = start
            while self.cycle_of[h] == -1:
                self.cycle_of[h] = c
                cyc.append(h)
                h = self.next[h]
            self.cycles.append(cyc)
            self.cycle_area.append(signed_area([self.points[self.origin[h]] for h in cyc]))

    def cycle_points(self, c: int) -> list[Point]:
        return [self.points[self.origin[h]] for h in self.cycles[c]]

    def _faces(self):
        # connected components of the vertex/edge graph
        parent = list(range(len(self.points)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h in range(0, len(self.origin), 2):
            a, b = find(self.origin[h]), find(self.origin[h + 1])
            if a != b:
                parent[a] = b
        comp_of_cycle = [find(self.origin[cyc[0]]) for cyc in self.cycles]
        roots = sorted(set(comp_of_cycle))
        self.n_components = len(roots)

        self.faces: list[Face] = [Face(None, [], frozenset(), None)]
        face_of_cycle = [-1] * len(self.cycles)
        bounded = []
        for c, area in enumerate(self.cycle_area):
            if area > 0:
                face_of_cycle[c] = len(self.faces)
                self.faces.append(Face(c, [], frozenset(), area))
                bounded.append(c)
        boxes = {}
        for c in bounded:
            pts = self.cycle_points(c)
            boxes[c] = (
                min(p.x for p in pts), min(p.y for p in pts),
                max(p.x for p in pts), max(p.y for p in pts),
            )
        outers = [c for c, area in enumerate(self.cycle_area) if area < 0]
        if len(outers) != self.n_components:
            raise GeneralPositionViolation("subdivision boundary is not a union of closed curves")
        for c in outers:
            pts = self.cycle_points(c)
            probe = min(pts, key=lambda p: (p.y, p.x))
            best = None
            for b in bounded:
                if comp_of_cycle[b] == comp_of_cycle[c]:
                    continue
                x0, y0, x1, y1 = boxes[b]
                if not (x0 < probe.x < x1 and y0 < probe.y < y1):
                    continue
                if best is not None and self.cycle_area[b] >= self.cycle_area[best]:
                    continue
                if locate_in_ring(self.cycle_points(b), probe) is Location.INTERIOR:
                    best = b
            f = 0 if best is None else face_of_cycle[best]
            face_of_cycle[c] = f
            self.faces[f].inner.append(c)
        for f in self.faces:
            if f.area is not None:
                f.area += sum(self.cycle_area[c] for c in f.inner)
        self.face_of = [face_of_cycle[self.cycle_of[h]] for h in range(len(self.origin))]

    def _coverage(self):
        cov = [None] * len(self.faces)
        cov[0] = frozenset()
        queue = deque([0])
        while queue:
            f = queue.popleft()
            face = self.faces[f]
            cycles = ([face.outer] if face.outer is not None else []) + face.inner
            for c in cycles:
                for h in self.cycles[c]:
                    t = h ^ 1
                    g = self.face_of[t]
                    m = self.member[h]
                    want = cov[f] | {m} if self.inward[t] else cov[f] - {m}
                    if cov[g] is None:
                        cov[g] = want
                        queue.append(g)
                    elif cov[g] != want:
                        raise GeneralPositionViolation(
                            "inconsistent coverage across an edge", (), self.points[self.origin[h]]
                        )
        for f, c in zip(self.faces, cov):
            f.coverage = c

    # -- queries ------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.points)

    @property
    def n_edges(self) -> int:
        return len(self.origin) // 2

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def euler_holds(self) -> bool:
        return self.n_vertices - self.n_edges + self.n_faces == 1 + self.n_components

    def face_cycles(self, f: int) -> list[int]:
        face = self.faces[f]
        return ([face.outer] if face.outer is not None else []) + face.inner

    def edge_adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.faces]
        for h in range(0, len(self.origin), 2):
            a, b = self.face_of[h], self.face_of[h + 1]
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def vertex_adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.faces]
        for hs in self.outgoing.values():
            around = {self.face_of[h] for h in hs}
            for a in around:
                adj[a] |= around - {a}
        return adj

    def region_where(self, pred: Callable[[frozenset], bool], id=None) -> Region:
        """Closed region formed by the faces whose coverage satisfies ``pred``."""
        inside = [pred(f.coverage) for f in self.faces]
        inside[0] = False
        on = [inside[self.face_of[h]] and not inside[self.face_of[h ^ 1]] for h in range(len(self.origin))]
        used = [False] * len(self.origin)
        shells, holes = [], []
        for start in range(len(self.origin)):
            if not on[start] or used[start]:
                continue
            ring = []
            h = start
            while not used[h]:
                used[h] = True
                ring.append(self.points[self.origin[h]])
                nxt = self.next[h]
                while not on[nxt]:
                    nxt = self.next[nxt ^ 1]
                h = nxt
            ring = _drop_collinear(ring)
            if signed_area(ring) > 0:
                shells.append(SimplePolygon(tuple(ring)))
            else:
                holes.append(SimplePolygon(tuple(reversed(ring))))
        return Region(tuple(shells), tuple(holes), id)

    def interior_point(self, f: int) -> Point:
        """An exact point strictly inside bounded face ``f``."""
        face = self.faces[f]
        if face.outer is None:
            raise ValueError("the unbounded face has no canonical interior point")
        ring = self.cycle_points(face.outer)
        k = min(range(len(ring)), key=lambda i: (ring[i].y, ring[i].x))
        v = ring[k]
        a, b = ring[k - 1], ring[(k + 1) % len(ring)]
        others = [p for i, p in enumerate(ring) if i not in (k, k - 1 if k else len(ring) - 1, (k + 1) % len(ring))]
        for c in face.inner:
            others.extend(self.cycle_points(c))
        area = orient(a, v, b)
        best, best_dist = None, None
        for p in others:
            if orient(a, v, p) * area >= 0 and orient(v, b, p) * area >= 0 and orient(b, a, p) * area >= 0:
                dist = orient(a, b, p) * (1 if area < 0 else -1)  # grows towards v
                if best is None or dist > best_dist:
                    best, best_dist = p, dist
        if best is None:
            return Point((a.x + v.x + b.x) / 3, (a.y + v.y + b.y) / 3)
        return Point((v.x + best.x) / 2, (v.y + best.y) / 2)


def _drop_collinear(ring: list[Point]) -> list[Point]:
    changed = True
    while changed and len(ring) > 3:
        changed = False
        for i in range(len(ring)):
            if orient(ring[i - 1], ring[i], ring[(i + 1) % len(ring)]) == 0:
                del ring[i]
                changed = True
                break
    return ring


def overlay(regions: Sequence[Region], scale: int | None = None) -> Subdivision:
    return Subdivision(regions, scale)
