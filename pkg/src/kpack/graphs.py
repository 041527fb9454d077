"""Intersection graphs and the graph-side searches.

Vertices are member ids.  Ties between vertices are always broken by their
position in ``IntersectionGraph.vertices``, which follows family order.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from itertools import combinations

from . import kernels
from .errors import BudgetExceeded, DegenerateContact, EmptyGraph
from .geometry import Family, boundary_contacts, contact_locus


@dataclass(frozen=True)
class IntersectionGraph:
    vertices: tuple
    adjacency: dict = field(repr=False)

    @classmethod
    def from_edges(cls, vertices, edges) -> "IntersectionGraph":
        vertices = tuple(vertices)
        adj = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u!r}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(vertices, {v: frozenset(nb) for v, nb in adj.items()})

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[tuple]:
        pos = self.position
        out = []
        for u in self.vertices:
            for v in self.adjacency[u]:
                if pos[u] < pos[v]:
                    out.append((u, v))
        out.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        return out

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adjacency.values()) // 2

    @property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def induced(self, keep) -> "IntersectionGraph":
        keep = set(keep)
        verts = tuple(v for v in self.vertices if v in keep)
        return IntersectionGraph(verts, {v: self.adjacency[v] & keep for v in verts})

    def to_text(self) -> str:
        """One line per vertex: the id followed by its neighbours."""
        pos = self.position
        lines = []
        for v in self.vertices:
            nbrs = sorted(self.adjacency[v], key=pos.__getitem__)
            lines.append(" ".join(str(x) for x in (v, *nbrs)))
        return "\n".join(lines) + ("\n" if lines else "")


def intersection_graph(family: Family) -> IntersectionGraph:
    """Edges join members with nonempty intersection.

    Two members meet iff their boundaries cross or one contains a vertex of
    the other; any degenerate boundary contact is rejected.
    """
    members = family.members
    edges_, hits = boundary_contacts(members, family.scale)
    ids = family.ids
    adjacent = set()
    for i, j, code in hits:
        mi, a, b = edges_[i]
        mj, c, d = edges_[j]
        if code != kernels.PROPER:
            raise DegenerateContact(
                f"boundaries of {ids[mi]!r} and {ids[mj]!r} touch degenerately",
                (ids[mi], ids[mj]),
                contact_locus(a, b, c, d),
            )
        adjacent.add((min(mi, mj), max(mi, mj)))
    for i, j in combinations(range(len(members)), 2):
        if (i, j) in adjacent:
            continue
        A, B = members[i], members[j]
        if A.is_empty or B.is_empty:
            continue
        ba, bb = A.bbox, B.bbox
        if ba[0] > bb[2] or bb[0] > ba[2] or ba[1] > bb[3] or bb[1] > ba[3]:
            continue
        # boundaries are disjoint, so each ring lies wholly inside or outside
        if any(B.contains(r[0]) for r in A.rings()) or any(A.contains(r[0]) for r in B.rings()):
            adjacent.add((i, j))
    return IntersectionGraph.from_edges(ids, [(ids[i], ids[j]) for i, j in sorted(adjacent)])


def min_degree(G: IntersectionGraph) -> tuple:
    """``(vertex, degree)`` of minimum degree, earliest vertex on ties."""
    if not G.vertices:
        raise EmptyGraph("minimum degree of an empty graph")
    v = min(G.vertices, key=lambda u: G.degree(u))
    return v, G.degree(v)


def smallest_last_order(G: IntersectionGraph) -> tuple[list, int]:
    """Repeated minimum-degree deletion; returns (removal order, degeneracy)."""
    pos = G.position
    deg = {v: G.degree(v) for v in G.vertices}
    heap = [(deg[v], pos[v], v) for v in G.vertices]
    heapq.heapify(heap)
    removed = set()
    order = []
    degeneracy = 0
    while heap:
        d, _, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        degeneracy = max(degeneracy, d)
        for u in G.adjacency[v]:
            if u not in removed:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], pos[u], u))
    return order, degeneracy


@dataclass
class Decomposition:
    elimination_order: list
    degeneracy: int
    color_of: dict
    num_colors: int
    packing_certified: bool | None = None

    def classes(self) -> list[list]:
        out = [[] for _ in range(self.num_colors)]
        for v, c in self.color_of.items():
            out[c].append(v)
        return out

    def to_dict(self) -> dict:
        return {
            "order": list(self.elimination_order),
            "degeneracy": self.degeneracy,
            "colors": {str(v): c for v, c in self.color_of.items()},
            "num_colors": self.num_colors,
            "packing_certified": self.packing_certified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def is_proper_coloring(G: IntersectionGraph, color_of: dict) -> bool:
    return all(color_of[u] != color_of[v] for u, v in G.edges)


def certify_packings(classes, family_or_arrangement) -> bool:
    """True iff every class is pairwise disjoint in the geometric family.

    Uses arrangement coverage sets, independent of the pairwise test that
    built the graph: a class fails when some face lies in two of its members.
    """
    from .arrangement import _arr

    arr = _arr(family_or_arrangement)
    index = {mid: i for i, mid in enumerate(arr.family.ids)}
    color = {}
    for c, cls in enumerate(classes):
        for v in cls:
            color[index[v]] = c
    for face in arr.faces:
        seen = set()
        for m in face.coverage:
            c = color.get(m)
            if c is None:
                continue
            if c in seen:
                return False
            seen.add(c)
    return True


def decompose_by_degeneracy(G: IntersectionGraph, family=None) -> Decomposition:
    """Greedy first-fit colouring along the reversed smallest-last order.

    With ``family`` (or its arrangement) every colour class is checked to be
    a packing and the result stored in ``packing_certified``.
    """
    order, degeneracy = smallest_last_order(G)
    color_of = {}
    for v in reversed(order):
        used = {color_of[u] for u in G.adjacency[v] if u in color_of}
        c = 0
        while c in used:
            c += 1
        color_of[v] = c
    color_of = {v: color_of[v] for v in G.vertices}
    num = max(color_of.values(), default=-1) + 1
    if G.vertices and num == 0:
        num = 1
    dec = Decomposition(order, degeneracy, color_of, num)
    if family is not None:
        dec.packing_certified = certify_packings(dec.classes(), family)
    return dec


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")


def _independent_subset(G, candidates, size, budget, pos):
    """Independent set of ``size`` vertices among ``candidates`` or None."""
    if size <= 0:
        return []

    def rec(chosen, pool):
        budget.tick()
        if len(chosen) == size:
            return list(chosen)
        if len(chosen) + len(pool) < size:
            return None
        # branch on the vertex with fewest neighbours inside the pool
        v = min(pool, key=lambda u: (len(G.adjacency[u] & pool), pos[u]))
        rest = pool - {v}
        found = rec(chosen + [v], rest - G.adjacency[v])
        if found is not None:
            return found
        if not (G.adjacency[v] & pool):
            return None  # v is isolated in the pool; taking it was optimal
        return rec(chosen, rest)

    found = rec([], frozenset(candidates))
    return None if found is None else sorted(found, key=pos.__getitem__)


def max_independent_set(G: IntersectionGraph, ell: int, budget: int | None = 1_000_000):
    """``ell`` pairwise non-adjacent vertices (a packing), or None."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return _independent_subset(G, G.vertices, ell, _Budget(budget), G.position)


def independence_number(G: IntersectionGraph, budget: int | None = 1_000_000) -> int:
    size = 0
    while size < G.n and max_independent_set(G, size + 1, budget) is not None:
        size += 1
    return size


def ktt_find(G: IntersectionGraph, t: int, induced: bool = False, budget: int | None = 1_000_000):
    """Find classes ``(A, B)`` of a K_{t,t} subgraph, or None.

    With ``induced`` both classes must also be independent sets.  The search
    grows ``A`` in vertex order while tracking the common neighbourhood and
    drops any extension leaving fewer than ``t`` common neighbours.
    """
    if t < 1:
        raise ValueError("t must be positive")
    pos = G.position
    tick = _Budget(budget)
    verts = [v for v in G.vertices if G.degree(v) >= t]
    everything = frozenset(G.vertices)

    def rec(A, common, start):
        tick.tick()
        if len(A) == t:
            if induced:
                B = _independent_subset(G, common, t, tick, pos)
            else:
                B = sorted(common, key=pos.__getitem__)[:t]
            return (list(A), B) if B is not None else None
        for k in range(start, len(verts)):
            a = verts[k]
            if induced and any(a in G.adjacency[x] for x in A):
                continue
            nxt = common & G.adjacency[a]
            if len(nxt) < t:
                continue
            found = rec(A + [a], nxt, k + 1)
            if found is not None:
                return found
        return None

    return rec([], everything, 0)


@dataclass(frozen=True)
class PlanarityReport:
    n: int
    m: int
    satisfies_3n_minus_6: bool


def planarity_necessary_check(G: IntersectionGraph) -> PlanarityReport:
    """Edge-count condition m <= 3n - 6 that every planar graph meets."""
    if G.n < 3:
        raise ValueError("the 3n - 6 bound needs at least 3 vertices")
    return PlanarityReport(G.n, G.m, G.m <= 3 * G.n - 6)
