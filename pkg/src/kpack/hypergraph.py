"""k-uniform intersection hypergraphs, tuple density and Turán-type
independent set extraction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import BudgetExceeded, EmptyHypergraph


@dataclass(frozen=True)
class IntersectionHypergraph:
    k: int
    vertices: tuple
    edges: frozenset  # of tuples, each sorted by vertex position

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        pos = {v: i for i, v in enumerate(self.vertices)}
        if len(pos) != len(self.vertices):
            raise ValueError("duplicate vertices")
        norm = set()
        for e in self.edges:
            e = tuple(sorted(set(e), key=pos.__getitem__))
            if len(e) != self.k:
                raise ValueError(f"edge {e!r} does not have {self.k} distinct vertices")
            norm.add(e)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def sorted_edges(self) -> list[tuple]:
        pos = self.position
        return sorted(self.edges, key=lambda e: [pos[v] for v in e])

    def incidence(self) -> dict:
        inc = {v: 0 for v in self.vertices}
        for e in self.edges:
            for v in e:
                inc[v] += 1
        return inc

    def is_independent(self, subset) -> bool:
        s = set(subset)
        return not any(s.issuperset(e) for e in self.edges)

    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in e) + "\n" for e in self.sorted_edges())


def build_hypergraph(family_or_arrangement, k: int) -> IntersectionHypergraph:
    """k-tuples of members with a common point, read off face coverage sets."""
    from .arrangement import _arr

    if k < 2:
        raise ValueError("k must be at least 2")
    arr = _arr(family_or_arrangement)
    ids = arr.family.ids
    edges = set()
    for face in arr.faces:
        if len(face.coverage) >= k:
            for combo in combinations(sorted(face.coverage), k):
                edges.add(tuple(ids[i] for i in combo))
    return IntersectionHypergraph(k, ids, frozenset(edges))


def tuple_density(H: IntersectionHypergraph) -> Fraction:
    """|E(H)| / C(n, k) as an exact rational."""
    if H.n < H.k:
        raise ValueError("density needs n >= k")
    return Fraction(len(H.edges), comb(H.n, H.k))


def density_report(H: IntersectionHypergraph) -> dict:
    d = tuple_density(H)
    return {"n": H.n, "k": H.k, "edges": len(H.edges), "density": str(d), "approx": float(d)}


def kns_threshold(n: int, k: int, m: int) -> Fraction:
    """Edge count below which an independent m-set is guaranteed."""
    return Fraction(comb(n, k), comb(m, k))


def pivot_degree(H: IntersectionHypergraph) -> tuple:
    """Vertex of largest incidence; certified ``incidence * n >= |E| * k``."""
    if H.n < H.k:
        raise ValueError("pivot needs n >= k")
    if not H.edges:
        raise EmptyHypergraph("no edges to average over")
    inc = H.incidence()
    v = max(H.vertices, key=lambda u: inc[u])  # first maximum in vertex order
    assert inc[v] * H.n >= len(H.edges) * H.k
    return v, inc[v]


def _greedy_deletion(H: IntersectionHypergraph, m: int) -> list:
    # Deleting a vertex of maximum incidence keeps |E| < C(|V|,k)/C(m,k):
    # it removes at least k|E|/|V| edges while the bound shrinks by (|V|-k)/|V|.
    alive = list(H.vertices)
    edges = set(H.edges)
    limit_den = comb(m, H.k)
    while len(alive) > m:
        inc = {v: 0 for v in alive}
        for e in edges:
            for v in e:
                inc[v] += 1
        v = max(alive, key=lambda u: inc[u])
        assert inc[v] * len(alive) >= len(edges) * H.k
        alive.remove(v)
        edges = {e for e in edges if v not in e}
        assert len(edges) * limit_den < comb(len(alive), H.k)
    assert not edges
    return alive


def kns_independent_set(H: IntersectionHypergraph, m: int, budget: int | None = 1_000_000):
    """An m-set containing no edge, or None.

    Below the threshold ``C(n,k)/C(m,k)`` the set exists and is produced by
    greedy max-incidence deletion without any search.  Otherwise a pruned
    exhaustive search runs under ``budget`` nodes.
    """
    if not H.n >= m >= H.k:
        raise ValueError(f"need n >= m >= k, got n={H.n}, m={m}, k={H.k}")
    if len(H.edges) < kns_threshold(H.n, H.k, m):
        return _greedy_deletion(H, m)

    by_vertex = {v: [] for v in H.vertices}
    for e in H.edges:
        for v in e:
            by_vertex[v].append(e)
    verts = H.vertices
    used = 0

    def rec(chosen, start):
        nonlocal used
        used += 1
        if budget is not None and used > budget:
            raise BudgetExceeded(f"independent set search exceeded {budget} nodes")
        if len(chosen) == m:
            return [v for v in verts if v in chosen]
        if len(chosen) + (len(verts) - start) < m:
            return None
        for i in range(start, len(verts)):
            if len(chosen) + (len(verts) - i) < m:
                break
            v = verts[i]
            if any(all(u in chosen for u in e if u != v) for e in by_vertex[v]):
                continue
            chosen.add(v)
            found = rec(chosen, i + 1)
            chosen.discard(v)
            if found is not None:
                return found
        return None

    return rec(set(), 0)
