"""Family-level arrangement queries: holes, components, depth, Lemma-style
hole bounds, common points, and a raster oracle for cross-checking."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy import ndimage

from . import kernels
from .errors import ResolutionTooCoarse, TripleIntersection
from .geometry import Family, Point, boolean_intersection, scaled_edges
from .subdivision import Subdivision


class Arrangement(Subdivision):
    """Subdivision of a :class:`Family` with member-level bookkeeping."""

    def __init__(self, family: Family):
        self.family = family
        super().__init__(family.members, family.scale)

    @property
    def face_depth(self) -> list[int]:
        return [len(f.coverage) for f in self.faces]

    def face_members(self, f: int) -> list:
        ids = self.family.ids
        return [ids[m] for m in sorted(self.faces[f].coverage)]


def build(family: Family) -> Arrangement:
    """Build the arrangement; raises GeneralPositionViolation on bad input."""
    return Arrangement(family)


def _arr(x) -> Arrangement:
    return x if isinstance(x, Arrangement) else build(x)


validate_general_position = build


def holes(x) -> int:
    """Bounded connected components of the complement of the union."""
    arr = _arr(x)
    return sum(1 for f in arr.faces[1:] if not f.coverage)


def union_components(x) -> int:
    """Arc-connected components of the (closed) union of the family."""
    arr = _arr(x)
    covered = [bool(f.coverage) for f in arr.faces]
    parent = list(range(len(arr.faces)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for adj in (arr.edge_adjacency(), arr.vertex_adjacency()):
        for f, nbrs in enumerate(adj):
            if not covered[f]:
                continue
            for g in nbrs:
                if covered[g]:
                    ra, rb = find(f), find(g)
                    if ra != rb:
                        parent[ra] = rb
    return len({find(f) for f in range(len(arr.faces)) if covered[f]})


@dataclass(frozen=True)
class DepthProfile:
    max_depth: int
    face_count: dict       # depth -> number of faces (unbounded face included)
    face_area: dict        # depth -> total area of bounded faces at that depth

    def is_kfold(self, k: int) -> bool:
        return self.max_depth <= k


def max_depth(x) -> DepthProfile:
    arr = _arr(x)
    counts = Counter()
    areas = {}
    for f in arr.faces:
        d = len(f.coverage)
        counts[d] += 1
        if f.area is not None:
            areas[d] = areas.get(d, Fraction(0)) + f.area
    return DepthProfile(max(counts), dict(sorted(counts.items())), dict(sorted(areas.items())))


def is_kfold(x, k: int) -> bool:
    return max_depth(x).is_kfold(k)


def _require_triple_free(arr: Arrangement):
    deepest = max(len(f.coverage) for f in arr.faces)
    if deepest >= 3:
        f = next(i for i, face in enumerate(arr.faces) if len(face.coverage) == deepest)
        raise TripleIntersection(
            f"members {arr.face_members(f)} share a point (depth {deepest})"
        )


def overlapping_pairs(x) -> list[tuple[int, int]]:
    """Index pairs of members sharing some arrangement face."""
    arr = _arr(x)
    pairs = set()
    for f in arr.faces:
        if len(f.coverage) >= 2:
            pairs.update(combinations(sorted(f.coverage), 2))
    return sorted(pairs)


def depth2_components(x) -> int:
    """|Γ(S)| for the locus S covered exactly twice, via pairwise intersections."""
    arr = _arr(x)
    _require_triple_free(arr)
    fam = arr.family
    return sum(
        boolean_intersection(fam[i], fam[j]).components for i, j in overlapping_pairs(arr)
    )


@dataclass(frozen=True)
class LemmaReport:
    h: int
    gamma_S: int
    sum_gamma_Xi: int
    rhs: int
    holds: bool
    n: int
    max_depth: int

    def to_dict(self) -> dict:
        return asdict(self)


def lemma_euler_check(x) -> LemmaReport:
    """Compare the hole count with ``|Γ(S)| - Σ|Γ(X_i)| + 1``."""
    arr = _arr(x)
    gamma_s = depth2_components(arr)
    total = sum(m.components for m in arr.family)
    h = holes(arr)
    rhs = gamma_s - total + 1
    depth = max(len(f.coverage) for f in arr.faces)
    return LemmaReport(h, gamma_s, total, rhs, h >= rhs, len(arr.family), depth)


def common_point_exists(x) -> tuple[bool, Point | None]:
    """Whether all members share a point, with an exact witness when they do."""
    arr = _arr(x)
    n = len(arr.family)
    if n == 0:
        raise ValueError("common point of an empty family is undefined")
    for f, face in enumerate(arr.faces):
        if len(face.coverage) == n:
            return True, arr.interior_point(f)
    return False, None


# -- raster oracle --------------------------------------------------------

@dataclass(frozen=True)
class OracleResult:
    holes: int
    union_components: int
    max_depth_sampled: int
    resolution: int
    shape: tuple[int, int]


def feature_size(x) -> float:
    """Smallest feature estimate: min over bounded faces of 2*area/perimeter
    and over vertex/edge pairs not sharing a vertex of their distance."""
    arr = _arr(x)
    pts = np.array([[float(p.x), float(p.y)] for p in arr.points])
    best = math.inf
    for f in arr.faces[1:]:
        perim = 0.0
        cycles = ([f.outer] if f.outer is not None else []) + f.inner
        for c in cycles:
            idx = [arr.origin[h] for h in arr.cycles[c]]
            ring = pts[idx]
            perim += float(np.sum(np.hypot(*(np.roll(ring, -1, axis=0) - ring).T)))
        best = min(best, 2.0 * float(f.area) / perim)
    a = np.array(arr.origin[0::2])
    b = np.array(arr.origin[1::2])
    if len(a):
        A, B = pts[a], pts[b]
        d = B - A
        L2 = np.einsum("ij,ij->i", d, d)
        for v in range(len(pts)):
            keep = (a != v) & (b != v)
            if not keep.any():
                continue
            w = pts[v] - A[keep]
            t = np.clip(np.einsum("ij,ij->i", w, d[keep]) / L2[keep], 0.0, 1.0)
            gap = np.hypot(*(w - t[:, None] * d[keep]).T).min()
            best = min(best, float(gap))
    return best


def required_resolution(x, cells: int = 5) -> int:
    """Smallest cells-per-unit putting ``cells`` cells across the smallest feature."""
    size = feature_size(x)
    return max(1, math.floor(cells / size) + 1)


SOLID_DEPTH = 2.0  # cells; thinner fragments are sampling debris near acute corners


def _solid_labels(mask) -> set[int]:
    """4-connected components of ``mask`` reaching ``SOLID_DEPTH`` cells inside.

    Near an acute corner the sampled cells thin out into diagonal steps that
    4-connectivity splits off; such slivers never reach two cells deep, while
    every face passing the resolution guard does.
    """
    labels, n = ndimage.label(mask)
    if n == 0:
        return set()
    depth = ndimage.distance_transform_edt(np.pad(mask, 1))[1:-1, 1:-1]
    peak = ndimage.maximum(depth, labels, index=np.arange(1, n + 1))
    return {i + 1 for i, v in enumerate(peak) if v >= SOLID_DEPTH}


def flood_fill_oracle(x, resolution: int, strict: bool = True) -> OracleResult:
    """Raster cross-check of holes, union components and depth.

    Membership is decided exactly at cell centres; components are labelled
    with 4-connectivity and slivers never two cells deep are dropped.  With ``strict``
    the call refuses resolutions below :func:`required_resolution`.
    """
    arr = _arr(x)
    fam = arr.family
    if strict:
        need = required_resolution(arr)
        if resolution < need:
            raise ResolutionTooCoarse(
                f"resolution {resolution} too coarse; need at least {need}", need
            )
    margin = 2
    scale = fam.scale
    K = scale * 2 * resolution          # integer units per plane unit
    cell = 2 * scale                    # one cell in integer units
    pts = [p for m in fam for p in m.vertices()]
    xmin = min(p.x for p in pts)
    ymin = min(p.y for p in pts)
    xmax = max(p.x for p in pts)
    ymax = max(p.y for p in pts)
    gx = math.floor(xmin * resolution) - margin
    gy = math.floor(ymin * resolution) - margin
    nx = math.ceil(xmax * resolution) - gx + margin
    ny = math.ceil(ymax * resolution) - gy + margin
    rings, owner_of_ring = [], []
    for idx, m in enumerate(fam):
        for ring in m.rings():
            rings.append(ring)
            owner_of_ring.append(idx)
    x1, y1, x2, y2, ring_of = scaled_edges(rings, K)
    owner = [owner_of_ring[r] for r in ring_of]
    cover = kernels.raster_coverage(
        x1, y1, x2, y2, owner, len(fam),
        gx * cell + scale, gy * cell + scale, cell, nx, ny,
    )
    union = cover > 0
    solid_union = _solid_labels(union)
    solid_free = _solid_labels(~union)
    labels, _ = ndimage.label(~union)
    border = set(np.unique(np.concatenate([
        labels[0], labels[-1], labels[:, 0], labels[:, -1]
    ]))) - {0}
    n_holes = len(solid_free - border)
    n_union = len(solid_union)
    return OracleResult(int(n_holes), int(n_union), int(cover.max(initial=0)), resolution, (ny, nx))
