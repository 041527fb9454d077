"""Seeded instance generators producing families in general position.

Randomness comes from the PCG64 bit generator (numpy) read as raw 64-bit
words; integers are drawn from it by rejection sampling, so a spec maps to
the same family on every run.  Shapes are placed on an integer lattice with
``lattice`` points per plane unit and divided by ``lattice`` at the end.
Each new member is rejection-tested against the members already placed:
no degenerate boundary contact, no point on three boundaries, every vertex
at least ``min_clearance`` from every other member's boundary, crossing
points at least ``min_clearance`` apart, plus generator-specific rules
(pseudodisc pairs, disjointness inside a layer).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import kernels
from .errors import GenerationFailed
from .geometry import Family, Point, Region, SimplePolygon

KINDS = ("discs", "fat_triangles", "rectangles", "grid_bars", "k_layers", "stars")


class Rng:
    """Deterministic integer source over the raw PCG64 stream."""

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed & (2**64 - 1))

    def word(self) -> int:
        return int(self._bits.random_raw())

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.word()
            if r < limit:
                return r % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def unit(self) -> float:
        return self.word() / 2.0**64


@dataclass
class GeneratorSpec:
    kind: str
    n: int = 10                      # members (per layer for k_layers; ell for grid_bars)
    k: int = 1                       # layers (k_layers only)
    seed: int = 0
    window: tuple = (0, 0, 100, 100)  # plane units
    m_sides: int = 32
    min_clearance: str = "1/16"       # plane units
    layer_kind: str = "discs"        # shape used by k_layers
    min_angle: float = 30.0          # degrees (fat_triangles)
    size: tuple | None = None        # radius / half-extent range; None scales with window and n
    lattice: int = 16                # lattice points per plane unit
    max_tries: int = 1000

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        self.window = tuple(self.window)
        if self.size is not None:
            self.size = tuple(self.size)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown spec fields: {sorted(extra)}")
        return cls(**data)


# -- integer geometry helpers ----------------------------------------------

def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _strictly_convex(verts) -> bool:
    n = len(verts)
    return n >= 3 and all(_orient(verts[i - 1], verts[i], verts[(i + 1) % n]) > 0 for i in range(n))


def _area2(verts) -> int:
    return sum(
        verts[i][0] * verts[(i + 1) % len(verts)][1] - verts[(i + 1) % len(verts)][0] * verts[i][1]
        for i in range(len(verts))
    )


def _inside(verts, p) -> bool:
    """Closed point-in-polygon on integer coordinates."""
    inside = False
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        o = _orient(a, b, p)
        if o == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return True
        if (a[1] > p[1]) != (b[1] > p[1]) and (o > 0) == (b[1] > a[1]):
            inside = not inside
    return inside


def _box(verts):
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    return min(xs), min(ys), max(xs), max(ys)


def _boxes_meet(a, b, pad=0) -> bool:
    return a[0] - pad <= b[2] and b[0] - pad <= a[2] and a[1] - pad <= b[3] and b[1] - pad <= a[3]


def _clear(points, verts, c2) -> bool:
    """Every point at squared distance >= c2 from every edge of ``verts``."""
    if c2 <= 0:
        return True
    P = np.asarray(points, dtype=np.int64)
    A = np.asarray(verts, dtype=np.int64)
    B = np.roll(A, -1, axis=0)
    D = B - A                                    # edges
    W = P[:, None, :] - A[None, :, :]            # point - edge start
    L2 = np.einsum("ij,ij->i", D, D)[None, :]
    t = np.einsum("pij,ij->pi", W, D)
    cross = W[:, :, 0] * D[None, :, 1] - W[:, :, 1] * D[None, :, 0]
    inner = (t > 0) & (t < L2)
    d_start = np.einsum("pij,pij->pi", W, W)
    V = P[:, None, :] - B[None, :, :]
    d_end = np.einsum("pij,pij->pi", V, V)
    ok_inner = cross * cross >= c2 * L2
    ok = np.where(inner, ok_inner, (d_start >= c2) & (d_end >= c2))
    return bool(ok.all())


def _crossing(a, b, c, d) -> tuple[Fraction, Fraction]:
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = rx * sy - ry * sx
    t = Fraction((c[0] - a[0]) * sy - (c[1] - a[1]) * sx, den)
    return (a[0] + t * rx, a[1] + t * ry)


class _Placer:
    """Accumulates lattice polygons, rejecting candidates that break the rules."""

    def __init__(self, clearance: int, pseudodisc: bool = False):
        self.clearance = clearance
        self.c2 = clearance * clearance
        self.pseudodisc = pseudodisc
        self.members = []       # (verts, box, layer)
        self.crossings = []     # exact crossing points (lattice units)

    def try_add(self, verts, layer=None) -> bool:
        box = _box(verts)
        new_cross = []
        for old, obox, olayer in self.members:
            if not _boxes_meet(box, obox, self.clearance):
                continue
            both = list(verts) + list(old)
            nv = len(verts)
            x1 = [p[0] for p in both]
            y1 = [p[1] for p in both]
            nxt = [verts[(i + 1) % nv] for i in range(nv)] + [old[(i + 1) % len(old)] for i in range(len(old))]
            x2 = [p[0] for p in nxt]
            y2 = [p[1] for p in nxt]
            owner = [0] * nv + [1] * len(old)
            hits = kernels.segment_contacts(x1, y1, x2, y2, owner)
            if any(code != kernels.PROPER for _, _, code in hits):
                return False
            if self.pseudodisc and len(hits) > 2:
                return False
            if layer is not None and olayer == layer:
                if hits or _inside(old, verts[0]) or _inside(verts, old[0]):
                    return False
            if not (_clear(verts, old, self.c2) and _clear(old, verts, self.c2)):
                return False
            for i, j, _ in hits:
                new_cross.append(_crossing(both[i], nxt[i], both[j], nxt[j]))
        for i, p in enumerate(new_cross):
            for q in self.crossings + new_cross[i + 1:]:
                dx, dy = p[0] - q[0], p[1] - q[1]
                if (dx == 0 and dy == 0) or dx * dx + dy * dy < self.c2:
                    return False
        self.members.append((list(verts), box, layer))
        self.crossings.extend(new_cross)
        return True


# -- shape samplers (lattice units) -------------------------------------------

def _window_lattice(spec):
    L = spec.lattice
    x0, y0, x1, y1 = (Fraction(v) for v in spec.window)
    return int(x0 * L), int(y0 * L), int(x1 * L), int(y1 * L)


AUTO_SPREAD = 0.6        # overlapping families: radius ~ spread * side / sqrt(n)
AUTO_SPREAD_LAYER = 0.4  # packing layers need room for disjoint members


def auto_size(spec) -> tuple[Fraction, Fraction]:
    x0, y0, x1, y1 = (Fraction(v) for v in spec.window)
    side = min(x1 - x0, y1 - y0)
    spread = AUTO_SPREAD_LAYER if spec.kind == "k_layers" else AUTO_SPREAD
    hi = Fraction(round(spread * float(side) / math.sqrt(max(spec.n, 1)) * spec.lattice), spec.lattice)
    hi = max(hi, Fraction(2))
    return hi / 2, hi


def _size_lattice(spec):
    lo, hi = (Fraction(v) for v in (spec.size or auto_size(spec)))
    return max(1, int(lo * spec.lattice)), max(1, int(hi * spec.lattice))


def _sample_disc(rng: Rng, spec):
    wx0, wy0, wx1, wy1 = _window_lattice(spec)
    rlo, rhi = _size_lattice(spec)
    r = rng.between(rlo, rhi)
    if wx1 - wx0 < 2 * r or wy1 - wy0 < 2 * r:
        return None
    cx = rng.between(wx0 + r, wx1 - r)
    cy = rng.between(wy0 + r, wy1 - r)
    phase = rng.unit() * 2 * math.pi / spec.m_sides
    verts = []
    for j in range(spec.m_sides):
        ang = phase + 2 * math.pi * j / spec.m_sides
        verts.append((cx + round(r * math.cos(ang)), cy + round(r * math.sin(ang))))
    return verts if _strictly_convex(verts) else None


def _sample_rectangle(rng: Rng, spec):
    wx0, wy0, wx1, wy1 = _window_lattice(spec)
    lo, hi = _size_lattice(spec)
    w = rng.between(lo, 2 * hi)
    h = rng.between(lo, 2 * hi)
    if wx1 - wx0 <= w or wy1 - wy0 <= h:
        return None
    x = rng.between(wx0, wx1 - w)
    y = rng.between(wy0, wy1 - h)
    return [(x, y), (x + w, y), (x + w, y + h), (x, y + h)]


def _triangle_angles(verts):
    out = []
    for i in range(3):
        a, b, c = verts[i - 1], verts[i], verts[(i + 1) % 3]
        u = (a[0] - b[0], a[1] - b[1])
        v = (c[0] - b[0], c[1] - b[1])
        out.append(math.degrees(math.atan2(abs(u[0] * v[1] - u[1] * v[0]), u[0] * v[0] + u[1] * v[1])))
    return out


ANGLE_SLACK = 0.5  # degrees lost to lattice rounding that are tolerated


def _sample_triangle(rng: Rng, spec):
    wx0, wy0, wx1, wy1 = _window_lattice(spec)
    lo, hi = _size_lattice(spec)
    bound = float(spec.min_angle)
    alpha = bound + rng.unit() * (180 - 3 * bound)
    beta = bound + rng.unit() * (180 - alpha - 2 * bound)
    gamma = 180 - alpha - beta
    # circumradius R: side opposite an angle A is 2R sin A
    R = rng.between(lo, hi)
    if wx1 - wx0 < 2 * R or wy1 - wy0 < 2 * R:
        return None
    cx = rng.between(wx0 + R, wx1 - R)
    cy = rng.between(wy0 + R, wy1 - R)
    rot = rng.unit() * 2 * math.pi
    # vertices on the circumcircle: central angles are twice the opposite angles
    t0 = rot
    t1 = t0 + math.radians(2 * gamma)
    t2 = t1 + math.radians(2 * alpha)
    verts = [(cx + round(R * math.cos(t)), cy + round(R * math.sin(t))) for t in (t0, t1, t2)]
    if _area2(verts) <= 0 or len(set(verts)) < 3:
        return None
    if min(_triangle_angles(verts)) < bound - ANGLE_SLACK:
        return None
    return verts


def _sample_star(rng: Rng, spec):
    wx0, wy0, wx1, wy1 = _window_lattice(spec)
    lo, hi = _size_lattice(spec)
    r = rng.between(lo, hi)
    if wx1 - wx0 < 2 * r or wy1 - wy0 < 2 * r:
        return None
    cx = rng.between(wx0 + r, wx1 - r)
    cy = rng.between(wy0 + r, wy1 - r)
    m = rng.between(5, 9) * 2
    phase = rng.unit() * 2 * math.pi
    verts = []
    for j in range(m):
        rad = r if j % 2 == 0 else r * (0.3 + 0.4 * rng.unit())
        ang = phase + 2 * math.pi * (j + 0.3 * (rng.unit() - 0.5)) / m
        verts.append((cx + round(rad * math.cos(ang)), cy + round(rad * math.sin(ang))))
    try:
        _to_polygon(verts, None)
    except ValueError:
        return None
    return verts


SAMPLERS = {
    "discs": _sample_disc,
    "rectangles": _sample_rectangle,
    "fat_triangles": _sample_triangle,
    "stars": _sample_star,
}

PREFIX = {"discs": "d", "rectangles": "r", "fat_triangles": "t", "stars": "s"}


def _to_polygon(verts, id, lattice=1) -> SimplePolygon:
    return SimplePolygon(tuple(Point(Fraction(x, lattice), Fraction(y, lattice)) for x, y in verts), id)


def _clearance_lattice(spec) -> int:
    c = Fraction(spec.min_clearance) * spec.lattice
    return math.ceil(c)


def _place(spec, rng, placer, shape, count, layer, ids, out):
    sampler = SAMPLERS[shape]
    for i in range(count):
        for _ in range(spec.max_tries):
            verts = sampler(rng, spec)
            if verts is not None and placer.try_add(verts, layer):
                out.append(Region.from_polygon(_to_polygon(verts, ids[i], spec.lattice)))
                break
        else:
            raise GenerationFailed(
                f"{shape}: could not place member {ids[i]!r} after {spec.max_tries} tries"
            )


def _family(members, spec, extra=None) -> Family:
    meta = {"generator": spec.kind, "seed": spec.seed, "spec": spec.to_dict()}
    if extra:
        meta.update(extra)
    return Family(tuple(members), meta)


# -- public generators ------------------------------------------------------------

def gen_grid_bars(ell: int) -> Family:
    """ell horizontal bars crossing ell vertical bars (unit width, gap 1)."""
    if ell < 1:
        raise ValueError("ell must be positive")
    top = 2 * ell + 1
    members = []
    for j in range(1, ell + 1):
        members.append(Region.from_coords([[0, 2 * j - 1], [top, 2 * j - 1], [top, 2 * j], [0, 2 * j]], f"h{j}"))
    for i in range(1, ell + 1):
        members.append(Region.from_coords([[2 * i - 1, 0], [2 * i, 0], [2 * i, top], [2 * i - 1, top]], f"v{i}"))
    spec = GeneratorSpec("grid_bars", n=ell)
    return _family(members, spec)


def _simple(spec, shape, pseudodisc=False) -> Family:
    rng = Rng(spec.seed)
    placer = _Placer(_clearance_lattice(spec), pseudodisc=pseudodisc)
    ids = [f"{PREFIX[shape]}{i}" for i in range(spec.n)]
    out = []
    _place(spec, rng, placer, shape, spec.n, None, ids, out)
    return _family(out, spec)


def gen_discs(n: int, seed: int = 0, m_sides: int = 32, window=(0, 0, 100, 100), **kw) -> Family:
    """Regular lattice m-gons; every pair crosses at most twice."""
    if m_sides < 12:
        raise ValueError("m_sides must be at least 12")
    spec = GeneratorSpec("discs", n=n, seed=seed, m_sides=m_sides, window=window, **kw)
    return _simple(spec, "discs", pseudodisc=True)


def gen_rectangles(n: int, seed: int = 0, window=(0, 0, 100, 100), **kw) -> Family:
    spec = GeneratorSpec("rectangles", n=n, seed=seed, window=window, **kw)
    return _simple(spec, "rectangles")


def gen_fat_triangles(n: int, seed: int = 0, fatness_min_angle: float = 30.0, window=(0, 0, 100, 100), **kw) -> Family:
    """Triangles whose angles all reach ``fatness_min_angle`` (up to lattice rounding)."""
    if not 0 < fatness_min_angle <= 60:
        raise ValueError("minimum angle must lie in (0, 60]")
    spec = GeneratorSpec("fat_triangles", n=n, seed=seed, min_angle=fatness_min_angle, window=window, **kw)
    return _simple(spec, "fat_triangles")


def gen_stars(n: int, seed: int = 0, window=(0, 0, 100, 100), **kw) -> Family:
    """Non-convex star-shaped polygons (simply connected)."""
    spec = GeneratorSpec("stars", n=n, seed=seed, window=window, **kw)
    return _simple(spec, "stars")


def gen_k_layer_packing(k: int, n_per_layer: int, seed: int = 0, kind: str = "discs", **kw) -> Family:
    """Union of k packings; layer membership is recorded in ``metadata['layers']``."""
    if k < 1:
        raise ValueError("k must be positive")
    if kind not in SAMPLERS:
        raise ValueError(f"unsupported layer kind {kind!r}")
    spec = GeneratorSpec("k_layers", n=n_per_layer, k=k, seed=seed, layer_kind=kind, **kw)
    rng = Rng(spec.seed)
    placer = _Placer(_clearance_lattice(spec), pseudodisc=(kind == "discs"))
    out, layers = [], []
    for layer in range(k):
        ids = [f"L{layer}_{i}" for i in range(n_per_layer)]
        _place(spec, rng, placer, kind, n_per_layer, layer, ids, out)
        layers.append(ids)
    return _family(out, spec, {"layers": layers})


def generate(spec: GeneratorSpec) -> Family:
    """Dispatch on ``spec.kind``."""
    if spec.kind == "grid_bars":
        return gen_grid_bars(spec.n)
    if spec.kind == "k_layers":
        extra = {f: getattr(spec, f) for f in ("window", "m_sides", "min_clearance", "min_angle", "size", "lattice", "max_tries")}
        return gen_k_layer_packing(spec.k, spec.n, spec.seed, spec.layer_kind, **extra)
    if spec.kind == "discs" and spec.m_sides < 12:
        raise ValueError("m_sides must be at least 12")
    return _simple(spec, spec.kind, pseudodisc=(spec.kind == "discs"))


# -- Helly-style constructions --------------------------------------------------------

def _hull(points):
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def gen_triple_witness_family(n: int, seed: int = 0, window: int = 60, lattice: int = 16, max_tries: int = 200) -> Family:
    """Convex polygons in which every triple shares a planted point.

    For each triple a witness point is drawn; polygon ``i`` is the convex
    hull of small rotated octagons (radius depending on ``i``) centred at
    the witnesses of all triples containing ``i``.
    """
    if n < 3:
        raise ValueError("need at least three members")
    rng = Rng(seed)
    W = window * lattice
    for _ in range(max_tries):
        witness = {t: (rng.between(0, W), rng.between(0, W)) for t in combinations(range(n), 3)}
        polys = []
        for i in range(n):
            rho = lattice * (1 + i) // 2 + rng.between(1, lattice // 2)
            phase = rng.unit() * math.pi / 4
            pts = []
            for t, w in witness.items():
                if i in t:
                    for j in range(8):
                        ang = phase + math.pi * j / 4
                        pts.append((w[0] + round(rho * math.cos(ang)), w[1] + round(rho * math.sin(ang))))
            polys.append(_hull(pts))
        placer = _Placer(1)
        if all(_strictly_convex(p) and placer.try_add(p) for p in polys):
            members = [Region.from_polygon(_to_polygon(p, f"c{i}", lattice)) for i, p in enumerate(polys)]
            spec = {"generator": "triple_witness", "seed": seed, "n": n}
            return Family(tuple(members), spec)
    raise GenerationFailed("could not build a triple-witness family in general position")


def gen_venn_triple(seed: int = 0, m_sides: int = 24, lattice: int = 16) -> Family:
    """Three discs overlapping pairwise with no common point."""
    rng = Rng(seed)
    for _ in range(1000):
        side = rng.between(8 * lattice, 20 * lattice)
        # radius strictly between side/2 (pairs overlap) and side/sqrt(3) (no triple point)
        r = round(side * (0.52 + 0.04 * rng.unit()))
        ox, oy = rng.between(0, 40 * lattice), rng.between(0, 40 * lattice)
        rot = rng.unit() * 2 * math.pi
        centres = [
            (ox + round(side / math.sqrt(3) * math.cos(rot + 2 * math.pi * j / 3)),
             oy + round(side / math.sqrt(3) * math.sin(rot + 2 * math.pi * j / 3)))
            for j in range(3)
        ]
        placer = _Placer(1, pseudodisc=True)
        polys = []
        for cx, cy in centres:
            phase = rng.unit() * 2 * math.pi / m_sides
            verts = [
                (cx + round(r * math.cos(phase + 2 * math.pi * j / m_sides)),
                 cy + round(r * math.sin(phase + 2 * math.pi * j / m_sides)))
                for j in range(m_sides)
            ]
            polys.append(verts)
        if all(_strictly_convex(p) and placer.try_add(p) for p in polys):
            members = [Region.from_polygon(_to_polygon(p, f"c{i}", lattice)) for i, p in enumerate(polys)]
            return Family(tuple(members), {"generator": "venn_triple", "seed": seed})
    raise GenerationFailed("could not build a Venn triple")
