"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py``; the lines are repeated in the
"acceptance criteria" section of the summary.  ``-m "not slow"`` skips it.
"""

import json
import os
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations

import pytest

from kpack import generators
from kpack.arrangement import (
    build,
    common_point_exists,
    flood_fill_oracle,
    holes,
    lemma_euler_check,
    max_depth,
    required_resolution,
    union_components,
)
from kpack.errors import GenerationFailed
from kpack.generators import GeneratorSpec, generate
from kpack.geometry import Family, Region, project_onto
from kpack.graphs import decompose_by_degeneracy, intersection_graph, planarity_necessary_check
from kpack.hypergraph import IntersectionHypergraph, build_hypergraph, kns_independent_set, kns_threshold

pytestmark = pytest.mark.slow

SHAPES = ["discs", "rectangles", "fat_triangles", "stars"]


def seeded(specs):
    """Yield (spec, family) for each spec, skipping seeds whose placement fails."""
    for spec in specs:
        try:
            yield spec, generate(spec)
        except GenerationFailed:
            continue


def triple_free_families(count, max_n=12):
    """Mixed generators, n <= max_n, every family of depth at most two."""
    out = []
    seed = 0
    while len(out) < count:
        kind = SHAPES[seed % 4]
        if seed % 3 == 2:
            spec = GeneratorSpec(kind, n=3 + seed % (max_n - 2), seed=seed, window=(0, 0, 30, 30))
        else:
            n = 2 + seed % (max_n // 2 - 1)
            spec = GeneratorSpec("k_layers", k=2, n=n, seed=seed, layer_kind=kind, window=(0, 0, 30, 30))
        seed += 1
        for _, fam in seeded([spec]):
            if len(fam) <= max_n and max_depth(fam).max_depth <= 2:
                out.append(fam)
    return out


def test_c1_lemma_suite(report):
    start = time.perf_counter()
    fams = triple_free_families(500)
    failures, with_holes = [], 0
    for fam in fams:
        rep = lemma_euler_check(fam)
        with_holes += rep.h > 0
        if not rep.holds:
            failures.append(fam.metadata)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    report("C1 lemma suite", ok,
           f"{len(fams)} triple-free families ({with_holes} with holes), {len(failures)} violations, {elapsed:.1f}s")
    assert ok, failures[:3]


def test_c2_grid_identity(report):
    rows = []
    for ell in range(2, 7):
        fam = generators.gen_grid_bars(ell)
        rep = lemma_euler_check(fam)
        rows.append((ell, rep.h, rep.gamma_S, rep.rhs))
    ok = all(h == (ell - 1) ** 2 and g == ell * ell and rhs == h for ell, h, g, rhs in rows)
    report("C2 grid identity", ok, "; ".join(f"l={e}: h={h} Gamma={g} rhs={r}" for e, h, g, r in rows))
    assert ok


def jittered_grid(ell, seed):
    """Grid bars with every corner nudged by up to 3/8; vertices stay outside
    all other bars, so the family is always in general position."""
    rng = generators.Rng(seed)

    def nudge():
        return Fraction(rng.between(-3, 3), 8)

    top = 2 * ell + 1
    members = []
    for j in range(1, ell + 1):
        lo, hi = 2 * j - 1, 2 * j
        members.append(Region.from_coords(
            [[-1 + nudge(), lo + nudge()], [top + 1 + nudge(), lo + nudge()],
             [top + 1 + nudge(), hi + nudge()], [-1 + nudge(), hi + nudge()]], f"h{j}"))
    for i in range(1, ell + 1):
        lo, hi = 2 * i - 1, 2 * i
        members.append(Region.from_coords(
            [[lo + nudge(), -1 + nudge()], [hi + nudge(), -1 + nudge()],
             [hi + nudge(), top + 1 + nudge()], [lo + nudge(), top + 1 + nudge()]], f"v{i}"))
    keep = [m for m in members if rng.below(5)] or members
    return Family(tuple(keep), {"generator": "jittered_grid", "seed": seed, "ell": ell})


def oracle_families(count):
    """Random families plus jittered grids (three in ten), which carry holes."""
    grids = [jittered_grid(2 + s % 4, s) for s in range(count * 3 // 10)]
    count -= len(grids)
    specs = (
        GeneratorSpec(SHAPES[s % 4], n=4 + s % 4, seed=s, window=(0, 0, 16, 16), min_clearance="1/4", lattice=8)
        for s in range(10_000)
    )
    out = []
    for _, fam in seeded(specs):
        out.append(fam)
        if len(out) == count:
            break
    return out + grids


def test_c3_oracle_agreement(report):
    disagreements, nontrivial = [], 0
    for fam in oracle_families(100):
        arr = build(fam)
        res = required_resolution(arr)
        out = flood_fill_oracle(arr, res)
        exact = (holes(arr), union_components(arr))
        nontrivial += exact[0] > 0
        if (out.holes, out.union_components) != exact:
            disagreements.append((fam.metadata, res, exact, (out.holes, out.union_components)))
    ok = not disagreements
    report("C3 oracle agreement", ok, f"100 families ({nontrivial} with holes), {len(disagreements)} disagreements")
    assert ok, disagreements[:3]


def test_c4_pseudodisc_hole_bound(report):
    violations, worst = [], 0.0
    specs = [GeneratorSpec("discs", n=(10, 20, 30)[s % 3], seed=s, size=(8, 16)) for s in range(50)]
    count = 0
    for spec, fam in seeded(specs):
        count += 1
        h, n = holes(fam), len(fam)
        worst = max(worst, h / (3 * n - 6))
        if h > 3 * n - 6:
            violations.append((spec.seed, n, h))
    ok = count == 50 and not violations
    report("C4 pseudodisc hole bound", ok, f"{count} disc families, max holes/(3n-6) = {worst:.3f}, {len(violations)} violations")
    assert ok, violations


def test_c5_decomposition_validity(report):
    fams = triple_free_families(60)
    fams += [generators.gen_grid_bars(ell) for ell in range(2, 7)]
    layered = []
    for k in (1, 2, 3, 4):
        specs = [GeneratorSpec("k_layers", k=k, n=6, seed=s, layer_kind=SHAPES[s % 4], window=(0, 0, 40, 40)) for s in range(10)]
        layered += [fam for _, fam in seeded(specs)]
    bad, colours = [], []
    for fam in fams + layered:
        dec = decompose_by_degeneracy(intersection_graph(fam), fam)
        if not dec.packing_certified or dec.num_colors > dec.degeneracy + 1 or dec.num_colors > len(fam):
            bad.append(fam.metadata)
    for fam in layered:
        colours.append((fam.metadata["spec"]["k"], decompose_by_degeneracy(intersection_graph(fam)).num_colors))
    per_k = {k: max(c for kk, c in colours if kk == k) for k in sorted({k for k, _ in colours})}
    ok = not bad
    report("C5 decomposition validity", ok,
           f"{len(fams) + len(layered)} families, {len(bad)} invalid; max colours by k: {per_k}")
    assert ok, bad[:3]


def test_c6_helly_suite(report):
    misses = []
    for seed in range(200):
        fam = generators.gen_triple_witness_family(3 + seed % 4, seed=seed)
        if not common_point_exists(fam)[0]:
            misses.append(seed)
    contra = []
    for seed in range(50):
        fam = generators.gen_venn_triple(seed)
        pairwise = all(common_point_exists(fam.subfamily(p))[0] for p in combinations(range(3), 2))
        if not pairwise or common_point_exists(fam)[0]:
            contra.append(seed)
    ok = not misses and not contra
    report("C6 Helly suite", ok, f"200 witness families ({len(misses)} misses), 50 contrapositive triples ({len(contra)} wrong)")
    assert ok, (misses, contra)


def kns_instances(count):
    import random

    rng = random.Random(2024)
    out = []
    seed = 0
    while len(out) < count:
        k = 2 + len(out) % 2
        if len(out) % 4 < 2:
            # geometric: intersection hypergraph of a sparse family
            spec = GeneratorSpec(SHAPES[seed % 4], n=rng.randint(6, 14), seed=seed, window=(0, 0, 60, 60))
            seed += 1
            got = list(seeded([spec]))
            if not got:
                continue
            H = build_hypergraph(got[0][1], k)
        else:
            n = rng.randint(k + 2, 14)
            H = IntersectionHypergraph(k, range(n), frozenset())
        n = H.n
        ms = [m for m in range(k, n + 1) if len(H.edges) < kns_threshold(n, k, m)]
        if not ms:
            continue
        m = rng.choice(ms)
        if not H.edges:
            # random edges filling up to just below the threshold
            limit = kns_threshold(n, k, m)
            pool = list(combinations(range(n), k))
            take = min(len(pool), -(-limit.numerator // limit.denominator) - 1)
            H = IntersectionHypergraph(k, range(n), frozenset(rng.sample(pool, take)))
        out.append((H, m))
    return out


def test_c7_kns_guarantee(report):
    failures, edges_total = [], 0
    for H, m in kns_instances(100):
        edges_total += len(H.edges)
        S = kns_independent_set(H, m)
        exists = any(H.is_independent(T) for T in combinations(H.vertices, m))
        if S is None or len(set(S)) != m or not H.is_independent(S) or not exists:
            failures.append((H.n, H.k, m, len(H.edges)))
    ok = not failures
    report("C7 KNS guarantee", ok, f"100 hypergraphs below threshold ({edges_total} edges total), {len(failures)} failures")
    assert ok, failures[:3]


def test_c8_planarity_consequence(report):
    specs = [GeneratorSpec("k_layers", k=2, n=(5, 10, 15)[s % 3], seed=s, layer_kind="discs") for s in range(80)]
    results = []
    for _, fam in seeded(specs):
        results.append(planarity_necessary_check(intersection_graph(fam)))
        if len(results) == 50:
            break
    bad = [r for r in results if not r.satisfies_3n_minus_6]
    densest = max(r.m / (3 * r.n - 6) for r in results)
    ok = len(results) == 50 and not bad
    report("C8 planarity consequence", ok, f"{len(results)} two-fold disc packings, max m/(3n-6) = {densest:.3f}, {len(bad)} violations")
    assert ok


def test_c9_projection_step(report):
    specs = [GeneratorSpec("k_layers", k=3, n=4, seed=s, layer_kind=("stars", "discs")[s % 2], window=(0, 0, 30, 30)) for s in range(120)]
    checked, violations, tight = 0, [], 0
    for spec, fam in seeded(specs):
        if checked == 50:
            break
        checked += 1
        r = max(m.components for m in fam)
        f2 = max((holes(fam.subfamily(p)) for p in combinations(range(len(fam)), 2)), default=0)
        bound = 2 * r + f2 - 1
        for pivot in range(len(fam)):
            for y in project_onto(fam, pivot):
                tight += y.components == bound
                if y.components > bound:
                    violations.append((spec.seed, pivot, y.id, y.components, bound))
    ok = checked == 50 and not violations
    report("C9 projection step", ok, f"{checked} three-fold families, {tight} projections at the bound, {len(violations)} violations")
    assert ok, violations[:3]


def _cli(args, cwd, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    return subprocess.run([sys.executable, "-m", "kpack.cli", *args], cwd=cwd, env=env, capture_output=True, check=False)


def test_c10_determinism(report, tmp_path):
    manifest = [{"kind": "grid_bars", "n": 3}] + [
        {"kind": "k_layers", "k": 2, "n": 5, "seed": s, "layer_kind": k} for s, k in enumerate(SHAPES)
    ]
    (tmp_path / "manifest.json").write_text(json.dumps(manifest))
    commands = [
        ["generate", "--kind", "k_layers", "--k", "2", "--n", "6", "--seed", "7", "--layer-kind", "stars", "--json-out", "fam.json"],
        ["measure", "--input", "fam.json", "--json-out", "measure.json"],
        ["decompose", "--input", "fam.json", "--json-out", "dec.json", "--svg-out", "dec.svg"],
        ["lemma-check", "--input", "fam.json", "--json-out", "lemma.json"],
        ["hypergraph", "--input", "fam.json", "--k", "2", "--m", "3", "--json-out", "hyper.json"],
        ["svg", "--input", "fam.json", "--svg-out", "arr.svg"],
        ["scan", "--input", "manifest.json", "--csv-out", "scan.csv", "--json-out", "summary.json", "--jobs", "2"],
    ]
    snapshots = []
    for run, hashseed in enumerate((0, 12345)):
        workdir = tmp_path / f"run{run}"
        workdir.mkdir()
        (workdir / "manifest.json").write_text((tmp_path / "manifest.json").read_text())
        outputs = []
        for cmd in commands:
            proc = _cli(cmd, workdir, hashseed)
            outputs.append((proc.returncode, proc.stdout))
        files = {p.name: p.read_bytes() for p in sorted(workdir.iterdir())}
        snapshots.append((outputs, files))
    same = snapshots[0] == snapshots[1]
    n_files = len(snapshots[0][1])
    codes = [c for c, _ in snapshots[0][0]]
    ok = same and all(c == 0 for c in codes)
    report("C10 determinism", ok, f"{len(commands)} commands, {n_files} output files byte-identical across runs: {same}; exit codes {codes}")
    assert ok
