"""Command-line entry point.

Exit codes shared by all subcommands: 0 success, 1 negative answer
(``verify`` when the family is not k-fold, searches that find nothing),
2 unreadable input or unusable flags, 3 general-position violation (or depth > 2 for
``lemma-check``), 4 a proved inequality failed (instance dumped),
5 search budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import arrangement, familyio, generators, graphs, hypergraph, svg
from .errors import (
    BudgetExceeded,
    FormatError,
    GenerationFailed,
    GeneralPositionViolation,
    ResolutionTooCoarse,
    TripleIntersection,
)

SCAN_COLUMNS = (
    "index", "kind", "layer_kind", "param", "seed", "n", "k",
    "holes", "max_depth", "min_degree", "degeneracy", "num_colors",
    "lemma_h", "lemma_rhs", "lemma_holds", "runtime_ms", "error",
)


def _emit(obj, json_out=None):
    text = json.dumps(obj, indent=2) + "\n"
    if json_out:
        Path(json_out).write_text(text)
    sys.stdout.write(text)


def _gp_payload(exc):
    locus = None
    if exc.locus is not None:
        locus = [familyio._coord_out(exc.locus.x), familyio._coord_out(exc.locus.y)]
    return {"error": "general_position", "message": str(exc), "members": list(exc.members), "locus": locus}


def _dump_violation(family, path) -> int:
    Path(path).write_text(familyio.dumps(family))
    sys.stderr.write(f"guaranteed property violated; instance written to {path}\n")
    return 4


def cmd_generate(args):
    spec = _spec_from_args(args)
    family = generators.generate(spec)
    text = familyio.dumps(family)
    if args.json_out:
        Path(args.json_out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _spec_from_args(args):
    fields = {"kind": args.kind, "seed": args.seed}
    if args.kind == "grid_bars":
        fields["n"] = args.ell if args.ell is not None else args.n
    else:
        fields["n"] = args.n
    for name in ("k", "m_sides", "layer_kind", "min_angle", "min_clearance", "lattice"):
        val = getattr(args, name)
        if val is not None:
            fields[name] = val
    if args.window:
        fields["window"] = tuple(args.window)
    if args.size:
        fields["size"] = tuple(args.size)
    return generators.GeneratorSpec(**fields)


def cmd_validate(args):
    family = familyio.load(args.input)
    arr = arrangement.build(family)
    _emit({
        "valid": True, "n": len(family), "vertices": arr.n_vertices,
        "edges": arr.n_edges, "faces": arr.n_faces, "crossings": arr.n_crossings,
        "euler_holds": arr.euler_holds(),
    }, args.json_out)
    return 0


def cmd_measure(args):
    family = familyio.load(args.input)
    arr = arrangement.build(family)
    prof = arrangement.max_depth(arr)
    _emit({
        "n": len(family),
        "holes": arrangement.holes(arr),
        "union_components": arrangement.union_components(arr),
        "max_depth": prof.max_depth,
        "faces_by_depth": {str(d): c for d, c in prof.face_count.items()},
        "area_by_depth": {str(d): familyio._coord_out(a) for d, a in prof.face_area.items()},
        "euler_holds": arr.euler_holds(),
    }, args.json_out)
    return 0


def cmd_verify(args):
    family = familyio.load(args.input)
    prof = arrangement.max_depth(family)
    ok = prof.is_kfold(args.k)
    _emit({"max_depth": prof.max_depth, "k": args.k, "is_kfold": ok}, args.json_out)
    return 0 if ok else 1


def cmd_decompose(args):
    family = familyio.load(args.input)
    arr = arrangement.build(family)
    G = graphs.intersection_graph(family)
    dec = graphs.decompose_by_degeneracy(G, arr)
    text = dec.to_json()
    if args.json_out:
        Path(args.json_out).write_text(text)
    sys.stdout.write(text)
    if args.svg_out:
        base = Path(args.svg_out)
        for c, members in enumerate(dec.classes()):
            path = base.with_name(f"{base.stem}_class{c}{base.suffix or '.svg'}")
            path.write_text(svg.class_svg(family, members, c, f"packing {c}"))
    return 0 if dec.packing_certified else _dump_violation(family, args.dump)


def cmd_lemma_check(args):
    family = familyio.load(args.input)
    try:
        report = arrangement.lemma_euler_check(family)
    except TripleIntersection as exc:
        _emit({"error": "triple_intersection", "message": str(exc)}, args.json_out)
        return 3
    _emit(report.to_dict(), args.json_out)
    if not report.holds:
        return _dump_violation(family, args.dump)
    return 0


def cmd_svg(args):
    family = familyio.load(args.input)
    arr = arrangement.build(family)
    text = svg.arrangement_svg(arr, Path(args.input).stem)
    if args.svg_out:
        Path(args.svg_out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args):
    family = familyio.load(args.input)
    arr = arrangement.build(family)
    res = args.resolution or arrangement.required_resolution(arr)
    out = arrangement.flood_fill_oracle(arr, res, strict=not args.force)
    _emit({
        "resolution": out.resolution, "grid": list(out.shape),
        "holes": out.holes, "union_components": out.union_components,
        "max_depth_sampled": out.max_depth_sampled,
        "arrangement_holes": arrangement.holes(arr),
        "arrangement_union_components": arrangement.union_components(arr),
    }, args.json_out)
    return 0


def cmd_ktt(args):
    family = familyio.load(args.input)
    G = graphs.intersection_graph(family)
    found = graphs.ktt_find(G, args.t, induced=args.induced, budget=args.budget)
    _emit({"t": args.t, "induced": args.induced, "found": found is not None,
           "A": found[0] if found else None, "B": found[1] if found else None}, args.json_out)
    return 0 if found else 1


def cmd_packing(args):
    family = familyio.load(args.input)
    G = graphs.intersection_graph(family)
    found = graphs.max_independent_set(G, args.ell, budget=args.budget)
    _emit({"ell": args.ell, "found": found is not None, "members": found}, args.json_out)
    return 0 if found else 1


def cmd_hypergraph(args):
    family = familyio.load(args.input)
    H = hypergraph.build_hypergraph(family, args.k)
    out = hypergraph.density_report(H)
    out["edge_list"] = [list(e) for e in H.sorted_edges()]
    if args.m is not None:
        thr = hypergraph.kns_threshold(H.n, H.k, args.m)
        found = hypergraph.kns_independent_set(H, args.m, budget=args.budget)
        out["kns"] = {"m": args.m, "threshold": str(thr), "below_threshold": len(H.edges) < thr,
                      "independent_set": found}
        if len(H.edges) < thr and found is None:
            _emit(out, args.json_out)
            return _dump_violation(family, args.dump)
    _emit(out, args.json_out)
    return 0


# -- scan ---------------------------------------------------------------------

def scan_row(index: int, spec_dict: dict, timing: bool = False) -> dict:
    row = {c: "" for c in SCAN_COLUMNS}
    row["index"] = index
    start = time.perf_counter()
    try:
        spec = generators.GeneratorSpec.from_dict(spec_dict)
        row.update(kind=spec.kind, layer_kind=spec.layer_kind if spec.kind == "k_layers" else "",
                   param=spec.n, seed=spec.seed, k=spec.k if spec.kind == "k_layers" else "")
        family = generators.generate(spec)
        arr = arrangement.build(family)
        G = graphs.intersection_graph(family)
        dec = graphs.decompose_by_degeneracy(G, arr)
        prof = arrangement.max_depth(arr)
        row.update(
            n=len(family), holes=arrangement.holes(arr), max_depth=prof.max_depth,
            min_degree=graphs.min_degree(G)[1] if G.n else "",
            degeneracy=dec.degeneracy, num_colors=dec.num_colors,
        )
        if prof.max_depth <= 2:
            rep = arrangement.lemma_euler_check(arr)
            row.update(lemma_h=rep.h, lemma_rhs=rep.rhs, lemma_holds=rep.holds)
    except (GenerationFailed, GeneralPositionViolation, ValueError, TypeError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    if timing:
        row["runtime_ms"] = round((time.perf_counter() - start) * 1000)
    return row


def _scan_worker(job):
    return scan_row(*job)


def load_manifest(path) -> list[dict]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read manifest {path}: {exc}") from exc
    specs = data.get("specs") if isinstance(data, dict) else data
    if not isinstance(specs, list) or not all(isinstance(s, dict) for s in specs):
        raise FormatError("manifest must be a list of spec objects or {'specs': [...]}")
    return specs


def scan_summary(rows) -> dict:
    groups = {}
    for r in rows:
        if r["error"]:
            continue
        key = (r["kind"], r["layer_kind"], r["k"])
        g = groups.setdefault(key, {"kind": key[0], "layer_kind": key[1], "k": key[2], "rows": 0,
                                    "max_min_degree": 0, "max_num_colors": 0, "max_degeneracy": 0})
        g["rows"] += 1
        if r["min_degree"] != "":
            g["max_min_degree"] = max(g["max_min_degree"], r["min_degree"])
        g["max_num_colors"] = max(g["max_num_colors"], r["num_colors"])
        g["max_degeneracy"] = max(g["max_degeneracy"], r["degeneracy"])
    return {
        "rows": len(rows),
        "errors": sum(1 for r in rows if r["error"]),
        "groups": [groups[k] for k in sorted(groups, key=lambda t: tuple(map(str, t)))],
    }


def scan_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SCAN_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_scan(args):
    specs = load_manifest(args.input)
    jobs = [(i, s, args.timing) for i, s in enumerate(specs)]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_scan_worker, jobs))
    else:
        rows = [_scan_worker(j) for j in jobs]
    text = scan_csv(rows)
    if args.csv_out:
        Path(args.csv_out).write_text(text)
    else:
        sys.stdout.write(text)
    summary = json.dumps(scan_summary(rows), indent=2) + "\n"
    if args.json_out:
        Path(args.json_out).write_text(summary)
    elif args.csv_out:
        sys.stdout.write(summary)
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kpack", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help, needs_input=True):
        sp = sub.add_parser(name, help=help)
        if needs_input:
            sp.add_argument("--input", required=True, help="family JSON file")
        sp.add_argument("--json-out", help="also write the JSON report here")
        if needs_input:
            sp.add_argument("--dump", default="violation.json", help="where to write an instance breaking a guarantee")
        sp.set_defaults(func=func)
        return sp

    g = cmd("generate", cmd_generate, "write a seeded family as JSON", needs_input=False)
    g.add_argument("--kind", required=True, choices=generators.KINDS)
    g.add_argument("--n", type=int, default=10, help="members (per layer for k_layers)")
    g.add_argument("--ell", type=int, help="grid size for grid_bars")
    g.add_argument("--k", type=int, help="layers for k_layers")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--layer-kind", dest="layer_kind")
    g.add_argument("--m-sides", dest="m_sides", type=int)
    g.add_argument("--min-angle", dest="min_angle", type=float)
    g.add_argument("--min-clearance", dest="min_clearance")
    g.add_argument("--lattice", type=int)
    g.add_argument("--window", type=int, nargs=4, metavar=("X0", "Y0", "X1", "Y1"))
    g.add_argument("--size", type=int, nargs=2, metavar=("LO", "HI"))

    cmd("validate", cmd_validate, "parse and check general position")
    cmd("measure", cmd_measure, "holes, union components and depth profile")
    v = cmd("verify", cmd_verify, "exit 0 iff the family is a k-fold packing")
    v.add_argument("--k", type=int, required=True)
    d = cmd("decompose", cmd_decompose, "split into packings by degeneracy colouring")
    d.add_argument("--svg-out", help="write one SVG per colour class (suffix _class<c>)")
    cmd("lemma-check", cmd_lemma_check, "check the hole lower bound on a triple-free family")
    s = cmd("svg", cmd_svg, "render the arrangement")
    s.add_argument("--svg-out")
    o = cmd("oracle", cmd_oracle, "raster cross-check of holes and components")
    o.add_argument("--resolution", type=int, help="cells per unit (default: the guard minimum)")
    o.add_argument("--force", action="store_true", help="skip the resolution guard")
    kt = cmd("ktt", cmd_ktt, "search for a K_{t,t} in the intersection graph")
    kt.add_argument("--t", type=int, required=True)
    kt.add_argument("--induced", action="store_true")
    kt.add_argument("--budget", type=int, default=1_000_000)
    pk = cmd("packing", cmd_packing, "search for ell pairwise disjoint members")
    pk.add_argument("--ell", type=int, required=True)
    pk.add_argument("--budget", type=int, default=1_000_000)
    hg = cmd("hypergraph", cmd_hypergraph, "k-uniform intersection hypergraph and density")
    hg.add_argument("--k", type=int, required=True)
    hg.add_argument("--m", type=int, help="also extract an independent m-set")
    hg.add_argument("--budget", type=int, default=1_000_000)
    sc = sub.add_parser("scan", help="run a manifest of generator specs")
    sc.add_argument("--input", required=True, help="manifest JSON")
    sc.add_argument("--csv-out")
    sc.add_argument("--json-out", help="summary JSON")
    sc.add_argument("--jobs", type=int, default=1)
    sc.add_argument("--timing", action="store_true", help="fill runtime_ms (breaks byte-identical output)")
    sc.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ResolutionTooCoarse as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except GeneralPositionViolation as exc:
        sys.stdout.write(json.dumps(_gp_payload(exc), indent=2) + "\n")
        return 3
    except GenerationFailed as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except BudgetExceeded as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 5


if __name__ == "__main__":
    sys.exit(main())
