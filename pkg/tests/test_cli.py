import csv
import json

import pytest

from conftest import family, rect
from kpack import familyio, generators
from kpack.cli import SCAN_COLUMNS, main


@pytest.fixture
def write(tmp_path):
    def _write(name, fam_or_text):
        path = tmp_path / name
        text = fam_or_text if isinstance(fam_or_text, str) else familyio.dumps(fam_or_text)
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


class TestVerify:
    def test_two_fold_grid(self, capsys, write):
        code, out = run(capsys, "verify", "--input", write("g.json", generators.gen_grid_bars(3)), "--k", 2)
        assert code == 0
        assert json.loads(out) == {"max_depth": 2, "k": 2, "is_kfold": True}

    def test_not_one_fold(self, capsys, write):
        code, _ = run(capsys, "verify", "--input", write("g.json", generators.gen_grid_bars(3)), "--k", 1)
        assert code == 1

    def test_malformed(self, capsys, write):
        code, _ = run(capsys, "verify", "--input", write("bad.json", "{bad"), "--k", 2)
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _ = run(capsys, "verify", "--input", tmp_path / "none.json", "--k", 2)
        assert code == 2

    def test_degenerate(self, capsys, write):
        fam = family(rect(0, 0, 2, 2, "a"), rect(2, 0, 4, 2, "b"))
        code, out = run(capsys, "verify", "--input", write("t.json", fam), "--k", 2)
        assert code == 3
        rep = json.loads(out)
        assert rep["members"] == ["a", "b"] and rep["locus"] is not None


class TestDecompose:
    def test_disjoint_one_class(self, capsys, write):
        fam = family(rect(0, 0, 1, 1, "a"), rect(2, 0, 3, 1, "b"))
        code, out = run(capsys, "decompose", "--input", write("d.json", fam))
        assert code == 0 and json.loads(out)["num_colors"] == 1

    def test_grid_with_svgs(self, capsys, write, tmp_path):
        svg = tmp_path / "out.svg"
        code, out = run(capsys, "decompose", "--input", write("g.json", generators.gen_grid_bars(3)), "--svg-out", svg)
        rep = json.loads(out)
        assert code == 0 and rep["packing_certified"] and rep["num_colors"] == 2
        assert sorted(p.name for p in tmp_path.glob("out_class*.svg")) == ["out_class0.svg", "out_class1.svg"]

    def test_k_layers(self, capsys, write):
        fam = generators.gen_k_layer_packing(3, 5, seed=1, window=(0, 0, 40, 40))
        code, out = run(capsys, "decompose", "--input", write("k.json", fam))
        rep = json.loads(out)
        assert code == 0 and rep["packing_certified"] and rep["num_colors"] <= len(fam)

    def test_degenerate(self, capsys, write):
        fam = family(rect(0, 0, 2, 2, "a"), rect(1, 2, 3, 4, "b"))
        assert run(capsys, "decompose", "--input", write("t.json", fam))[0] == 3


class TestLemmaCheck:
    def test_grid_equality(self, capsys, write):
        code, out = run(capsys, "lemma-check", "--input", write("g.json", generators.gen_grid_bars(4)))
        rep = json.loads(out)
        assert code == 0 and (rep["h"], rep["gamma_S"], rep["sum_gamma_Xi"], rep["rhs"]) == (9, 16, 8, 9)

    def test_disjoint_squares(self, capsys, write):
        fam = family(rect(0, 0, 1, 1, "a"), rect(3, 0, 4, 1, "b"))
        code, out = run(capsys, "lemma-check", "--input", write("d.json", fam))
        assert code == 0 and json.loads(out)["rhs"] == -1

    def test_three_fold(self, capsys, write):
        fam = family(rect(0, 0, 4, 4, "a"), rect(1, 1, 5, 5, "b"), rect(2, -1, 3, 6, "c"))
        assert run(capsys, "lemma-check", "--input", write("t.json", fam))[0] == 3


class TestOtherCommands:
    def test_generate_then_measure(self, capsys, tmp_path):
        path = tmp_path / "f.json"
        assert run(capsys, "generate", "--kind", "grid_bars", "--ell", 3, "--json-out", path)[0] == 0
        code, out = run(capsys, "measure", "--input", path)
        rep = json.loads(out)
        assert code == 0 and rep["holes"] == 4 and rep["max_depth"] == 2

    def test_generate_failure(self, capsys):
        code, _ = run(capsys, "generate", "--kind", "discs", "--n", 60, "--window", 0, 0, 10, 10, "--size", 4, 5)
        assert code == 1

    def test_validate(self, capsys, write):
        code, out = run(capsys, "validate", "--input", write("g.json", generators.gen_grid_bars(2)))
        assert code == 0 and json.loads(out)["euler_holds"]

    def test_oracle(self, capsys, write):
        code, out = run(capsys, "oracle", "--input", write("g.json", generators.gen_grid_bars(3)))
        rep = json.loads(out)
        assert code == 0 and rep["holes"] == rep["arrangement_holes"] == 4

    def test_oracle_too_coarse(self, capsys, write):
        path = write("g.json", generators.gen_grid_bars(3))
        assert run(capsys, "oracle", "--input", path, "--resolution", 1)[0] == 2
        assert run(capsys, "oracle", "--input", path, "--resolution", 1, "--force")[0] == 0

    def test_ktt(self, capsys, write):
        path = write("g.json", generators.gen_grid_bars(3))
        assert run(capsys, "ktt", "--input", path, "--t", 3)[0] == 0
        assert run(capsys, "ktt", "--input", path, "--t", 4)[0] == 1

    def test_packing(self, capsys, write):
        path = write("g.json", generators.gen_grid_bars(3))
        code, out = run(capsys, "packing", "--input", path, "--ell", 3)
        assert code == 0 and json.loads(out)["members"] == ["h1", "h2", "h3"]
        assert run(capsys, "packing", "--input", path, "--ell", 4)[0] == 1

    def test_budget_exit(self, capsys, write):
        fam = generators.gen_stars(12, seed=3)
        assert run(capsys, "packing", "--input", write("s.json", fam), "--ell", 12, "--budget", 1)[0] == 5

    def test_hypergraph(self, capsys, write):
        code, out = run(capsys, "hypergraph", "--input", write("g.json", generators.gen_grid_bars(3)), "--k", 2, "--m", 3)
        rep = json.loads(out)
        assert code == 0 and rep["edges"] == 9 and rep["kns"]["independent_set"] is not None

    def test_svg_deterministic(self, capsys, write, tmp_path):
        path = write("g.json", generators.gen_grid_bars(3))
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        run(capsys, "svg", "--input", path, "--svg-out", a)
        run(capsys, "svg", "--input", path, "--svg-out", b)
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().startswith("<?xml")


class TestScan:
    def test_empty_manifest(self, capsys, write):
        code, out = run(capsys, "scan", "--input", write("m.json", "[]"))
        assert code == 0
        assert out.splitlines()[0] == ",".join(SCAN_COLUMNS)

    def test_bad_manifest(self, capsys, write):
        assert run(capsys, "scan", "--input", write("m.json", "{oops"))[0] == 2

    def test_grid_holes_column(self, capsys, write, tmp_path):
        manifest = [{"kind": "grid_bars", "n": ell} for ell in range(2, 7)]
        out_csv = tmp_path / "s.csv"
        code, _ = run(capsys, "scan", "--input", write("m.json", json.dumps(manifest)), "--csv-out", out_csv)
        rows = list(csv.DictReader(out_csv.open()))
        assert code == 0
        assert [r["holes"] for r in rows] == ["1", "4", "9", "16", "25"]
        assert all(r["lemma_holds"] == "True" for r in rows)

    def test_error_column(self, capsys, write, tmp_path):
        manifest = [{"kind": "discs", "n": 60, "window": [0, 0, 10, 10], "size": [4, 5], "max_tries": 10}, {"kind": "nope"}]
        out_csv = tmp_path / "s.csv"
        code, _ = run(capsys, "scan", "--input", write("m.json", json.dumps(manifest)), "--csv-out", out_csv)
        rows = list(csv.DictReader(out_csv.open()))
        assert code == 0
        assert rows[0]["error"].startswith("GenerationFailed")
        assert rows[1]["error"].startswith("ValueError")

    def test_parallel_matches_serial(self, capsys, write, tmp_path):
        manifest = [{"kind": "k_layers", "k": 2, "n": n, "seed": 3, "window": [0, 0, 40, 40]} for n in (4, 6, 8)]
        m = write("m.json", json.dumps(manifest))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "scan", "--input", m, "--csv-out", a)
        run(capsys, "scan", "--input", m, "--csv-out", b, "--jobs", 2)
        assert a.read_bytes() == b.read_bytes()

    def test_summary(self, capsys, write, tmp_path):
        manifest = [{"kind": "k_layers", "k": 2, "n": n, "seed": 1, "window": [0, 0, 40, 40]} for n in (4, 6)]
        summary = tmp_path / "s.json"
        run(capsys, "scan", "--input", write("m.json", json.dumps(manifest)), "--csv-out", tmp_path / "s.csv", "--json-out", summary)
        rep = json.loads(summary.read_text())
        assert rep["rows"] == 2 and rep["groups"][0]["k"] == 2
        assert "max_min_degree" in rep["groups"][0]
