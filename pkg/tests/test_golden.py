"""Byte-for-byte comparison against checked-in outputs (tests/golden)."""

from pathlib import Path

import pytest

from kpack import familyio, generators
from kpack.cli import main

GOLDEN = Path(__file__).parent / "golden"


def test_generated_family_matches():
    assert familyio.dumps(generators.gen_grid_bars(3)) == (GOLDEN / "grid3.json").read_text()


@pytest.mark.parametrize(
    "argv, produced, expected",
    [
        (["svg", "--input", "grid3.json", "--svg-out", "{out}"], "{out}", "grid3.svg"),
        (["decompose", "--input", "grid3.json", "--json-out", "{out}"], "{out}", "grid3_decompose.json"),
        (["lemma-check", "--input", "grid4.json", "--json-out", "{out}"], "{out}", "grid4_lemma.json"),
        (["scan", "--input", "grid_manifest.json", "--csv-out", "{out}", "--json-out", "{tmp}/summary.json"], "{out}", "grid_scan.csv"),
        (["scan", "--input", "grid_manifest.json", "--csv-out", "{tmp}/s.csv", "--json-out", "{out}"], "{out}", "grid_scan_summary.json"),
    ],
)
def test_cli_outputs_match(argv, produced, expected, tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    out = tmp_path / "out"
    subst = {"out": str(out), "tmp": str(tmp_path)}
    assert main([a.format(**subst) for a in argv]) == 0
    capsys.readouterr()
    assert Path(produced.format(**subst)).read_bytes() == (GOLDEN / expected).read_bytes()
