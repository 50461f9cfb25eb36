import json
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest
from click.testing import CliRunner

from trisectkit.cli import main
from trisectkit.corpus import corpus_files
from trisectkit.fileformat import parse, read_file

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


@pytest.mark.parametrize("name", sorted(corpus_files()))
def test_validate_corpus(name):
    result = run("validate", CORPUS / name)
    assert result.exit_code == 0, result.output
    assert "ok" in result.stdout


def test_validate_reports_tampered_expectations(tmp_path):
    doc = json.loads((CORPUS / "s1xs2.thd").read_text())
    doc["metadata"]["expected"]["c"] = 99
    bad = tmp_path / "bad.thd"
    bad.write_text(json.dumps(doc))
    result = run("validate", bad, "--format", "json")
    assert result.exit_code == 1
    data = json.loads(result.stdout)
    assert not data["ok"]
    assert any("c" in m for m in data["failures"])


def test_unreadable_file_exits_1(tmp_path):
    missing = run("validate", tmp_path / "nope.thd")
    assert missing.exit_code == 1
    garbage = tmp_path / "garbage.thd"
    garbage.write_text("{")
    result = run("validate", garbage)
    assert result.exit_code == 1
    assert "line 1" in result.stderr


def test_usage_errors_exit_2():
    assert run("validate").exit_code == 2
    assert run("invariants", CORPUS / "t3.thd", "--format", "svg").exit_code == 2
    assert run("move", CORPUS / "t3.thd", "--type", "torus-I").exit_code == 2
    assert run("move", CORPUS / "s1xs2.thd", "--type", "heegaard", "--move-site", "face").exit_code == 2


def test_invariants_json():
    result = run("invariants", CORPUS / "cp2_minus_b4.ptd", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert (data["c"], data["c_pair"], data["chi"]) == (1, 1, 2)


def test_move_heegaard_to_file(tmp_path):
    out = tmp_path / "stab.thd"
    result = run("move", CORPUS / "s1xs2.thd", "--type", "heegaard", "--move-site", "sector=1,face=0", "-o", out)
    assert result.exit_code == 0, result.output
    assert read_file(out).diagram.surfaces[1] != read_file(CORPUS / "s1xs2.thd").diagram.surfaces[1]
    assert "ok" in result.stdout


def test_move_to_stdout_is_a_diagram():
    result = run("move", CORPUS / "s2xd2.ptd", "--type", "torus-II", "--move-site", "sector=2")
    assert result.exit_code == 0
    assert parse(result.stdout).kind == "ptri"


def test_band_then_shift(tmp_path):
    listing = run("move", CORPUS / "s1xb3.ptd", "--type", "band", "--move-site", "sector=1", "--list-sites")
    assert listing.exit_code == 0
    clean = [k for k, line in enumerate(listing.stdout.splitlines()) if "clean" in line]
    assert clean
    banded = tmp_path / "band.ptd"
    site = f"sector=1,arc={clean[0]}"
    assert run("move", CORPUS / "s1xb3.ptd", "--type", "band", "--move-site", site, "-o", banded).exit_code == 0
    shifted = tmp_path / "shift.ptd"
    result = run("move", banded, "--type", "shift", "-o", shifted, "--format", "json")
    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["ok"]
    assert data["invariants"]["c"] == 2
    assert data["invariants"]["c_boundary"] == 2
    assert "band" in read_file(banded).diagram.metadata


def test_failed_move_exits_1():
    result = run("move", CORPUS / "trivial_b4.ptd", "--type", "band", "--move-site", "sector=0")
    assert result.exit_code in (1, 2)
    shift = run("move", CORPUS / "s2xd2.ptd", "--type", "shift")
    assert shift.exit_code == 1
    assert "PatternNotFound" in shift.stderr


def test_boundary_link_and_bracket():
    result = run("boundary-link", CORPUS / "trefoil_surface.shd")
    assert result.exit_code == 0
    assert "jones: -t^-4 + t^-3 + t^-1" in result.stdout
    br = run("bracket", CORPUS / "left_trefoil.lnk", "--format", "json")
    assert json.loads(br.stdout)["jones"] == "-t^-4 + t^-3 + t^-1"
    assert run("boundary-link", CORPUS / "hopf.lnk").exit_code == 2


def test_homclass():
    files = [CORPUS / f"cp2_lift_x{i}.lnk" for i in (1, 2, 3)]
    result = run("homclass", *files, "--format", "json")
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"per_sector": [0, 1, 1], "total": 2}
    assert run("homclass", CORPUS / "hopf.lnk").exit_code == 2


def test_enumerate_and_budget():
    result = run("enumerate", "--max-complexity", "1", "--format", "json")
    assert result.exit_code == 0
    assert not json.loads(result.stdout)["partial"]
    small = run("enumerate", "--max-complexity", "2", "--budget", "3")
    assert small.exit_code == 3
    assert "(partial)" in small.stdout
    assert run("enumerate", "--max-complexity", "9").exit_code == 2


@pytest.mark.parametrize("name", ["t3.thd", "cp2_minus_b4.ptd", "mobius.shd", "figure_eight.lnk"])
def test_render_is_valid_svg(name, tmp_path):
    out = tmp_path / "pic.svg"
    result = run("render", CORPUS / name, "-o", out)
    assert result.exit_code == 0
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")
    assert len(list(root)) > 2
    assert run("render", CORPUS / name, "--format", "json").exit_code == 2
