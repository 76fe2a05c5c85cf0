"""Exit codes, determinism, and report formats of the batch front door."""

import json
import pathlib

import pytest

from acplab import cli, serialize
from acplab import crossed_product as cp
from acplab import fixtures

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def run(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_builtin(capsys):
    code, out, _ = run(["validate", "--fixture", "instance-b"], capsys)
    assert code == 0
    assert "PASS" in out


def test_validate_fixture_file(capsys):
    code, out, _ = run(
        ["validate", "--fixture", str(FIXTURE_DIR / "instance-b3.json")], capsys)
    assert code == 0


def test_validate_missing_file(capsys):
    code, _out, err = run(["validate", "--fixture", "no-such-file.json"], capsys)
    assert code == cli.EXIT_IO
    assert "input error" in err


def test_validate_perturbed_fixture(tmp_path, capsys, b_algebra):
    doc = serialize.algebra_to_doc(b_algebra)
    doc["twists"][0][1][2] = "1/2"       # breaks the inversion rule
    path = tmp_path / "broken.json"
    serialize.save(path, doc)
    code, _out, err = run(["validate", "--fixture", str(path)], capsys)
    assert code == cli.EXIT_MATH_FAIL


def test_analyze_finds_witness(capsys):
    code, out, _ = run(["analyze", "--fixture", "instance-b"], capsys)
    assert code == 0
    assert "witness found" in out


def test_analyze_budget_exhaustion(capsys):
    code, out, _ = run(
        ["analyze", "--fixture", "instance-b3", "--budget-l", "0"], capsys)
    assert code == cli.EXIT_EXHAUSTED
    assert "NOT a proof" in out


def test_graded_command(capsys):
    code, out, _ = run(["graded", "--fixture", "instance-b"], capsys)
    assert code == 0
    assert "semiramification" in out
    assert "absence audit" in out


def test_graded_rejects_cyclic_group(tmp_path, capsys):
    from fractions import Fraction

    from acplab import crossed_product as cp
    from acplab.field_core import GaloisExtensionPresentation

    ext = fixtures.SimpleExtension(
        "r", 2, (Fraction(2), Fraction(0)), auto_image=(Fraction(0), Fraction(-1)))
    pres = ext.presentation(name="rank1")
    rank1 = GaloisExtensionPresentation(
        (2,), pres.basis_labels, pres.structure_constants, pres.unit_coords,
        [[[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]], name="rank1")
    alg = cp.CrossedProductAlgebra(rank1, fixtures.trivial_cocycle(rank1))
    path = tmp_path / "rank1.json"
    serialize.save(path, serialize.algebra_to_doc(alg))
    code, _out, err = run(["graded", "--fixture", str(path)], capsys)
    assert code == cli.EXIT_MATH_FAIL
    assert "noncyclic" in err


def test_validate_presentation_only_document(tmp_path, capsys, b_field):
    path = tmp_path / "pres.json"
    serialize.save(path, serialize.presentation_to_doc(b_field))
    code, _out, _err = run(["validate", "--fixture", str(path)], capsys)
    assert code == 0


def test_descend_command(capsys):
    code, out, _ = run(
        ["descend", "--fixture", "instance-b", "--composite", "b-cuberoot2",
         "--exponent", "2"], capsys)
    assert code == 0
    assert "stage 5" in out


def test_descend_requires_exponent(capsys):
    code, _out, err = run(
        ["descend", "--fixture", "instance-b", "--composite", "b-cuberoot2"],
        capsys)
    assert code == cli.EXIT_IO


def test_descend_with_witness_file(capsys):
    code, out, _ = run(
        ["descend", "--fixture", "instance-b",
         "--composite", str(FIXTURE_DIR / "composite-b-cuberoot2.json"),
         "--witness", str(FIXTURE_DIR / "instance-b-witness.json"),
         "--exponent", "2"], capsys)
    assert code == 0


def test_report_format_is_json_and_deterministic(capsys):
    code, out1, _ = run(
        ["analyze", "--fixture", "instance-b", "--format", "report"], capsys)
    assert code == 0
    payload = json.loads(out1)
    assert payload["command"] == "analyze"
    assert payload["config"]["seed"] == 0
    _code, out2, _ = run(
        ["analyze", "--fixture", "instance-b", "--format", "report"], capsys)
    assert out1 == out2


def test_candidates_file_extends_search(tmp_path, capsys, b3_algebra, b3_witness):
    doc = serialize.elements_to_doc([b3_witness.coeff])
    path = tmp_path / "extra.json"
    serialize.save(path, doc)
    # keep only the extension: budget excludes the default set entirely
    defaults = len(cp.default_candidates(b3_algebra.ext))
    code, out, _ = run(
        ["analyze", "--fixture", "instance-b3", "--candidates", str(path),
         "--budget-l", str(defaults + 1)], capsys)
    assert code == 0


def test_demo(capsys):
    code, out, _ = run(["demo"], capsys)
    assert code == 0
