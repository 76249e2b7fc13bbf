import json

import pytest
from click.testing import CliRunner

from com2match.cli import main
from com2match.correspondence import parse_correspondence

runner = CliRunner()


def _compare_args(fixtures_dir, extra=()):
    return [
        "compare",
        "--left", str(fixtures_dir / "m1.json"),
        "--right", str(fixtures_dir / "m2.json"),
        "--ontology", str(fixtures_dir / "bank_ontology.json"),
        "--synonyms", str(fixtures_dir / "synonyms.tsv"),
        "--abbrev", str(fixtures_dir / "abbreviations.tsv"),
        "--acronyms", str(fixtures_dir / "acronyms.tsv"),
        *extra,
    ]


def test_compare_table_output(fixtures_dir):
    result = runner.invoke(main, _compare_args(fixtures_dir))
    assert result.exit_code == 0
    assert "== Sure mapping ==" in result.output
    assert "== Moderately sure mapping ==" in result.output
    assert "== Improbable mapping ==" in result.output
    assert "4:Hyponymy" in result.output


def test_compare_json_output_and_out_file(fixtures_dir, tmp_path):
    out = tmp_path / "corr.json"
    result = runner.invoke(main, _compare_args(
        fixtures_dir, ["--format", "json", "--out", str(out)]))
    assert result.exit_code == 0
    assert out.read_text() == result.output
    wm = parse_correspondence(out.read_text())
    assert wm.left_ref.model_id == "M1"
    assert len(wm.links) > 0


def test_compare_missing_file_exit_2(fixtures_dir):
    result = runner.invoke(main, [
        "compare", "--left", "/nonexistent.json",
        "--right", str(fixtures_dir / "m2.json")])
    assert result.exit_code == 2


def test_compare_invalid_model_exit_2(fixtures_dir, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"id": "X", "name": "x", "bogus": 1}')
    result = runner.invoke(main, [
        "compare", "--left", str(bad), "--right", str(fixtures_dir / "m2.json")])
    assert result.exit_code == 2
    assert "unknown keys" in result.output


def test_compare_config_env(fixtures_dir, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"emitHomonyms": False}))
    monkeypatch.setenv("COM2MATCH_CONFIG", str(cfg))
    with_cfg = runner.invoke(main, _compare_args(fixtures_dir, ["--format", "json"]))
    monkeypatch.delenv("COM2MATCH_CONFIG")
    without = runner.invoke(main, _compare_args(fixtures_dir, ["--format", "json"]))
    assert with_cfg.exit_code == without.exit_code == 0
    n_with = len(json.loads(with_cfg.output)["links"])
    n_without = len(json.loads(without.output)["links"])
    assert n_with < n_without


def test_compare_bad_local_coverage_exit_2(fixtures_dir):
    result = runner.invoke(main, _compare_args(fixtures_dir,
                                               ["--local-coverage", "2.0"]))
    assert result.exit_code == 2


def test_check_model_ok(fixtures_dir):
    result = runner.invoke(main, ["check", str(fixtures_dir / "m1.json")])
    assert result.exit_code == 0
    assert "ok" in result.output


def test_check_model_violations(tmp_path):
    doc = {"id": "X", "name": "x",
           "classes": [{"id": "a", "name": "Bank"}, {"id": "b", "name": "Bank"}]}
    path = tmp_path / "dup.json"
    path.write_text(json.dumps(doc))
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 2
    assert "unique-class-name" in result.output


def test_check_ontology(fixtures_dir, tmp_path):
    ok = runner.invoke(main, ["check", "--kind", "ontology",
                              str(fixtures_dir / "bank_ontology.json")])
    assert ok.exit_code == 0
    bad = tmp_path / "bad_onto.json"
    bad.write_text('{"concepts": ["A"], "subConceptOf": [["A", "Ghost"]]}')
    result = runner.invoke(main, ["check", "--kind", "ontology", str(bad)])
    assert result.exit_code == 2


def test_check_correspondence(fixtures_dir, tmp_path):
    out = tmp_path / "corr.json"
    assert runner.invoke(main, _compare_args(
        fixtures_dir, ["--out", str(out)])).exit_code == 0
    result = runner.invoke(main, [
        "check", "--kind", "correspondence", str(out),
        "--left", str(fixtures_dir / "m1.json"),
        "--right", str(fixtures_dir / "m2.json")])
    assert result.exit_code == 0
    # break a reference and recheck
    out.write_text(out.read_text().replace("M1.class.Bank", "M1.class.Ghost"))
    result = runner.invoke(main, [
        "check", "--kind", "correspondence", str(out),
        "--left", str(fixtures_dir / "m1.json"),
        "--right", str(fixtures_dir / "m2.json")])
    assert result.exit_code == 2


@pytest.fixture
def corr_path(fixtures_dir, tmp_path):
    out = tmp_path / "corr.json"
    assert runner.invoke(main, _compare_args(
        fixtures_dir, ["--out", str(out)])).exit_code == 0
    return out


def test_export_requires_complete_exit_3(fixtures_dir, corr_path, tmp_path):
    result = runner.invoke(main, [
        "export", "--in", str(corr_path),
        "--left", str(fixtures_dir / "m1.json"),
        "--right", str(fixtures_dir / "m2.json"),
        "--out", str(tmp_path / "export.json"), "--require-complete"])
    assert result.exit_code == 3
    assert "pending" in result.output


def test_export_validated_only(fixtures_dir, corr_path, tmp_path):
    doc = json.loads(corr_path.read_text())
    decided = []
    for i, link in enumerate(doc["links"]):
        link["decision"] = "validated" if i % 2 == 0 else "deleted"
        if i % 2 == 0:
            decided.append(link["id"])
    corr_path.write_text(json.dumps(doc))
    out = tmp_path / "export.json"
    result = runner.invoke(main, [
        "export", "--in", str(corr_path),
        "--left", str(fixtures_dir / "m1.json"),
        "--right", str(fixtures_dir / "m2.json"),
        "--out", str(out), "--require-complete"])
    assert result.exit_code == 0
    exported = json.loads(out.read_text())
    assert [l["id"] for l in exported["correspondence"]["links"]] == decided
    assert exported["pending"] == 0
    assert "leftOnly" in exported["unmatched"]


def test_export_unwritable_exit_1(fixtures_dir, corr_path):
    result = runner.invoke(main, [
        "export", "--in", str(corr_path),
        "--left", str(fixtures_dir / "m1.json"),
        "--right", str(fixtures_dir / "m2.json"),
        "--out", "/nonexistent-dir/export.json"])
    assert result.exit_code == 1
