import json

import pytest

from wittknot import commands
from wittknot.cli import main
from wittknot.records import (
    IngestError,
    bundled_path,
    emit,
    emit_csv,
    ingest,
    load_bundled,
    parse_text,
)
from wittknot.witt import ZERO

FIXTURES = ["worked_knots.json", "worked_forms.json", "seifert_samples.json", "knots_le9.csv"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip(tmp_path, name):
    recs = load_bundled(name)
    text = emit(recs)
    p = tmp_path / "out.json"
    p.write_text(text)
    again = ingest(p)
    assert again == recs
    assert emit(again) == text
    c = tmp_path / "out.csv"
    c.write_text(emit_csv(recs))
    assert ingest(c) == recs


def test_worked_fixture_has_four_records():
    recs = load_bundled("worked_knots.json")
    assert [r.name for r in recs] == ["m7_4", "m5_2", "11a_16", "12n_33"]
    assert all(r.symmetrized is not None for r in recs)


def test_empty_file(tmp_path):
    for suffix in (".json", ".csv"):
        p = tmp_path / f"empty{suffix}"
        p.write_text("")
        assert ingest(p) == []


def test_scalar_only_csv(tmp_path):
    p = tmp_path / "k.csv"
    p.write_text("name,det,sigma,u1\n3_1,3,-2,true\n")
    (rec,) = ingest(p)
    assert rec.phi() is None
    assert rec.resolved() == (None, 3, -2)
    assert rec.u1_known is True and not rec.issues


def test_parse_errors_carry_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('[{"name": "x", "seifert": [[1, 2], [3]]}]')
    with pytest.raises(IngestError, match=r"record 0 \(x\)\.seifert: row 1"):
        ingest(p)
    p.write_text('[{"name": "x",}]')
    with pytest.raises(IngestError, match=r"bad.json:1:"):
        ingest(p)
    c = tmp_path / "bad.csv"
    c.write_text("name,det,sigma\nk,seven,0\n")
    with pytest.raises(IngestError, match=r"bad.csv:2 \(k\)\.det"):
        ingest(c)


def test_mismatch_is_per_record(tmp_path):
    p = tmp_path / "k.json"
    p.write_text(json.dumps([
        {"name": "good", "seifert": [[-1, 1], [0, -1]], "det": 3, "sigma": -2},
        {"name": "bad", "seifert": [[-1, 1], [0, -1]], "det": 5, "sigma": 2},
    ]))
    good, bad = ingest(p)
    assert good.issues == []
    assert len(bad.issues) == 2


def test_strict_seifert(tmp_path):
    p = tmp_path / "k.json"
    p.write_text(json.dumps([{"name": "x", "seifert": [[1, 0], [0, 1]]}]))
    with pytest.raises(IngestError):
        ingest(p, strict=True)
    (rec,) = ingest(p)
    assert rec.notices


def test_symmetric_mode_and_rationals():
    text = json.dumps([{"name": "q", "seifert": [["1/2", 0], [0, -3]]}])
    (rec,) = parse_text(text, "json", mode="symmetric")
    assert [str(x) for x in rec.phi()] == ["1/2", "-3"]
    with pytest.raises(IngestError):
        parse_text(json.dumps([{"name": "q", "seifert": [[1, 2], [0, 1]]}]), "json",
                   mode="symmetric")


def test_zero_by_zero_record():
    (rec,) = parse_text('[{"name": "unknot", "seifert": []}]', "json")
    (row,) = commands.cmd_compute([rec])
    assert row.phi == [] and row.sigma == 0 and row.det == 1


def test_compute_rows():
    rows = {r.name: r for r in commands.cmd_compute(load_bundled("worked_knots.json"))}
    assert rows["12n_33"].det == 123 and rows["12n_33"].sigma == -2
    assert rows["m7_4"].phi == ["4", "7/4", "-4/7", "15/4"]


def test_jobs_do_not_change_output():
    recs = load_bundled("knots_le9.csv")
    one = [r.as_dict() for r in commands.cmd_obstruct_u1(recs, jobs=1)]
    four = [r.as_dict() for r in commands.cmd_obstruct_u1(recs, jobs=4)]
    assert one == four
    fam1 = [r.as_dict() for r in commands.cmd_pretzel(family=19, grid=(3, 3), jobs=1)]
    fam3 = [r.as_dict() for r in commands.cmd_pretzel(family=19, grid=(3, 3), jobs=3)]
    assert fam1 == fam3


def test_rows_are_reproducible():
    recs = load_bundled("worked_knots.json")
    assert [r.as_dict() for r in commands.cmd_report(recs)] == \
        [r.as_dict() for r in commands.cmd_report(recs)]


def test_cli_obstruct_u1(capsys):
    code, out, _ = run(capsys, "obstruct-u1", "--json")
    assert code == 0
    rows = {r["name"]: r for r in json.loads(out)}
    assert rows["11a_16"]["verdict"] == "excluded (both signs)"
    assert rows["11a_16"]["witness"] == 5
    assert rows["12n_33"]["witness"] == 41
    assert rows["m5_2"]["verdict"] == "consistent"


def test_cli_text_table(capsys):
    code, out, _ = run(capsys, "compute")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["name", "phi", "sigma", "det", "verdict"]
    assert any(line.startswith("11a_16") for line in lines)


def test_cli_u1_skips_scalar_records(tmp_path, capsys):
    p = tmp_path / "k.csv"
    p.write_text("name,det,sigma\nx,3,-2\n")
    code, out, err = run(capsys, "obstruct-u1", "--input", str(p))
    assert code == 0
    assert "skipped" in out and "x" in err


def test_cli_fixture_mismatch_exit(tmp_path, capsys):
    p = tmp_path / "k.json"
    rec = json.loads(bundled_path("worked_knots.json").read_text())[2]
    rec["u1"] = True  # 11a_16 is obstructed, so this assertion is false
    p.write_text(json.dumps([rec]))
    code, _, _ = run(capsys, "obstruct-u1", "--input", str(p))
    assert code == 3


def test_cli_validation_exit(tmp_path, capsys):
    p = tmp_path / "k.json"
    p.write_text(json.dumps([{"name": "t", "seifert": [[-1, 1], [0, -1]], "det": 5}]))
    code, _, _ = run(capsys, "compute", "--input", str(p))
    assert code == 2
    p.write_text("{not json")
    code, _, err = run(capsys, "compute", "--input", str(p))
    assert code == 2 and "k.json:1:" in err


def test_cli_usage_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--jobs"])
    assert exc.value.code == 1
    code, _, _ = run(capsys, "obstruct-u2")
    assert code == 1
    code, _, _ = run(capsys, "pretzel")
    assert code == 1
    code, _, _ = run(capsys, "lickorish", "15", "4", "21")
    assert code == 1


def test_cli_u2_range(capsys):
    code, out, _ = run(capsys, "obstruct-u2", "--d-range", "1..75", "--json")
    assert code == 0
    (res,) = json.loads(out)
    assert res["survivors"] == [3, 7, 11, 15, 19, 27, 35, 47, 55, 63, 67, 71, 75]


def test_cli_u2_mirrored_input(tmp_path, capsys):
    # 10_47 itself (sigma +4): the answer comes back in its own chirality
    p = bundled_path("seifert_samples.json")
    code, out, _ = run(capsys, "obstruct-u2", "--input", str(p), "--name", "10_47",
                       "--candidates", "bundled", "--json")
    assert code == 0
    (res,) = json.loads(out)
    names = {c["name"] for c in res["candidates"]}
    assert names == {"m3_1", "m5_2", "m6_2", "m7_2", "m7_6", "m8_11", "m8_21", "m9_2",
                     "m9_12", "9_26", "9_39", "9_42"}
    assert all(c["sigma"] == 2 for c in res["candidates"])


def test_cli_u2_empty_candidates(tmp_path, capsys):
    p = tmp_path / "none.csv"
    p.write_text("name,det,sigma,u1\n")
    code, out, _ = run(capsys, "obstruct-u2", "--candidates", str(p), "--json")
    assert code == 0
    assert json.loads(out)[0]["candidates"] == []


def test_cli_pretzel(capsys):
    code, out, _ = run(capsys, "pretzel", "--three", "7", "-3", "14", "--json")
    (row,) = json.loads(out)
    assert code == 0 and row["family_check"] == "obstructed"
    code, out, _ = run(capsys, "pretzel", "--three", "3", "-3", "2", "--json")
    (row,) = json.loads(out)
    assert row["phi"] == [] and row["sigma"] == 0
    code, out, _ = run(capsys, "pretzel", "--four-family", "19", "--grid", "3x3", "--json")
    rows = json.loads(out)
    assert len(rows) == 9 and all(r["verdict"] == "obstructed" for r in rows)


def test_cli_lickorish(capsys):
    code, out, _ = run(capsys, "lickorish", "15", "4", "15", "--json")
    assert json.loads(out)[0]["verdict"] == "no solution: u > 1"
    code, out, _ = run(capsys, "lickorish", "15", "2", "15", "--json")
    assert json.loads(out)[0]["verdict"] == "solvable"
    code, out, _ = run(capsys, "lickorish", "25", "9", "25", "--input",
                       str(bundled_path("seifert_samples.json")), "--name", "8_8", "--json")
    row = json.loads(out)[0]
    assert row["verdict"] == "no solution: u > 1"
    assert "phi = 0" in row["note"]


def test_cli_report(capsys):
    code, out, _ = run(capsys, "report", "--json")
    assert code == 0
    rows = {r["name"]: r for r in json.loads(out)}
    assert rows["7_4"]["lickorish"] == "no solution: u > 1"
    assert rows["8_8"]["verdict"] == "consistent"


def test_report_8_8_phi_zero():
    rec = {r.name: r for r in load_bundled("seifert_samples.json")}["8_8"]
    assert rec.phi() == ZERO


def _knotinfo_export(tmp_path):
    samples = {r.name: r for r in load_bundled("seifert_samples.json")}
    lines = ["name,seifert_matrix,signature,determinant,unknotting_number,braid_notation"]
    for name, u in (("3_1", 1), ("7_4", 2)):
        r = samples[name]
        m = "{" + ",".join("{" + ",".join(map(str, row)) + "}" for row in r.seifert.V) + "}"
        lines.append(f'{name},"{m}",{r.sigma},{r.det},{u},"{{1,1,1}}"')
    p = tmp_path / "knotinfo.csv"
    p.write_text("\n".join(lines) + "\n")
    return p


def test_import_knotinfo(tmp_path):
    from wittknot.records import import_knotinfo, normalize_name
    assert normalize_name("11a_{16}") == normalize_name("K11a16") == "11a_16"
    assert normalize_name("3_1") == "3_1"
    trefoil, seven = import_knotinfo(_knotinfo_export(tmp_path))
    assert (trefoil.name, trefoil.u1_known, trefoil.issues) == ("3_1", True, [])
    assert (seven.name, seven.u1_known) == ("7_4", False)
    assert seven.resolved()[1:] == (15, 2)


def test_cli_knotinfo_format(tmp_path, capsys):
    p = _knotinfo_export(tmp_path)
    code, out, _ = run(capsys, "obstruct-u1", "--input", str(p), "--format", "knotinfo", "--json")
    assert code == 0
    assert [r["name"] for r in json.loads(out)] == ["3_1", "7_4"]
