import json
import re

import pytest

from skewcodes import cli, harness
from skewcodes.config import Config, ConfigError, load_config, parse_config
from skewcodes.harness import FLAGGED, PASS, FixtureError, cmd_search, cmd_verify, load_fixtures


@pytest.fixture(scope="module")
def table1_report():
    return cmd_verify(load_fixtures("table1"), Config(), source="table1")


def test_table1_all_pass(table1_report):
    rows = table1_report["rows"]
    assert len(rows) == 8
    assert all(r["status"] == PASS for r in rows)
    labels = {r["id"]: r["classification"] for r in rows}
    fixtures = {r["id"]: r.get("classification") for r in load_fixtures("table1")}
    assert all(labels[i] == fixtures[i] for i in labels if fixtures[i])


def test_report_round_trip(table1_report):
    text = harness.dump_report(table1_report)
    again = json.loads(text)
    harness.validate_report(again)
    assert again == json.loads(json.dumps(table1_report))


def test_verify_deterministic(table1_report):
    again = cmd_verify(load_fixtures("table1"), Config(), source="table1")
    assert harness.strip_times(again) == harness.strip_times(table1_report)


def test_csv(table1_report):
    lines = harness.report_csv(table1_report).splitlines()
    assert lines[0].split(",") == harness.CSV_COLUMNS
    assert len(lines) == 9


def test_empty_fixture_list():
    rep = cmd_verify([], Config())
    assert rep["rows"] == [] and rep["summary"] == {PASS: 0, "FAIL": 0, FLAGGED: 0}
    harness.validate_report(rep)


def test_table5_flags_malformed_entry():
    (rec,) = cmd_verify(load_fixtures("table5"))["rows"]
    assert rec["status"] == FLAGGED
    att = rec["attempts"][-1]
    assert att["malformed"] == ["GCCGTTGCCGT"]
    assert att["missing"] == ["TGCCGTTGCCGT"] and att["extra"] == []
    assert att["reversible"] and att["complement_closed"]


def test_table3_flags_inconsistent_row():
    rep = cmd_verify(load_fixtures("table3"))
    assert rep["summary"]["FAIL"] == 0
    flagged = [r for r in rep["rows"] if r["status"] == FLAGGED]
    assert len(flagged) == 1 and flagged[0]["n"] == 56


def test_fixture_errors(tmp_path):
    with pytest.raises(FixtureError):
        load_fixtures("no-such-set")
    bad = tmp_path / "bad.yaml"
    bad.write_text("rows:\n  - id: x\n    kind: code\n    q: 4\n    n: 3\n    alpha: t\n    g: '1,1'\n")
    with pytest.raises(FixtureError):
        load_fixtures(str(bad))


def test_custom_fixture_file_fail_status(tmp_path):
    f = tmp_path / "mine.yaml"
    f.write_text(
        "rows:\n"
        "  - id: mine.wrong\n    kind: code\n    q: 4\n    n: 5\n    alpha: ['0']\n"
        "    g: 'x^2 + x + t'\n    expected: [5, 3, 2]\n"
    )
    rep = cmd_verify(load_fixtures(str(f)))
    assert rep["rows"][0]["status"] == "FAIL"
    assert cli.main(["verify", "--fixtures", str(f)]) == 1


def test_factor_checks():
    rep = harness.cmd_factor_check(4, 12, "x^9 + t^2x^8 + t^2x^7 + x^6 + x^3 + t^2x^2 + t^2x + 1",
                                   "x^3 + tx^2 + t^2x + 1", "0")
    assert rep["product_equal"] and rep["remainder_zero"] and rep["quotient_equals_cofactor"]
    rep = harness.cmd_factor_check(9, 7, "x^7 - 1", "1", "t^2")
    assert rep["product_equal"] and rep["remainder_zero"]
    rep = harness.cmd_factor_check(
        16, 12, "x^4 + t^13x^3 + t^7x^2 + t",
        "x^8 + t^13x^7 + t^2x^6 + t^7x^5 + t^2x^4 + t^14x^3 + t^5x^2 + t^6x + t^11", "t")
    assert rep["product_equal"] and rep["remainder_zero"]


def test_search_f4_example4_frontier():
    rep = cmd_search(4, 12, range(1, 10), ["0"], keep_all=True)
    assert rep["complete"]
    assert any(c["k"] == 3 and c["d"] == 6 and c["generators"] == ["1,t^2,t^2,1,0,0,1,t^2,t^2,1"]
               for c in rep["codes"])
    ks = [(e["k"], e["d"]) for e in rep["frontier"]]
    assert all(not (k2 >= k and d2 >= d and (k2, d2) != (k, d)) for k, d in ks for k2, d2 in ks)


def test_search_f4_alpha_t_dominates_12_3_6():
    rep = cmd_search(4, 12, range(1, 10), ["t"])
    front = {(e["k"], e["d"]) for e in rep["frontier"]}
    assert any(k >= 3 and d >= 6 for k, d in front)


def test_search_f49_mds():
    rep = cmd_search(49, 21, range(2, 3), ["t^2"])
    assert rep["divisors_found"] == 66
    assert any(e["k"] == 19 and e["d"] == 3 for e in rep["frontier"])


def test_search_empty_range_and_resume():
    rep = cmd_search(4, 12, range(5, 4), ["t"])
    assert rep["frontier"] == [] and rep["complete"] and rep["degrees"] == []
    full = cmd_search(4, 12, range(3, 5), ["0"], keep_all=True)
    part = cmd_search(4, 12, range(3, 5), ["0"], budget=40, keep_all=True)
    codes, cursor = list(part["codes"]), part["next_cursor"]
    assert not part["complete"] and cursor
    while cursor:
        nxt = cmd_search(4, 12, range(3, 5), ["0"], budget=40, resume=cursor, keep_all=True)
        codes += nxt["codes"]
        cursor = nxt["next_cursor"]
    assert codes == full["codes"]


def test_search_over_r2():
    rep = cmd_search(49, 6, range(1, 2), ["t^2"], l=2)
    assert rep["complete"]
    assert any(e["n"] == 12 and e["k"] == 10 and e["d"] == 3 for e in rep["frontier"])


def test_config_parsing(tmp_path, monkeypatch):
    cfg = parse_config("# moduli\nfield.16.modulus = 1, 1, 0, 0, 1\nbudget.distance_nodes = none\n"
                       "workers = 2\nbudget.enum_limit = 4_096\n")
    assert cfg.modulus(16) == (1, 1, 0, 0, 1)
    assert cfg.distance_nodes is None and cfg.workers == 2 and cfg.enum_limit == 4096
    for bad in ("nonsense", "colour = red", "workers = many", "field.x.modulus = 1,1"):
        with pytest.raises(ConfigError):
            parse_config(bad)
    p = tmp_path / "cfg.txt"
    p.write_text("workers = 3\n")
    monkeypatch.setenv("SKEWCODES_CONFIG", str(p))
    assert load_config().workers == 3
    monkeypatch.delenv("SKEWCODES_CONFIG")
    assert load_config() == Config()
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.txt")


def test_alternate_modulus_changes_representation():
    # x^4 + x^3 + 1 is another primitive modulus for F_16
    cfg = parse_config("field.16.modulus = 1, 0, 0, 1, 1\n")
    rep = harness.gray_info(16, "1 t\nt 1\n", 2, cfg=cfg)
    assert rep["field"]["modulus"] != harness.gray_info(16, "1 t\nt 1\n", 2)["field"]["modulus"]


def test_cli_verify_and_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    csv_out = tmp_path / "r.csv"
    assert cli.main(["verify", "--fixtures", "table1", "--report", str(out), "--csv", str(csv_out)]) == 0
    text = capsys.readouterr().out
    assert "PASS 8" in text
    harness.validate_report(json.loads(out.read_text()))
    assert csv_out.read_text().startswith("id,status")


def test_cli_code_info(capsys):
    assert cli.main(["code-info", "--q", "49", "--n", "21", "--g", "t^20,t^19,1",
                     "--alpha", "t^2"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert (rep["k"], rep["d"], rep["classification"]) == (19, 3, "MDS")


def test_cli_gray(tmp_path, capsys):
    m = tmp_path / "N.txt"
    m.write_text("1, t\nt, 1\n")
    assert cli.main(["gray", "--q", "16", "--l", "2", "--N", str(m)]) == 0
    assert json.loads(capsys.readouterr().out)["beta"] == "t^8"
    m.write_text("1 1\n1 1\n")
    assert cli.main(["gray", "--q", "16", "--l", "2", "--N", str(m)]) == 2


def test_cli_dna(tmp_path, capsys):
    g = "x^9 + t^2x^8 + t^2x^7 + x^6 + x^3 + t^2x^2 + t^2x + 1"
    fasta = tmp_path / "w.fa"
    assert cli.main(["dna", "--q", "4", "--n", "12", "--g", g, "--emit", "fasta",
                     "--out", str(fasta)]) == 0
    lines = fasta.read_text().splitlines()
    assert len(lines) == 128 and lines[0] == ">cw0"
    capsys.readouterr()
    assert cli.main(["dna", "--q", "4", "--n", "12", "--g", g]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["dna_code"] and rep["words"] == 64
    assert cli.main(["dna", "--q", "9", "--n", "4", "--g", "x - 1"]) == 2


def test_cli_factor_check(capsys):
    g = "x^9 + t^2x^8 + t^2x^7 + x^6 + x^3 + t^2x^2 + t^2x + 1"
    assert cli.main(["factor-check", "--q", "4", "--n", "12", "--g", g,
                     "--cofactor", "x^3 + tx^2 + t^2x + 1", "--alpha", "0"]) == 0
    capsys.readouterr()
    assert cli.main(["factor-check", "--q", "4", "--n", "12", "--g", g,
                     "--cofactor", "x^3 + tx^2 + t^2x + 1", "--alpha", "t"]) == 1
    rep = json.loads(capsys.readouterr().out)
    assert not rep["remainder_zero"]


def test_cli_search_resume_message(capsys):
    assert cli.main(["search", "--q", "4", "--n", "12", "--deg", "3..4", "--alpha", "0",
                     "--budget", "10"]) == 0
    captured = capsys.readouterr()
    # the cursor indexes all q^d candidates, including the skipped g_0 = 0 block
    assert re.search(r"--resume 0:3:\d+", captured.err)
    assert cli.main(["search", "--q", "4", "--n", "12", "--deg", "3", "--resume", "x"]) == 2


def test_cli_errors(capsys):
    assert cli.main(["code-info", "--q", "6", "--n", "4", "--g", "x - 1"]) == 2
    assert cli.main(["code-info", "--q", "4", "--n", "5", "--g", "x^2 + x + t"]) == 2
    assert cli.main(["verify", "--fixtures", "nope"]) == 2
    with pytest.raises(SystemExit):
        cli.main(["bogus"])
