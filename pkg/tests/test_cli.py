import csv
import io
import json
import subprocess
import sys

import pytest

from ucdensity.cli import main, parse_range
from ucdensity.fileformat import emit_family
from ucdensity.family import chain_family, wojcik_family


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def famfile(tmp_path):
    def write(text, name="fam.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def fields(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(" ")
        out[key] = value.strip()
    return out


def test_parse_range():
    assert parse_range("3") == range(3, 4)
    assert parse_range("1..4") == parse_range("1:4") == parse_range("1-4") == range(1, 5)


def test_check_wojcik(capsys, famfile):
    code, out, _ = run(capsys, "check", famfile(emit_family(wojcik_family(3, 1))))
    assert code == 0
    row = fields(out)
    assert row["density"] == "4/9" and row["frankl"] == "true"
    assert row["density-lower"] == row["reimer"] == "Proven"
    assert row["theorem1"] == "2/2 proven"


def test_check_not_closed(capsys, famfile):
    code, out, _ = run(capsys, "check", famfile("0\n1\n"))
    assert code == 0
    row = fields(out)
    assert row["union-closed"] == "false"
    assert row["reimer"] == row["theorem1"] == "skipped"


def test_check_parse_error(capsys, famfile):
    code, _, err = run(capsys, "check", famfile("2 1\n"))
    assert code == 2 and "line 1" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "check", tmp_path / "missing.txt")
    assert code == 2


def test_check_corollary2_at_16(capsys, famfile):
    code, out, _ = run(capsys, "check", famfile(emit_family(wojcik_family(16, 4))), "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and row["corollary2"] == "Proven"


def test_construct(capsys):
    assert run(capsys, "construct", "wojcik", 3, "--k", 1)[:2] == (0, "-\n0\n0 1 2\n")
    assert run(capsys, "construct", "chain", 3)[:2] == (0, "0\n0 1\n0 1 2\n")
    assert run(capsys, "construct", "wojcik", 3, "--k", 5)[0] == 2
    code, out, _ = run(capsys, "construct", "wojcik", 5)
    assert code == 0 and out.count("\n") == 9  # k = 3: eight cube sets plus the universe


def test_closure(capsys, famfile):
    code, out, _ = run(capsys, "closure", famfile("0\n1\n"))
    assert (code, out) == (0, "0\n1\n0 1\n")


def test_witness_constructive_universe(capsys, famfile):
    code, out, _ = run(capsys, "witness", famfile("-\n0 1 2\n"), "--method", "constructive", "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and (row["a"], row["b"]) == (0, 1)
    assert row["trace"].startswith("A-equals-universe")


def test_witness_constructive_base(capsys, famfile):
    code, out, _ = run(capsys, "witness", famfile("0 1\n"), "--method", "constructive", "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and (row["a"], row["b"]) == (0, 1)
    assert row["trace"].startswith("base-singleton")


def test_witness_uses_input_labels(capsys, famfile):
    code, out, _ = run(capsys, "witness", famfile("5 9\n5 7 9\n"), "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and (row["a"], row["b"]) == (5, 9)


def test_witness_exit_codes(capsys, famfile):
    chain = famfile(emit_family(chain_family(3)))
    assert run(capsys, "witness", chain)[0] == 1
    assert run(capsys, "witness", chain, "--method", "constructive")[0] == 2
    assert run(capsys, "witness", famfile("0\n1\n0 1 2\n"), "--method", "constructive")[0] == 2


def test_search_examples(capsys):
    code, out, _ = run(capsys, "search", 3)
    assert code == 0
    assert out.startswith("s_3 = 4/9")
    assert "exists reading: true" in out and "forall reading: true" in out
    assert "minimizers: 1" in out
    code, out, _ = run(capsys, "search", 4, "--mode", "naive")
    assert out.startswith("s_4 = 2/5")
    code, out, _ = run(capsys, "search", 2)
    assert "forall reading: false" in out
    assert "# forall-reading counterexample" in out
    assert run(capsys, "search", 7)[0] == 2


def test_search_wall_time_on_stderr(capsys):
    _, out, err = run(capsys, "search", 3)
    assert "wall time" in err and "wall time" not in out


def test_search_workers_byte_identical(capsys):
    one = run(capsys, "search", 5, "--format", "json")[1]
    many = run(capsys, "search", 5, "--workers", 4, "--format", "json")[1]
    assert one == many


def test_bounds_rows(capsys):
    code, out, _ = run(capsys, "bounds", "1:16", "--format", "json")
    rows = {r["n"]: r for r in json.loads(out)}
    assert code == 0
    assert rows[16]["corollary2_threshold"] == "0.25" and rows[16]["g_of_n"] == "4"
    assert rows[3]["conjectured_sn"] == "4/9"
    assert rows[3]["theorem3_lower"].startswith("0.264")
    assert rows[1]["theorem3_lower"] == "0" and rows[1]["conjectured_sn"] == "1/2"
    assert rows[15]["g_of_n"] is None
    assert all(r["lower_le_conjectured"] == "Proven" for r in rows.values())
    assert run(capsys, "bounds", "0")[0] == 2


def test_bounds_formats_agree(capsys):
    rows = json.loads(run(capsys, "bounds", "1..20", "--format", "json")[1])
    as_text = [{k: "" if v is None else str(v) for k, v in r.items()} for r in rows]
    parsed = list(csv.DictReader(io.StringIO(run(capsys, "bounds", "1..20", "--format", "csv")[1])))
    assert parsed == as_text
    md = run(capsys, "bounds", "1..20", "--format", "md")[1].splitlines()
    header = [c.strip() for c in md[0].strip("|").split("|")]
    assert header == list(rows[0])
    body = [[c.strip() for c in line.strip("|").split("|")] for line in md[2:]]
    assert body == [list(r.values()) for r in as_text]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "1:4", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [r["s_n"] for r in rows] == ["1/2", "1/2", "4/9", "2/5"]
    assert all(r["lower_certified"] for r in rows)


def test_sample(capsys):
    code, out, _ = run(capsys, "sample", 4, "--count", 100, "--seed", 1, "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and row["violations"] == 0
    assert row["lemma2_passed"] > 0
    again = run(capsys, "sample", 4, "--count", 100, "--seed", 1, "--format", "json")[1]
    assert again == out
    assert run(capsys, "sample", 30, "--count", 5)[0] == 2
    assert run(capsys, "sample", 4, "--seed", -1)[0] == 2


def test_sample_n16(capsys):
    code, out, _ = run(capsys, "sample", 16, "--count", 500, "--seed", 7, "--format", "json")
    row = json.loads(out)[0]
    assert code == 0
    assert row["reimer_passed"] == row["density_lower_passed"] == row["corollary2_passed"] == 500


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "o.txt"
    code, out, _ = run(capsys, "construct", "chain", 2, "--out", target)
    assert code == 0 and out == "" and target.read_text() == "0\n0 1\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ucdensity.cli", "construct", "chain", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "0\n0 1\n"
