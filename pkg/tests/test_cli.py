import csv
import io
import json

import pytest

from dkp.cli import family_of, main, run_bench, write_csv
from dkp.generator import read_optimum, save

from pathlib import Path


@pytest.fixture
def t2_file(tmp_path, t2):
    path = tmp_path / "t2.dkp"
    save(t2, path)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("method, value, optimal", [
    ("full", 30, True), ("red", 30, True), ("heuristic", 30, False),
])
def test_solve_json(capsys, t2_file, method, value, optimal):
    code, out, _ = run(capsys, "solve", t2_file, "--method", method, "--json")
    assert code == 0
    d = json.loads(out)
    assert (d["value"], d["optimal"]) == (value, optimal)
    if method == "red":
        assert d["red_pct"] == 50.0


def test_solve_table(capsys, t2_file):
    code, out, _ = run(capsys, "solve", t2_file, "--show-solution")
    assert code == 0
    assert "selection 2 -1" in out


def test_solve_memory_limit_is_an_error(capsys, t2_file):
    code, _, err = run(capsys, "solve", t2_file, "--method", "full", "--mem-limit", "10")
    assert code == 1 and "memory limit" in err


def test_solve_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.dkp"
    bad.write_text("4 10\n1 1\n2 2\n3 3\n4 4\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 1 and "bad.dkp:1: n must be a multiple of 3" in err


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--family", "bogus", "--groups", "3", "--out", str(tmp_path)])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bench", str(tmp_path)])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bench", str(tmp_path), "--methods", "full,nope"])
    assert exc.value.code == 2


def test_generate_is_byte_identical(capsys, tmp_path):
    for d in ("a", "b"):
        assert run(capsys, "generate", "--family", "weak", "--groups", "20", "--count", "3",
                   "--seed", "11", "--out", tmp_path / d)[0] == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == ["weak_20_0.dkp", "weak_20_1.dkp", "weak_20_2.dkp"]
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_family_of():
    assert family_of(Path("strong_100_3.dkp")) == "strong"
    assert family_of(Path("udkp1_1.dkp")) == "unc"
    assert family_of(Path("idkp10_3.dkp")) == "inv"
    assert family_of(Path("foo.dkp")) == "unknown"


def test_bench(capsys, tmp_path):
    for family in ("unc", "weak", "strong", "inv"):
        main(["generate", "--family", family, "--groups", "30", "--count", "2", "--seed", "3",
              "--out", str(tmp_path)])
    capsys.readouterr()
    rows = run_bench(tmp_path, ["full", "red"], repeat=3, write_opt=True)
    data = [r for r in rows if not r["instance"].startswith("mean:")]
    means = [r for r in rows if r["instance"].startswith("mean:")]
    assert len(data) == 16
    assert len(means) == 2 * (4 + 1)
    by_name = {}
    for r in data:
        by_name.setdefault(r["instance"], {})[r["method"]] = r["value"]
    assert all(v["full"] == v["red"] for v in by_name.values())
    assert all(r["gap_pct"] == 0.0 for r in data)
    assert read_optimum(tmp_path / "unc_30_0.dkp") == by_name["unc_30_0"]["full"]

    buf = io.StringIO()
    write_csv(rows, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# dkp-bench-csv v1"
    parsed = list(csv.DictReader(l for l in lines if not l.startswith("#")))
    assert len(parsed) == len(rows)
    assert parsed[0]["method"] == "full"


def test_bench_cli_to_file(capsys, tmp_path, t2_file):
    out = tmp_path / "res.csv"
    code, _, _ = run(capsys, "bench", t2_file.parent, "--methods", "red,heuristic",
                     "--csv", out)
    assert code == 0
    text = out.read_text()
    assert text.startswith("# dkp-bench-csv v1")
    assert "mean:overall" in text
