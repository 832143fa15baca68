import csv
import io
import json
import subprocess
import sys

import pytest

from zassenhaus import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def results(text):
    return {r["name"]: r["value"] for r in json.loads(text)["results"]}


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--family", "free", "--rank", "2", "--p", "2", "--upto", "4", "--json")
    assert code == 0
    assert results(out) == {"b": "[2, 2, 8/3, 4]", "w": "[2, 1, 2, 3]", "c": "[2, 3, 2, 6]"}


def test_dims_csv(capsys):
    code, out, _ = run(capsys, "dims", "--family", "demushkin", "--rank", "4", "--p", "3", "--upto", "2", "--csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["name", "value"]
    assert dict(rows[1:])["c"] == "[4, 5]"


def test_output_is_deterministic(capsys):
    argv = ("mobius", "--group", "d4", "--json")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_series_table(capsys):
    code, out, _ = run(capsys, "series", "--family", "free", "--rank", "2", "--p", "3", "--order", "4")
    assert code == 0 and "[1, 2, 4, 8, 16]" in out


def test_hall_list(capsys):
    code, out, _ = run(capsys, "hall", "--rank", "2", "--weight", "3", "--list", "--json")
    vals = results(out)
    assert code == 0 and "[[x1,x2],x2]" in out and vals["count"] == "2"


def test_hall_zassenhaus_basis(capsys):
    code, out, _ = run(capsys, "hall", "--rank", "2", "--weight", "2", "--p", "2", "--list")
    assert code == 0 and "x1^2" in out and "[x1,x2]" in out


def test_pgroup(capsys):
    code, out, _ = run(capsys, "pgroup", "--group", "d4", "--automorphisms", "--json")
    assert code == 0 and "8" in results(out).values()


@pytest.mark.parametrize("argv, want", [
    (("count", "yamagishi", "--p", "2", "--n", "1", "--q", "2", "--group", "d4"), "18"),
    (("count", "u3", "--p", "3", "--n", "2", "--q", "3"), None),
    (("count", "sap", "--n", "3"), None),
    (("count", "d4-local", "--p", "2"), "18"),
    (("count", "shafarevich", "--p", "2", "--n", "1", "--group", "cyclic:4"), None),
])
def test_count(capsys, argv, want):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    if want is not None:
        assert want in results(out).values()


def test_count_missing_argument_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["count", "u3", "--p", "3"])
    assert exc.value.code == 2


def test_bad_group_spec_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["pgroup", "--group", "nonsense"])
    assert exc.value.code == 2


def test_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "count", "u3", "--p", "3", "--n", "1", "--q", "3")
    assert code == 1 and err.startswith("error:")


def test_order_cap(capsys):
    argv = ["series", "--family", "free", "--rank", "1", "--p", "2", "--order", str(cli.MAX_ORDER + 1)]
    with pytest.raises(SystemExit) as exc:
        cli.run(argv)
    assert exc.value.code == 2
    code, _, _ = run(capsys, *argv, "--unsafe-order")
    assert code == 0


def test_workers_env(monkeypatch):
    monkeypatch.setenv("ZASSENHAUS_WORKERS", "3")
    assert cli.workers_from_env() == 3
    monkeypatch.setenv("ZASSENHAUS_WORKERS", "zero")
    with pytest.raises(cli.UsageError):
        cli.workers_from_env()


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--check", "1")
    assert code == 0 and out.startswith("PASS [ 1]")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zassenhaus", "count", "sap", "--n", "4", "--csv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("name,value")
