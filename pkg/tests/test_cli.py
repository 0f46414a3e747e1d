import csv
import io
import json
import subprocess
import sys

import pytest

from horadam.algebra import Quaternion, parse_rational
from horadam.cli import main, parse_range, UsageError
from horadam.identities import IdentityReport
from horadam.qsequences import W
from horadam.sequences import HoradamParams, term_fast


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestTerm:
    def test_examples(self, capsys):
        assert run(capsys, "term", "--w0", "0", "--w1", "1", "-p", "1", "-q", "1", "-n", "10")[:2] == (0, "55\n")
        assert run(capsys, "term", "--w0", "0", "--w1", "1", "-p", "1", "-q", "1", "-n", "-1")[:2] == (0, "1\n")
        assert run(capsys, "term", "--w0", "-17", "--w1", "4", "-p", "3", "-q", "2", "-n", "0")[:2] == (0, "-17\n")

    def test_fraction_output(self, capsys):
        code, out, _ = run(capsys, "term", "--w0", "1", "--w1", "2", "-p", "1", "-q", "2", "-n", "-1")
        assert code == 0 and out == "1/2\n"

    def test_big_parameters(self, capsys):
        big = str(10**30)
        code, out, _ = run(capsys, "term", "--w0", big, "--w1", big, "-p", big, "-q", "1", "-n", "3")
        prm = HoradamParams(10**30, 10**30, 10**30, 1)
        assert code == 0 and int(out) == term_fast(prm, 3)

    def test_usage_errors(self, capsys):
        code, out, err = run(capsys, "term", "--w0", "0", "--w1", "1", "-q", "0", "-n", "-2")
        assert code == 2 and out == "" and "q != 0" in err
        assert run(capsys, "term", "-p", "1", "-n", "3")[0] == 2  # general kind without w0/w1
        assert run(capsys, "term", "--w0", "x", "--w1", "1", "-n", "3")[0] == 2
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys)[0] == 2

    def test_formats(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "term", "--kind", "pq-fib", "-n", "10")
        assert code == 0 and json.loads(out) == {"n": 10, "w": "55"}
        code, out, _ = run(capsys, "term", "--kind", "pq-fib", "-n", "10", "--format", "csv")
        assert list(csv.reader(io.StringIO(out))) == [["n", "w"], ["10", "55"]]


class TestQterm:
    def test_human(self, capsys):
        assert run(capsys, "qterm", "--kind", "pq-fib", "-p", "1", "-q", "1", "-n", "0")[1] == "0 + 1 i + 1 j + 2 k\n"
        assert run(capsys, "qterm", "--kind", "pq-lucas", "-p", "1", "-q", "1", "-n", "0")[1] == "2 + 1 i + 3 j + 4 k\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "qterm", "--kind", "pq-fib", "-p", "1", "-q", "1", "-n", "0")
        assert code == 0
        assert json.loads(out) == {"a0": "0", "a1": "1", "a2": "1", "a3": "2"}

    def test_json_round_trip(self, capsys):
        prm = HoradamParams(3, -2, 2, 5)
        for n in (-4, 0, 7, 40):
            out = run(capsys, "qterm", "--w0", "3", "--w1", "-2", "-p", "2", "-q", "5", "-n", str(n), "--format", "json")[1]
            assert Quaternion.from_json(json.loads(out)) == W(prm, n)


class TestTable:
    def test_fibonacci(self, capsys):
        code, out, _ = run(capsys, "table", "--kind", "pq-fib", "--from", "0", "--to", "3")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert out.splitlines()[0] == "n,w,W_a0,W_a1,W_a2,W_a3"
        assert [r["w"] for r in rows] == ["0", "1", "1", "2"]

    def test_single_row(self, capsys):
        out = run(capsys, "table", "--kind", "pq-lucas", "--from", "5", "--to", "5")[1]
        assert len(out.splitlines()) == 2

    def test_round_trip_with_negative_indices(self, capsys):
        prm = HoradamParams(2, 7, 3, -2)
        out = run(capsys, "table", "--w0", "2", "--w1", "7", "-p", "3", "-q", "-2", "--from", "-6", "--to", "12")[1]
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["n"]) for r in rows] == list(range(-6, 13))
        for r in rows:
            n = int(r["n"])
            assert parse_rational(r["w"]) == term_fast(prm, n)
            quat = Quaternion(*(parse_rational(r[f"W_a{i}"]) for i in range(4)))
            assert quat == W(prm, n)

    def test_json_lines(self, capsys):
        out = run(capsys, "table", "--kind", "pq-fib", "--from", "-2", "--to", "2", "--format", "json")[1]
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["n"] for r in rows] == [-2, -1, 0, 1, 2]
        assert Quaternion.from_json(rows[0]["W"]) == W(HoradamParams.fibonacci(), -2)

    def test_errors(self, capsys):
        assert run(capsys, "table", "--kind", "pq-fib", "--from", "3", "--to", "1")[0] == 2
        assert run(capsys, "table", "--kind", "pq-fib", "-q", "0", "--from", "-1", "--to", "1")[0] == 2

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "t.csv"
        code, out, _ = run(capsys, "--output", str(target), "table", "--kind", "pq-fib", "--from", "0", "--to", "3")
        assert code == 0 and out == ""
        assert target.read_text(encoding="utf-8").splitlines()[1] == "0,0,0,1,1,2"


class TestVerify:
    def test_hamilton(self, capsys):
        code, out, _ = run(capsys, "verify", "--ids", "hamilton_remark", "--n", "0..50")
        summary = json.loads(out.splitlines()[-1])
        assert code == 0
        assert summary["checked"] == 51 and summary["failed"] == 0

    def test_q_zero_all_skipped(self, capsys):
        code, out, _ = run(capsys, "verify", "--ids", "cassini_star", "--grid", "q=0")
        summary = json.loads(out.splitlines()[-1])
        assert code == 0
        assert summary["checked"] == 0 and summary["skipped"] > 0
        assert summary["per_id"]["cassini_star"]["skip_reasons"] == {"needs q != 0": summary["skipped"]}

    def test_failure_exit_code(self, capsys, monkeypatch):
        from horadam.identities import registry

        ident = registry.REGISTRY["t43_as_written"]
        monkeypatch.setitem(registry.REGISTRY, "t43_as_written",
                            registry.Identity(**{**ident.__dict__, "variant": None, "dispute": None}))
        code, out, _ = run(capsys, "verify", "--ids", "t43_as_written", "--p", "1", "--q", "1", "--m", "1..3", "--n", "1..3")
        lines = [json.loads(x) for x in out.splitlines()]
        assert code == 1
        assert lines[-1]["failed"] == len(lines) - 1 > 0
        for line in lines[:-1]:
            rep = IdentityReport.from_json(line)
            assert not rep.holds and rep.lhs != rep.rhs

    def test_disputed_variants_do_not_fail_the_run(self, capsys):
        code, out, _ = run(capsys, "verify", "--ids", "t43_as_written,t43_derived", "--p=-1..2", "--q", "1,2")
        summary = json.loads(out.splitlines()[-1])
        assert code == 0 and len(out.splitlines()) == 1
        assert summary["adjudication"]["t43"]["winner"] == "derived"
        assert summary["per_id"]["t43_as_written"]["failed"] > 0

    def test_usage_errors(self, capsys):
        assert run(capsys, "verify", "--ids", "nope")[0] == 2
        assert run(capsys, "verify", "--grid", "x=1")[0] == 2
        assert run(capsys, "verify", "--grid", "n=5..1")[0] == 2
        assert run(capsys, "verify", "--n", "a")[0] == 2

    def test_list(self, capsys):
        code, out, _ = run(capsys, "verify", "--list")
        assert code == 0 and "t43_as_written [disputed]" in out

    def test_csv_and_human(self, capsys):
        code, out, _ = run(capsys, "verify", "--ids", "t21,t42", "--p", "1,2", "--q", "1", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and [r["id"] for r in rows] == ["t21", "t42"]
        assert all(r["failed"] == "0" for r in rows)
        code, out, _ = run(capsys, "verify", "--ids", "t21", "--p", "1", "--q", "1", "--format", "human")
        assert code == 0 and "failed=0" in out

    def test_deterministic_output(self, capsys):
        argv = ["verify", "--ids", "thm3_3_odd_as_written,thm3_3_odd_derived,t24", "--p", "-2..2", "--q", "-1,2"]
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second


class TestBench:
    def test_sorted_csv(self, capsys):
        code, out, _ = run(capsys, "bench", "--ns", "100,0,10", "--reps", "1")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert [r["n"] for r in rows] == ["0", "10", "100"]
        assert [r["bits"] for r in rows] == ["0", "6", "69"]

    def test_mismatch_exit_code(self, capsys, monkeypatch):
        import horadam.cli as cli

        monkeypatch.setattr(cli, "term_fast", lambda params, n: -1)
        assert run(capsys, "bench", "--ns", "5", "--reps", "1")[0] == 1

    def test_negative_rejected(self, capsys):
        assert run(capsys, "bench", "--ns=-1", "--reps", "1")[0] == 2

    def test_deterministic_columns(self, capsys):
        strip = lambda text: [line.split(",")[:2] for line in text.splitlines()]  # noqa: E731
        a = run(capsys, "bench", "--ns", "50,20", "--reps", "1")[1]
        b = run(capsys, "bench", "--ns", "50,20", "--reps", "1")[1]
        assert strip(a) == strip(b)


def test_parse_range():
    assert parse_range("1..3,7") == (1, 2, 3, 7)
    assert parse_range("-2..0") == (-2, -1, 0)
    with pytest.raises(UsageError):
        parse_range("1,,2")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "horadam", "term", "--kind", "pq-fib", "-n", "20"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "6765\n"
    proc = subprocess.run([sys.executable, "-m", "horadam", "term"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2 and proc.stderr
