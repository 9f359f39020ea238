import random
import subprocess
import sys

import pytest

from conftest import POOL, class_instance, null_filiform
from leibsuper import build_remark21, parse_algebra, read_algebra, write_algebra
from leibsuper.cli import OK, USAGE, VIOLATION, main
from leibsuper.sampling import draw_lemma31_instance


@pytest.fixture
def table(tmp_path):
    def make(A, name="a.txt"):
        path = tmp_path / name
        write_algebra(A, path)
        return str(path)
    return make


def test_check_valid_and_invalid(table, capsys):
    assert main(["check", table(build_remark21(3, 4))]) == OK
    out = capsys.readouterr().out
    assert "leibniz-super: ok" in out and "lie-superalgebra: no" in out
    bad = null_filiform(4).with_products({(0, 1): {2: 1}})
    assert main(["check", table(bad, "bad.txt")]) == VIOLATION
    assert "FAILED" in capsys.readouterr().out


def test_parse_errors_and_missing_files_are_usage_errors(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text("dim_even 2\ndim_odd 0\nprod x1 x9 = x2\n")
    assert main(["nilindex", str(path)]) == USAGE
    assert "line 3, column 9" in capsys.readouterr().err
    assert main(["nilindex", str(tmp_path / "missing.txt")]) == USAGE
    assert main(["nope"]) == USAGE
    assert main(["verify", "--theorem", "3.1", "--n", "4", "--partition", "1,1"]) == USAGE


def test_series_nilindex_rann(table, capsys):
    path = table(build_remark21(3, 4))
    assert main(["nilindex", path]) == OK
    assert capsys.readouterr().out.strip() == "8"
    assert main(["series", path]) == OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8 and lines[-1].startswith("L^8 dim 0")
    assert main(["rann", path]) == OK
    assert "dim 5 (2|3)" in capsys.readouterr().out


def test_non_nilpotent_exit_code(table, capsys):
    from leibsuper import SuperAlgebra
    path = table(SuperAlgebra(1, 0, {(0, 0): {0: 1}}))
    assert main(["nilindex", path]) == VIOLATION
    assert main(["series", path]) == VIOLATION
    assert main(["charseq", path]) == VIOLATION


def test_charseq(table, capsys):
    assert main(["charseq", table(class_instance("a", 4, (2, 1)).algebra)]) == OK
    assert capsys.readouterr().out.strip() == "(3, 1 | 2, 1)"


def test_build_and_params(tmp_path, capsys):
    assert main(["build", "--family", "remark21", "--n", "3", "--m", "4"]) == OK
    assert parse_algebra(capsys.readouterr().out) == build_remark21(3, 4)
    out = tmp_path / "a.txt"
    args = ["build", "--family", "thm22-a", "--n", "5", "--partition", "2,1",
            "--param", "alpha4=1/2", "-o", str(out)]
    assert main(args) == OK
    assert read_algebra(out) == class_instance("a", 5, (2, 1), alpha4="1/2").algebra
    assert main(["build", "--family", "thm22-a", "--n", "3", "--partition", "1"]) == USAGE
    assert main(["build", "--family", "thm22-a", "--n", "5", "--param", "alpha4"]) == USAGE


def test_change_with_and_without_a(table, tmp_path, capsys):
    path = table(class_instance("c", 4, (2, 1)).algebra)
    out = tmp_path / "c.txt"
    # the table comes back unchanged, but its odd chain is driven by x1, not x2
    assert main(["change", path, "--lemma31", "c.2", "--A1", "0", "--A2", "1",
                 "--a", "5", "-o", str(out)]) == VIOLATION
    assert read_algebra(out) == read_algebra(path)
    A, A1, A2 = draw_lemma31_instance(random.Random(3), "c2", 5, (2, 1), POOL)
    drawn = table(A, "drawn.txt")
    capsys.readouterr()
    args = ["change", drawn, "--lemma31", "c.2", "--A1", str(A1), "--A2", str(A2)]
    assert main(args + ["--partition", "2,1"]) == OK
    err = capsys.readouterr().err
    assert "# a = " in err and "preserved products: ok" in err
    assert main(["change", path, "--lemma31", "c.2", "--A1", "1", "--A2", "1", "--a", "5"]) == VIOLATION
    assert main(["change", path, "--lemma31", "d.1", "--A1", "1", "--A2", "0"]) == USAGE


def test_verify_writes_report(tmp_path, capsys):
    report = tmp_path / "r.txt"
    args = ["verify", "--theorem", "3.2", "--n", "4", "--partition", "2,1",
            "--trials", "200", "--seed", "3", "--report", str(report)]
    assert main(args) == OK
    printed = capsys.readouterr().out
    assert report.read_text() == printed
    assert "passed yes" in printed and "instances_tested 200" in printed
    assert main(args) == OK
    assert capsys.readouterr().out == printed


def test_module_entry_point(table):
    res = subprocess.run([sys.executable, "-m", "leibsuper", "nilindex", table(null_filiform(3))],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "4"
