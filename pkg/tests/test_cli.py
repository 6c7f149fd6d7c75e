import subprocess
import sys

import pytest

from collatz_complexes.cli import main, parse_range, resolve_function
from collatz_complexes.gcf import collatz

COLLATZ_TEXT = "mod 2\n0: (1/2)x + 0\n1: 3x + 1\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def collatz_file(tmp_path):
    p = tmp_path / "collatz.gcf"
    p.write_text(COLLATZ_TEXT)
    return str(p)


class TestCommands:
    def test_gcf_check(self, capsys, collatz_file):
        assert run(capsys, "gcf", "check", collatz_file) == (0, "ACCEPT\n", "")

    def test_gcf_check_reject(self, capsys, tmp_path):
        p = tmp_path / "pred.gcf"
        p.write_text("mod 1\n0: x - 1\n")
        code, out, _ = run(capsys, "gcf", "check", str(p))
        assert code == 3 and out.startswith("REJECT x=1")

    def test_gcf_eval_and_preimage(self, capsys, collatz_file):
        assert run(capsys, "gcf", "eval", "--fn", collatz_file, "1", "7", "27")[1] == "4\n22\n82\n"
        assert run(capsys, "gcf", "preimage", "--fn", "C", "10")[1] == "3 20\n"

    def test_orbit_classify(self, capsys):
        out = run(capsys, "orbit", "classify", "--fn", "C", "27")[1]
        assert out.splitlines()[0] == "27\tCycleFound\t109\t3\ttrue\t353"

    def test_orbit_scan(self, capsys):
        out = run(capsys, "orbit", "scan", "--fn", "C", "--seeds", "1..5")[1]
        lines = out.splitlines()
        assert lines[2] == "3\tCycleFound\t5\t3\ttrue\t25"
        assert lines[5] == "" and "CycleFound\t5" in lines

    def test_orbit_census(self, capsys):
        assert run(capsys, "orbit", "census", "C", "100000", "3")[1] == "1 2 4\n"

    def test_hat(self, capsys):
        assert run(capsys, "hat", "eval", "--fn", "C", "3", "5", "9")[1] == "3\n2\n38\n"
        out = run(capsys, "hat", "wrap", "C", "--show", "6")[1]
        assert out.splitlines()[0] == "handle hat:collatz"
        assert out.splitlines()[5] == "5\t(2,1)\t2"

    def test_complex(self, capsys):
        out = run(capsys, "complex", "export", "B", "2")[1]
        assert out == "complex B 2\ngen 1\ngen 2\ngen 3\nrel 1: -2 +1 +2 -1 -1\nrel 2: -3 +2 +3 -2 -2\n"
        out = run(capsys, "complex", "truncate", "P", "--fn", "C", "--closure", "1")[1]
        assert out.splitlines()[0] == "dims 1 3 3"
        assert "d2 4: 4:-1" in out.splitlines()

    def test_complex_not_closed(self, capsys):
        code, _, err = run(capsys, "complex", "truncate", "P", "--fn", "C", "--cells", "1..3")
        assert code == 3 and "not closed" in err

    def test_homology(self, capsys):
        assert run(capsys, "homology", "compute", "H", "3")[1] == "H0 Z^1\nH1 0\nH2 0\n"
        assert run(capsys, "homology", "compute", "B", "4")[1] == "H0 Z^1\nH1 Z^1\nH2 0\n"
        assert run(capsys, "homology", "toph", "Gamma", "--fn", "cycle:5,6,7")[1] == "cycle: 4:1 5:1 6:1\n"
        out = run(capsys, "homology", "toph", "P", "--fn", "C", "--max-cells", "500")[1]
        assert out == "no dependence among the first 500 cells\n"
        assert run(capsys, "homology", "component", "--fn", "successor")[1] == "component: v1\n"
        assert run(capsys, "homology", "component", "--fn", "table:5=5", "--start", "5")[1] == "component: v5\n"

    def test_tc(self, capsys):
        assert run(capsys, "tc", "certify", "H", "3", "--max-cosets", "100000")[1] == \
            "Certified: trivial (index 1)\n"
        assert run(capsys, "tc", "enumerate", "B", "1", "--max-cosets", "1000")[1] == \
            "Exhausted: more than 1000 cosets\n"

    def test_tc_file(self, capsys, tmp_path):
        p = tmp_path / "s3.pres"
        p.write_text("gens 2\nrel +1 +1\nrel +2 +2\nrel +1 +2 +1 +2 +1 +2\n")
        assert run(capsys, "tc", "enumerate", "--file", str(p))[1] == "Index: 6\n"

    def test_simplicial(self, capsys, tmp_path):
        out = run(capsys, "simplicial", "convert", "B", "1")[1]
        assert sum(1 for l in out.splitlines() if l.startswith("t ")) == 60
        sc = tmp_path / "b1.sc"
        sc.write_text(out)
        assert run(capsys, "simplicial", "euler", "B", "1")[1] == "0\n"
        assert run(capsys, "simplicial", "euler", "--sc", str(sc))[1] == "0\n"
        pres = run(capsys, "simplicial", "fromsc", str(sc))[1]
        assert pres.startswith("gens ")

    def test_decide(self, capsys):
        out = run(capsys, "decide", "contract", "--fn", "hat:collatz", "--seeds", "1..10000",
                  "--max-steps", "100000")[1]
        assert "verdict: NO_VIOLATION_FOUND" in out.splitlines()
        out = run(capsys, "decide", "connect", "--fn", "cycle:5,6,7", "--seeds", "1..10")[1]
        assert "verdict: CERTIFIED_DISCONNECTED" in out and "cycle: 5 6 7" in out
        out = run(capsys, "decide", "connect", "--fn", "S", "--seeds", "1..3", "--max-steps", "100",
                  "--probe", "20")[1]
        assert "certificate: finite component v1" in out

    def test_reduce(self, capsys):
        out = run(capsys, "reduce", "--fn", "C", "--cells", "9")[1]
        assert "P(hat) rel 9: -38 +9 +38 -9 -9" in out.splitlines()

    def test_collatz_verify(self, capsys):
        out = run(capsys, "collatz", "verify", "--upto", "1000")[1]
        assert out.splitlines()[-1] == "result: all seeds reach cycle (1 4 2), period 3"

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.txt"
        code, out, _ = run(capsys, "homology", "compute", "H", "2", "-o", str(target))
        assert code == 0 and out == ""
        assert target.read_text() == "H0 Z^1\nH1 0\nH2 0\n"

    def test_stats_go_to_stderr(self, capsys):
        code, out, err = run(capsys, "homology", "compute", "H", "2", "--stats")
        assert out == "H0 Z^1\nH1 0\nH2 0\n" and err


class TestExitCodes:
    def test_usage(self, capsys):
        assert main(["orbit", "classify"]) == 2
        assert main([]) == 2

    def test_unknown_function(self, capsys):
        assert run(capsys, "gcf", "eval", "--fn", "nosuch", "1")[0] == 3

    def test_bad_gcf(self, capsys):
        assert run(capsys, "gcf", "eval", "--fn", "gcf:mod 2 ; 0: x", "1")[0] == 3

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "gcf", "check", str(tmp_path / "missing.gcf"))[0] == 4

    def test_bad_range(self, capsys):
        assert run(capsys, "orbit", "scan", "--fn", "C", "--seeds", "5..1")[0] == 3

    def test_inconclusive_is_success(self, capsys):
        code, out, _ = run(capsys, "decide", "contract", "--fn", "S", "--seeds", "1..3", "--max-steps", "50")
        assert code == 0 and "INCONCLUSIVE" in out


class TestResolve:
    @pytest.mark.parametrize("ref, x, y", [
        ("collatz", 7, 22), ("C", 7, 22), ("successor", 7, 8), ("const3", 7, 3),
        ("four_cycle", 4, 1), ("cycle:5,6,7", 7, 5), ("table:2=9@C", 2, 9), ("hat:C", 9, 38),
        ("gcf:mod 1 ; 0: 2x + 1", 3, 7),
    ])
    def test_refs(self, ref, x, y):
        assert resolve_function(ref)(x) == y

    def test_file_ref(self, collatz_file):
        assert resolve_function(collatz_file) == collatz()
        assert resolve_function("file:" + collatz_file) == collatz()

    def test_range(self):
        assert parse_range("3..7") == range(3, 8)
        assert parse_range("4") == range(4, 5)


def test_repeatable_bytes(tmp_path):
    cmd = [sys.executable, "-m", "collatz_complexes.cli", "decide", "contract", "--fn", "four_cycle",
           "--seeds", "1..50"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"CERTIFIED_NOT_CONTRACTIBLE" in a


def test_stdin_dash():
    cmd = [sys.executable, "-m", "collatz_complexes.cli", "gcf", "check", "-"]
    res = subprocess.run(cmd, input=COLLATZ_TEXT, capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "ACCEPT\n"
