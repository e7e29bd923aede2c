import json
import os
import pathlib
import subprocess
import sys

import pytest

import digenergy
from digenergy import parse_edge_list
from digenergy.cli import main

K3_TEXT = "3\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n"
C4_TEXT = "4\n0 1\n1 2\n2 3\n3 0\n"

_SRC = str(pathlib.Path(digenergy.__file__).resolve().parent.parent)


def run_cli(args, stdin=""):
    env = dict(os.environ)
    env["PYTHONPATH"] = _SRC + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "digenergy", *args],
        input=stdin, capture_output=True, text=True, env=env,
    )
    return proc


class TestAnalyze:
    def test_human_output(self, tmp_path):
        path = tmp_path / "k3.txt"
        path.write_text(K3_TEXT)
        proc = run_cli(["analyze", str(path)])
        assert proc.returncode == 0
        assert "energy=4" in proc.stdout
        assert "COMPLETE(3)" in proc.stdout
        assert "walk_dominated=yes" in proc.stdout

    def test_stdin(self):
        proc = run_cli(["analyze"], stdin=K3_TEXT)
        assert proc.returncode == 0

    def test_json_roundtrip(self):
        proc = run_cli(["--json", "analyze", "-"], stdin=K3_TEXT)
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        arcs = {tuple(a) for a in doc["digraph"]["arcs"]}
        assert arcs == set(parse_edge_list(K3_TEXT).arcs)
        assert doc["spectrum"]["energy"] == pytest.approx(4.0, abs=1e-9)
        assert doc["bounds"]["walk_dominated"] is True
        assert doc["verdicts"]["energy_upper"]["kind"] == "COMPLETE"
        # profile fields recompute from the echoed arc list
        from digenergy import Digraph, walk_profile

        rebuilt = Digraph(doc["digraph"]["n"], arcs)
        prof = walk_profile(rebuilt)
        assert list(prof.c2_seq) == doc["profile"]["c2_seq"]
        assert list(prof.t2_seq) == doc["profile"]["t2_seq"]

    def test_pole_warning_in_document(self):
        proc = run_cli(["--json", "analyze", "-"], stdin=C4_TEXT)
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["coulson_energy"] is None
        assert any("pole" in w for w in doc["warnings"])

    def test_empty_input_fails_usage(self):
        proc = run_cli(["analyze", "-"], stdin="")
        assert proc.returncode == 2
        assert "error" in proc.stderr

    def test_missing_file(self):
        proc = run_cli(["analyze", "/definitely/not/here.txt"])
        assert proc.returncode == 2


class TestVerify:
    def test_n3_exhaustive_passes(self):
        proc = run_cli(["verify", "3"])
        assert proc.returncode == 0
        assert "all checks passed" in proc.stdout

    def test_single_check(self):
        proc = run_cli(["verify", "4", "--checks", "rho_chain"])
        assert proc.returncode == 0

    def test_json_report(self):
        proc = run_cli(["--json", "verify", "2"])
        report = json.loads(proc.stdout)
        assert report["digraphs_checked"] == 4
        assert proc.returncode == 0

    def test_cap_exceeded_usage_error(self):
        proc = run_cli(["verify", "9", "--mode", "exhaustive"])
        assert proc.returncode == 2

    def test_unknown_check_usage_error(self):
        proc = run_cli(["verify", "3", "--checks", "bogus"])
        assert proc.returncode == 2

    def test_random_mode(self):
        proc = run_cli(["verify", "6", "--mode", "random", "--count", "20",
                        "--p", "0.3", "--seed", "4",
                        "--checks", "moment_difference,moment_total"])
        assert proc.returncode == 0

    def test_tol_flag_plumbed(self):
        proc = run_cli(["--tol", "1e-6", "verify", "2", "--checks", "rho_chain"])
        assert proc.returncode == 0


class TestCoulson:
    def test_sym_edge(self):
        proc = run_cli(["coulson", "-"], stdin="2\n0 1\n1 0\n")
        assert proc.returncode == 0
        lines = dict(line.split(None, 1) for line in proc.stdout.strip().splitlines())
        assert float(lines["integral"]) == pytest.approx(2.0, rel=1e-6)
        assert float(lines["energy"]) == pytest.approx(2.0, rel=1e-9)

    def test_sym_triangle(self):
        proc = run_cli(["coulson", "-"], stdin=K3_TEXT)
        assert proc.returncode == 0

    def test_directed_four_cycle_pole(self):
        proc = run_cli(["coulson", "-"], stdin=C4_TEXT)
        assert proc.returncode == 1
        assert "x = 1" in proc.stderr or "x = -1" in proc.stderr


class TestRandom:
    def test_complete_at_p_one(self):
        proc = run_cli(["random", "3", "1.0", "1"])
        assert proc.returncode == 0
        assert parse_edge_list(proc.stdout).arc_count == 6

    def test_empty_at_p_zero(self):
        proc = run_cli(["random", "3", "0.0", "1"])
        assert proc.stdout == "3\n"

    def test_byte_identical_runs(self):
        a = run_cli(["random", "5", "0.4", "9"])
        b = run_cli(["random", "5", "0.4", "9"])
        assert a.stdout == b.stdout

    def test_pipes_into_analyze(self):
        blob = run_cli(["random", "4", "0.5", "7"]).stdout
        proc = run_cli(["analyze", "-"], stdin=blob)
        assert proc.returncode == 0

    def test_bad_flags(self):
        proc = run_cli(["random", "3", "1.5", "1"])
        assert proc.returncode == 2


class TestMainEntry:
    def test_main_returns_exit_code(self, capsys):
        assert main(["verify", "2"]) == 0
        capsys.readouterr()

    def test_exit_codes_stable_contract(self):
        assert run_cli(["verify", "2"]).returncode == 0      # pass
        assert run_cli(["coulson", "-"], stdin=C4_TEXT).returncode == 1  # failure
        assert run_cli(["verify", "99"]).returncode == 2     # usage
