from __future__ import annotations

import json
import subprocess
import sys

import pytest

from digrev import graph
from digrev.cli import main


def run_cli(args, stdin: str | None = None):
    proc = subprocess.run(
        [sys.executable, "-m", "digrev", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def triangle_file(tmp_path, triangle):
    path = tmp_path / "triangle.json"
    path.write_text(graph.to_json(triangle))
    return str(path)


@pytest.fixture
def bik3_file(tmp_path, bik3):
    path = tmp_path / "bik3.json"
    path.write_text(graph.to_json(bik3))
    return str(path)


class TestGenConvert:
    def test_ladder_json_round_trip(self):
        code, out, _ = run_cli(["gen", "--ladder", "4"])
        assert code == 0
        assert graph.from_json(out) == graph.gen_ladder(4)

    def test_pipeline_to_dot_has_seven_edges(self):
        code, ladder_json, _ = run_cli(["gen", "--ladder", "4"])
        assert code == 0
        code, dot, _ = run_cli(["convert", "-", "--format", "dot"], stdin=ladder_json)
        assert code == 0
        assert dot.count("->") == 7

    def test_convert_json_byte_identical(self, triangle_file, triangle):
        code, out, _ = run_cli(["convert", triangle_file, "--format", "json"])
        assert code == 0 and out == graph.to_json(triangle)

    def test_gen_seeded_deterministic(self):
        a = run_cli(["gen", "--random", "6", "10", "--seed", "9"])
        b = run_cli(["gen", "--random", "6", "10", "--seed", "9"])
        assert a == b and a[0] == 0

    def test_gen_requires_mode(self):
        code, _, err = run_cli(["gen"])
        assert code == 2
        assert json.loads(err)["error"] == "usage"


class TestChiReduce:
    def test_chi_triangle(self, triangle_file):
        code, out, _ = run_cli(["chi", triangle_file])
        assert code == 0
        payload = json.loads(out)
        assert payload["chi"] == 2
        assert set(payload["coloring"]) == {"a", "b", "c"}

    def test_reduce_bik3_one_cycle(self, bik3_file):
        code, out, _ = run_cli(["reduce", bik3_file, "--order", "u,v,w"])
        assert code == 0
        payload = json.loads(out)
        assert len(payload["sequence"]) == 1
        assert payload["iterations"] == 1
        assert payload["forward_counts"] == [3, 4]
        final = graph.from_json(json.dumps(payload["final"]))
        from digrev import dichromatic

        assert dichromatic.chi(final)[0] <= 2

    def test_reduce_bad_order(self, triangle_file):
        code, _, err = run_cli(["reduce", triangle_file, "--order", "a,b"])
        assert code == 1
        assert json.loads(err)["error"] == "input"


class TestCertificates:
    def test_cert_check_pass_and_fail(self, triangle_file):
        code, out, _ = run_cli(["cert-check", triangle_file, "--order", "a,b,c", "--k", "2"])
        assert code == 0 and json.loads(out) == {"ok": True, "violating_cycle": None}
        code, out, _ = run_cli(["cert-check", triangle_file, "--order", "a,b,c", "--k", "1"])
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is False and sorted(payload["violating_cycle"]) == [0, 1, 2]

    def test_cert_find(self, triangle_file):
        code, out, _ = run_cli(["cert-find", triangle_file, "--k", "2"])
        assert code == 0 and json.loads(out)["found"] is True
        code, out, _ = run_cli(["cert-find", triangle_file, "--k", "1"])
        assert code == 0 and json.loads(out)["found"] is False

    def test_cert_find_limit(self, tmp_path):
        big = graph.gen_random(10, 0, seed=0)
        path = tmp_path / "big.json"
        path.write_text(graph.to_json(big))
        code, _, err = run_cli(["cert-find", str(path), "--k", "1"])
        assert code == 1 and json.loads(err)["error"] == "limit"
        code, out, _ = run_cli(["cert-find", str(path), "--k", "1", "--max-vertices", "10"])
        assert code == 0 and json.loads(out)["found"] is True


class TestFlowCommands:
    def test_lambda(self, bik3_file):
        code, out, _ = run_cli(["lambda", bik3_file, "u", "v"])
        assert code == 0 and json.loads(out)["lambda"] == 2

    def test_menger(self, bik3_file):
        code, out, _ = run_cli(["menger", bik3_file, "u", "v"])
        assert code == 0
        payload = json.loads(out)
        assert payload["lambda"] == 2 and len(payload["paths"]) == 2 and len(payload["cut"]) == 2
        assert payload["w_side"] == ["u"]

    def test_flip_sep(self, bik3_file):
        code, out, _ = run_cli(["flip-sep", bik3_file, "u", "v"])
        assert code == 0
        payload = json.loads(out)
        assert payload["report"]["separated"] is True
        final = graph.from_json(json.dumps(payload["final"]))
        assert not graph.reachable_vertex(final, "u", "v")

    def test_lambda_same_vertex_domain_error(self, bik3_file):
        code, _, err = run_cli(["lambda", bik3_file, "u", "u"])
        assert code == 1 and json.loads(err)["error"] == "input"


class TestReachCanon:
    def test_reach_reversed_triangle(self, tmp_path, triangle, triangle_file):
        target = tmp_path / "reversed.json"
        target.write_text(graph.to_json(triangle.reorient([0, 1, 2])))
        code, out, _ = run_cli(["reach", triangle_file, str(target)])
        assert code == 0
        payload = json.loads(out)
        assert payload["reachable"] is True and len(payload["sequence"]) == 1

    def test_reach_unreachable(self, tmp_path, double_up):
        base = tmp_path / "base.json"
        base.write_text(graph.to_json(double_up))
        target = tmp_path / "target.json"
        target.write_text(graph.to_json(double_up.reorient([0, 1])))
        code, out, _ = run_cli(["reach", str(base), str(target)])
        assert code == 0 and json.loads(out) == {"reachable": False, "sequence": None}

    def test_canon(self, tmp_path, triangle_file):
        seq = tmp_path / "seq.json"
        seq.write_text("[[0, 1, 2], [2, 1, 0]]\n")
        code, out, _ = run_cli(["canon", triangle_file, str(seq)])
        assert code == 0 and json.loads(out) == []

    def test_canon_invalid_sequence(self, tmp_path, triangle_file):
        seq = tmp_path / "seq.json"
        seq.write_text("[[0, 1, 2], [0, 1, 2]]\n")
        code, _, err = run_cli(["canon", triangle_file, str(seq)])
        assert code == 1
        assert "index 1" in json.loads(err)["message"]


class TestFlipPathTwoChainOracle:
    def test_flip_path(self, tmp_path, two_cycle):
        gpath = tmp_path / "g.json"
        gpath.write_text(graph.to_json(two_cycle))
        spec = tmp_path / "spec.json"
        spec.write_text(json.dumps({"path": [0], "returns": [[1]]}))
        code, out, _ = run_cli(["flip-path", str(gpath), str(spec)])
        assert code == 0
        payload = json.loads(out)
        assert payload["touch_counts"] == {"0": 1, "1": 1}
        assert payload["net_reversed"] == [0, 1]

    def test_two_chain(self, triangle_file):
        code, out, _ = run_cli(["two-chain", triangle_file])
        assert code == 0
        payload = json.loads(out)
        assert payload["order"] == ["a", "b", "c"]
        assert len(payload["sequence"]) == 1

    def test_two_chain_rejects_non_tournament(self, bik3_file):
        code, _, err = run_cli(["two-chain", bik3_file])
        assert code == 1 and json.loads(err)["error"] == "input"

    def test_oracle(self, triangle_file):
        code, out, _ = run_cli(["oracle", triangle_file])
        assert code == 0
        payload = json.loads(out)
        assert payload["classes"][0] == [0, 7]
        assert len(payload["classes"]) == 7


class TestBatchVerify:
    def test_clean_suite(self):
        code, out, err = run_cli(["batch-verify", "--suite", "lambda-invariance", "--n", "10", "--seed", "1"])
        assert code == 0
        payload = json.loads(out)
        assert payload["instances"] == 10 and payload["failure_count"] == 0
        assert "wall_time_s" in json.loads(err.splitlines()[-1])

    def test_mutant_negative_control(self):
        code, out, _ = run_cli(["batch-verify", "--suite", "menger", "--n", "10", "--seed", "1", "--mutate"])
        assert code == 0
        payload = json.loads(out)
        assert payload["failure_count"] > 0
        assert all("instance" in f and "reason" in f for f in payload["failures"])

    def test_unknown_suite_is_usage_error(self):
        code, _, err = run_cli(["batch-verify", "--suite", "wat"])
        assert code == 2 and json.loads(err)["error"] == "usage"


class TestContract:
    def test_unknown_command_usage_error(self):
        code, _, err = run_cli(["frobnicate"])
        assert code == 2 and json.loads(err)["error"] == "usage"

    def test_malformed_json_reports_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"vertices": ["a"],\n  "edges": oops}')
        code, _, err = run_cli(["chi", str(path)])
        assert code == 1
        payload = json.loads(err)
        assert payload["error"] == "parse" and payload["line"] == 2

    def test_determinism_across_commands(self, bik3_file, triangle_file):
        commands = [
            ["gen", "--ladder", "5"],
            ["gen", "--random", "7", "12", "--seed", "123"],
            ["gen", "--tournament", "6", "--seed", "42"],
            ["chi", bik3_file],
            ["reduce", bik3_file, "--order", "u,v,w"],
            ["cert-find", triangle_file, "--k", "2"],
            ["menger", bik3_file, "u", "v"],
            ["oracle", triangle_file],
            ["two-chain", triangle_file],
            ["batch-verify", "--suite", "canonicalize", "--n", "5", "--seed", "7"],
        ]
        for cmd in commands:
            first = run_cli(cmd)
            second = run_cli(cmd)
            assert first[0] == second[0] == 0, cmd
            assert first[1] == second[1], cmd

    def test_limits_env_var(self, triangle_file, bik3_file):
        proc = subprocess.run(
            [sys.executable, "-m", "digrev", "backend"],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "DIGREV_LIMITS": "chi_vertices=5,cert_vertices=4"},
        )
        assert proc.returncode == 0
        payload = json.loads(proc.stdout)
        assert payload["limits"]["chi_vertices"] == 5
        assert payload["limits"]["cert_vertices"] == 4

    def test_limits_env_var_gates_operations(self, triangle_file):
        env = {"PATH": "/usr/bin:/bin", "DIGREV_LIMITS": "chi_vertices=2"}
        proc = subprocess.run(
            [sys.executable, "-m", "digrev", "chi", triangle_file],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.returncode == 1
        assert json.loads(proc.stderr)["error"] == "limit"
        # the per-command flag overrides the env cap
        proc = subprocess.run(
            [sys.executable, "-m", "digrev", "chi", triangle_file, "--max-vertices", "3"],
            capture_output=True,
            text=True,
            env=env,
        )
        assert proc.returncode == 0 and json.loads(proc.stdout)["chi"] == 2

    def test_bad_limits_env_var_rejected(self, triangle_file):
        proc = subprocess.run(
            [sys.executable, "-m", "digrev", "chi", triangle_file],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "DIGREV_LIMITS": "nonsense=3"},
        )
        assert proc.returncode == 1
        assert json.loads(proc.stderr)["error"] == "input"

    def test_in_process_main_matches_subprocess(self, capsys, triangle_file):
        assert main(["chi", triangle_file]) == 0
        captured = capsys.readouterr()
        _, out, _ = run_cli(["chi", triangle_file])
        assert captured.out == out
