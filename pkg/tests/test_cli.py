"""Command-line interface: subcommands, formats, budgets, exit codes."""
import json

import pytest

from glnq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestWitness:
    def test_q2(self, capsys):
        code, out, _ = run(capsys, "witness", "--q", "2")
        assert code == 0
        assert "3/2" in out and "irrational" in out

    def test_q3_json(self, capsys):
        code, out, _ = run(capsys, "witness", "--q", "3", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["value_squared"] == "4/3"
        assert data["verdict"] == "irrational"


class TestOrbits:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "orbits", "--q", "2", "--n", "2")
        assert code == 0
        assert "6 adjoint orbits" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, "orbits", "--q", "3", "--n", "2",
                           "--format", "json")
        data = json.loads(out)
        assert data["n"] == 2 and len(data["orbits"]) == 12

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "orbits.json"
        code, out, _ = run(capsys, "orbits", "--q", "2", "--n", "1",
                           "--format", "json", "--output", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["n"] == 1

    def test_cache_dir(self, capsys, tmp_path):
        cache = tmp_path / "cache"
        code, _, _ = run(capsys, "orbits", "--q", "2", "--n", "2",
                         "--cache-dir", str(cache))
        assert code == 0
        assert list(cache.glob("orbits-q2-n2-*.json"))


class TestSteinberg:
    def test_constituents_line(self, capsys):
        code, out, _ = run(capsys, "steinberg", "--q", "2", "--n", "2")
        assert code == 0
        assert "constituents: 2" in out


class TestFunctionIO:
    @pytest.fixture
    def one1_file(self, tmp_path):
        from glnq.field import fq
        from glnq.invfun import constant_one
        from glnq.orbits import enumerate_orbits
        f = tmp_path / "one1.json"
        f.write_text(json.dumps(
            constant_one(enumerate_orbits(1, fq(2))).to_json()))
        return str(f)

    def test_induce_then_restrict(self, capsys, tmp_path, one1_file):
        prod = tmp_path / "prod.json"
        code, _, _ = run(capsys, "induce", "--q", "2", "--composition", "1+1",
                         "--input", f"{one1_file},{one1_file}",
                         "--format", "json", "--output", str(prod))
        assert code == 0
        code, out, _ = run(capsys, "restrict", "--q", "2",
                           "--composition", "1+1", "--input", str(prod),
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["degrees"] == [1, 1]

    def test_dual_of_constant(self, capsys, tmp_path):
        from glnq.field import fq
        from glnq.invfun import constant_one
        from glnq.orbits import enumerate_orbits
        src = tmp_path / "one2.json"
        src.write_text(json.dumps(
            constant_one(enumerate_orbits(2, fq(2))).to_json()))
        code, out, _ = run(capsys, "dual", "--q", "2", "--n", "2",
                           "--input", str(src), "--format", "json")
        assert code == 0
        data = json.loads(out)
        # the image is the alternating-sum dual of 1, which takes value -1
        # on the orbit of the companion matrix of the irreducible quadratic
        assert data["values"]["1,1,1:1"] == "2:[-1]"

    def test_antipode(self, capsys, one1_file):
        code, out, _ = run(capsys, "antipode", "--q", "2",
                           "--input", one1_file, "--format", "json")
        assert code == 0
        vals = json.loads(out)["values"]
        assert set(vals.values()) == {"2:[-1]"}

    def test_primitives(self, capsys):
        code, out, _ = run(capsys, "primitives", "--q", "2", "--n", "2")
        assert code == 0
        assert "dimension 3" in out


class TestVerify:
    def test_all_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--q", "2", "--max-n", "2")
        assert code == 0
        assert "OK:" in out and "FAIL" not in out

    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "witness", "--q", "3")
        assert code == 0
        assert "psh-nondescending" in out

    def test_mackey_pointwise(self, capsys):
        code, out, _ = run(capsys, "verify", "mackey", "--q", "2",
                           "--n1", "1", "--n2", "1", "--s", "1", "--t", "1",
                           "--all-indicators")
        assert code == 0
        assert out.count("[PASS] mackey") == 4


class TestErrors:
    def test_bad_q(self, capsys):
        code, _, err = run(capsys, "orbits", "--q", "6", "--n", "1")
        assert code == 2 and "budget table" in err

    def test_budget_exceeded(self, capsys):
        code, _, err = run(capsys, "orbits", "--q", "3", "--n", "4")
        assert code == 2 and "--budget" in err

    def test_composition_degree_mismatch(self, capsys, tmp_path):
        from glnq.field import fq
        from glnq.invfun import constant_one
        from glnq.orbits import enumerate_orbits
        src = tmp_path / "one1.json"
        src.write_text(json.dumps(
            constant_one(enumerate_orbits(1, fq(2))).to_json()))
        code, _, err = run(capsys, "restrict", "--q", "2",
                           "--composition", "1+1", "--input", str(src))
        assert code == 2
