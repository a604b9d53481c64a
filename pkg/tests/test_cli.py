import json
import subprocess
import sys

from stagedtrees import fixtures
from stagedtrees.cli import main

EIGHT = fixtures.text("eight_atoms.poly.txt").strip()
SEVEN = fixtures.text("seven_atoms.poly.txt").strip()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInterpolate:
    def test_tree_fixture(self, capsys):
        code, out, _ = run(capsys, "interpolate", fixtures.text("eight_atoms.tree.json"))
        assert code == 0
        assert out.strip() == str(fixtures.polynomial("eight_atoms"))

    def test_single_vertex(self, capsys):
        code, out, _ = run(capsys, "interpolate", '{"root": {"edges": []}}')
        assert code == 0
        assert out.strip() == "1"

    def test_admissions_tree_has_24_terms(self, capsys):
        code, out, _ = run(
            capsys, "interpolate", fixtures.text("hospital_admissions.tree.json")
        )
        assert code == 0
        assert out.strip().count("+") == 23

    def test_network_weights(self, capsys, tmp_path):
        weights = tmp_path / "weights.json"
        weights.write_text(json.dumps({"a/x": 0.25, "a/y": 0.75, "b": 1}))
        tree = '{"root": {"edges": [{"label": "a", "child": {"edges": [{"label": "x", "child": {"edges": []}}, {"label": "y", "child": {"edges": []}}]}}, {"label": "b", "child": {"edges": []}}]}}'
        code, out, _ = run(capsys, "interpolate", tree, "--network", str(weights))
        assert code == 0
        assert out.strip() == "b + 0.25*a*x + 0.75*a*y"

    def test_malformed_tree_exits_2(self, capsys):
        code, _, err = run(capsys, "interpolate", '{"root": {}}')
        assert code == 2
        assert err


class TestDecompose:
    def test_eight_atoms(self, capsys):
        code, out, _ = run(capsys, "decompose", EIGHT)
        assert code == 0
        assert json.loads(out) == fixtures.expected_json("eight_atoms.primes.json")

    def test_single_product(self, capsys):
        code, out, _ = run(capsys, "decompose", "x*y")
        assert code == 0
        assert json.loads(out) == [["x"], ["y"]]

    def test_oracle_backend_agrees(self, capsys):
        code, out, _ = run(capsys, "decompose", EIGHT)
        code2, out2, _ = run(capsys, "decompose", EIGHT, "--oracle")
        assert code == code2 == 0
        assert out == out2

    def test_non_square_free_exits_3(self, capsys):
        code, _, err = run(capsys, "decompose", "x*x + y")
        assert code == 3
        assert err


class TestClass:
    def test_eight_atoms_members(self, capsys):
        code, out, _ = run(capsys, "class", EIGHT)
        assert code == 0
        members = json.loads(out)
        assert [m["nested"] for m in members] == fixtures.expected_json(
            "eight_atoms.nested.json"
        )
        assert all(m["staged"] for m in members)
        assert all("root" in m["tree"] for m in members)

    def test_count_only(self, capsys):
        code, out, _ = run(capsys, "class", EIGHT, "--count-only")
        assert code == 0
        assert out.strip() == "2"

    def test_empty_class_is_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, "class", fixtures.text("screen_pass_no_tree.poly.txt").strip(),
            "--count-only",
        )
        assert code == 0
        assert out.strip() == "0"

    def test_include_unstaged(self, capsys):
        code, out, _ = run(capsys, "class", SEVEN, "--include-unstaged")
        assert code == 0
        members = json.loads(out)
        staged = [m["nested"] for m in members if m["staged"]]
        unstaged = [m["nested"] for m in members if not m["staged"]]
        assert staged == fixtures.expected_json("seven_atoms.nested.json")
        extra = fixtures.text("seven_atoms.unstaged.txt").strip()
        assert unstaged.count(extra) == 1

    def test_dot_dir(self, capsys, tmp_path):
        out_dir = tmp_path / "dots"
        code, out, _ = run(capsys, "class", EIGHT, "--dot-dir", str(out_dir))
        assert code == 0
        assert out.strip() == "2"
        files = sorted(p.name for p in out_dir.iterdir())
        assert files == ["tree_0000.dot", "tree_0001.dot"]
        assert (out_dir / "tree_0000.dot").read_text().startswith("digraph")

    def test_jobs_matches_sequential(self, capsys):
        _, sequential, _ = run(capsys, "class", EIGHT)
        _, parallel, _ = run(capsys, "class", EIGHT, "--jobs", "4")
        assert sequential == parallel

    def test_coefficient_two_exits_3(self, capsys):
        code, _, err = run(capsys, "class", "x*y + x*y + z")
        assert code == 3
        assert err

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, "class", SEVEN, "--include-unstaged")
        _, second, _ = run(capsys, "class", SEVEN, "--include-unstaged")
        assert first == second


class TestCheck:
    def test_report_only_always_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, "check", fixtures.text("screen_pass_no_tree.poly.txt").strip()
        )
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert len(report["conditions"]) == 4

    def test_failing_polynomial_still_exit_zero(self, capsys):
        code, out, _ = run(capsys, "check", "x + x*y")
        assert code == 0
        assert json.loads(out)["passed"] is False


class TestIncidence:
    def test_golden_csv(self, capsys):
        code, out, _ = run(capsys, "incidence", EIGHT)
        assert code == 0
        assert out == fixtures.text("eight_atoms.incidence.csv")

    def test_subtree_flag(self, capsys):
        code, out, _ = run(capsys, "incidence", EIGHT, "--subtree", "p1")
        assert code == 0
        assert out.splitlines()[0] == ",q1,q2,q3"

    def test_general_monomials_allowed(self, capsys):
        code, out, _ = run(capsys, "incidence", "x^2*y + x*z")
        assert code == 0
        assert "2" in out


class TestComplex:
    def test_saturated_instance(self, capsys):
        code, out, _ = run(capsys, "complex", "a + b*c + b*d")
        assert code == 0
        report = json.loads(out)
        assert report["saturated"] is True
        assert len(report["components"]) == 2

    def test_eight_atoms_connected(self, capsys):
        code, out, _ = run(capsys, "complex", EIGHT)
        assert code == 0
        report = json.loads(out)
        assert report["saturated"] is False
        assert len(report["components"]) == 1

    def test_dot_flag(self, capsys):
        code, out, _ = run(capsys, "complex", "a + b*c + b*d", "--dot")
        assert code == 0
        assert out.startswith("graph complex {")
        assert "b -- c;" in out


class TestInputHandling:
    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text(EIGHT)
        code, out, _ = run(capsys, "class", "--file", str(path), "--count-only")
        assert code == 0
        assert out.strip() == "2"

    def test_missing_input_exits_2(self, capsys):
        code, _, err = run(capsys, "decompose")
        assert code == 2
        assert err

    def test_both_inputs_exit_2(self, capsys, tmp_path):
        path = tmp_path / "poly.txt"
        path.write_text(EIGHT)
        code, _, _ = run(capsys, "decompose", EIGHT, "--file", str(path))
        assert code == 2

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run(capsys, "decompose", "--file", "/nonexistent/poly.txt")
        assert code == 2

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "stagedtrees", "class", EIGHT, "--count-only"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "2"

    def test_byte_identical_across_hash_seeds(self):
        import os

        outputs = set()
        for seed in ("0", "31337"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run(
                [sys.executable, "-m", "stagedtrees", "class", SEVEN,
                 "--include-unstaged"],
                capture_output=True,
                text=True,
                env=env,
            )
            assert proc.returncode == 0
            outputs.add(proc.stdout)
        assert len(outputs) == 1
