# Standard Library Imports
import json

# Third Party Imports
import pytest

# Module Imports
from mixed_abelian_cayley.cli import main
from mixed_abelian_cayley.constants import (
    EXIT_INVALID_INPUT,
    EXIT_SUCCESS,
    EXIT_VERIFICATION_FAILURE,
)
from mixed_abelian_cayley.families.baseDegree4 import BaseDegree4
from mixed_abelian_cayley.families.diamond import Diamond
from mixed_abelian_cayley.verify import Criterion, format_results, run_criteria


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv) -> tuple[int, dict]:
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


class TestBound:
    @pytest.mark.parametrize(
        "argv, expected",
        [
            (("bound", "general", "r=2 z=0 k=5"), "11"),
            (("bound", "mac", "z_w=2 k=7"), "36"),
            (("bound", "mac", "r_a=1 z_w=2 k=7"), "64"),
            (("bound", "improved", "r_a=1 z[3]=2 k=7"), "32"),
            (("bound", "improved", "r_a=1 z[3]=2 k=7", "--convention", "published"), "34"),
            (("bound", "order5", "r_a=1 r[2]=1 k=3"), "10"),
        ],
    )
    def test_values(self, capsys, argv, expected):
        code, out = run(capsys, *argv)
        assert code == EXIT_SUCCESS
        assert out.splitlines()[0] == expected

    def test_explain(self, capsys):
        code, record = run_json(capsys, "bound", "improved", "r_a=1 z[3]=2 k=7", "--explain")
        assert code == EXIT_SUCCESS
        assert record["bound"] == 32
        assert sum(term["value"] for term in record["terms"]) == 32

    def test_improved_names_its_convention(self, capsys):
        _, out = run(capsys, "bound", "improved", "r_a=1 z[3]=2 k=7")
        assert out.splitlines()[1] == "convention: EXACT"
        _, out = run(capsys, "bound", "improved", "r_a=1 z[3]=2 k=7", "--convention", "published")
        assert out.splitlines() == ["34", "convention: PUBLISHED"]

    def test_general_layers(self, capsys):
        _, record = run_json(capsys, "bound", "general", "r=2 z=1 k=2")
        assert record["layers"] == [1, 3, 7]
        assert record["bound"] == 11

    @pytest.mark.parametrize(
        "argv",
        [
            ("bound", "mac", "r_a=1"),
            ("bound", "improved", "z[1]=1 k=3"),
            ("bound", "order5", "z[3]=1 k=5"),
            ("bound", "general", "r=0 z=0 k=2"),
        ],
    )
    def test_invalid_profiles(self, capsys, argv):
        assert run(capsys, *argv)[0] == EXIT_INVALID_INPUT


class TestLattice:
    def test_worked_example(self, capsys, write_text):
        path = write_text("worked.txt", "3\n3 -2 0\n0 4 1\n0 0 2\n")
        code, record = run_json(capsys, "snf", str(path))
        assert code == EXIT_SUCCESS
        assert record["diagonal"] == [1, 1, 24]
        assert record["group"] == "Z24"

    def test_identity(self, capsys, write_text):
        path = write_text("identity.txt", "2\n1 0\n0 1\n")
        _, record = run_json(capsys, "snf", str(path))
        assert record["S"] == [[1, 0], [0, 1]]
        assert record["group"] == "Z1"

    def test_two_factor(self, capsys, write_text):
        path = write_text("diag.txt", "2\n6 0\n0 2\n")
        code, out = run(capsys, "snf", str(path))
        assert code == EXIT_SUCCESS
        assert "group: Z2xZ6" in out

    def test_singular_has_no_group(self, capsys, write_text):
        path = write_text("singular.txt", "2\n1 2\n2 4\n")
        code, record = run_json(capsys, "snf", str(path))
        assert code == EXIT_SUCCESS
        assert record["diagonal"] == [1, 0]
        assert "group" not in record

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "snf", str(tmp_path / "absent.txt"))[0] == EXIT_INVALID_INPUT

    def test_malformed_file(self, capsys, write_text):
        path = write_text("bad.txt", "2\n1 0\n")
        assert run(capsys, "snf", str(path))[0] == EXIT_INVALID_INPUT

    def test_groups(self, capsys):
        code, out = run(capsys, "group", "36")
        assert code == EXIT_SUCCESS
        assert out.split() == ["Z2xZ18", "Z3xZ12", "Z6xZ6", "Z36"]


class TestGraphs:
    def test_family_then_certify(self, capsys, tmp_path):
        path = tmp_path / "t4.graph"
        code, record = run_json(capsys, "family", "--name", "t", "--k", "4", "--out", str(path))
        assert code == EXIT_SUCCESS
        assert record["measured_k"] == 4
        code, record = run_json(capsys, "certify", str(path))
        assert code == EXIT_SUCCESS
        assert (record["diameter"], record["N"]) == (4, 32)
        assert (record["r"], record["z"]) == (3, 1)
        assert record["N"] <= record["improved_bound"]

    def test_family_prints_description(self, capsys):
        code, out = run(capsys, "family", "--name", "diamond", "--k", "3")
        assert code == EXIT_SUCCESS
        assert out.startswith("group Z36\ninv 18\npair 1\npair 5\n")

    def test_one_vertex(self, capsys, write_text):
        path = write_text("one.graph", "group Z1\n")
        code, record = run_json(capsys, "certify", str(path))
        assert code == EXIT_SUCCESS
        assert record["diameter"] == 0
        assert record["distance_profile"] == [1]

    def test_dot(self, capsys, write_text, tmp_path):
        path = write_text("c10.graph", "group Z10\ninv 5\npair 1\ndir 2\n")
        dot = tmp_path / "c10.dot"
        assert run(capsys, "certify", str(path), "--dot", str(dot))[0] == EXIT_SUCCESS
        assert dot.read_text().startswith("digraph")

    @pytest.mark.parametrize(
        "text",
        ["group Z10\npair 2\n", "group Z10\ninv 3\n", "pair 1\n"],
    )
    def test_invalid_graphs(self, capsys, write_text, text):
        path = write_text("bad.graph", text)
        assert run(capsys, "certify", str(path))[0] == EXIT_INVALID_INPUT

    def test_unknown_family(self, capsys):
        assert run(capsys, "family", "--name", "petersen", "--k", "3")[0] == EXIT_INVALID_INPUT
        assert run(capsys, "family", "--name", "diamond", "--k", "1")[0] == EXIT_INVALID_INPUT

    def test_failing_family(self, capsys, monkeypatch):
        monkeypatch.setattr(Diamond, "build", BaseDegree4.build)
        code, record = run_json(capsys, "family", "--name", "diamond", "--k", "3")
        assert code == EXIT_VERIFICATION_FAILURE
        assert record["N"] == 25


class TestSearch:
    def test_desk_scale(self, capsys):
        code, record = run_json(
            capsys, "search", "--r-alpha", "1", "--r-omega", "2", "--z-omega", "0", "--k", "2"
        )
        assert code == EXIT_SUCCESS
        assert record["best_N"] == 16
        assert len(record["witnesses"]) == 1

    def test_report(self, capsys):
        code, out = run(capsys, "search", "--r-alpha", "1", "--r-omega", "1", "--z-omega", "1", "--k", "2")
        assert code == EXIT_SUCCESS
        assert out.startswith("Search r_a=1 r_w=1 z_w=1 k=2")

    def test_cap(self, capsys):
        code, _ = run(capsys, "search", "--r-omega", "2", "--k", "3", "--cap", "10")
        assert code == EXIT_INVALID_INPUT


class TestVerifyAll:
    def test_filter(self, capsys):
        code, record = run_json(capsys, "verify-all", "--filter", "lattice")
        assert code == EXIT_SUCCESS
        assert [result["name"] for result in record["results"]] == ["lattice.worked-example"]

    def test_table(self, capsys):
        code, out = run(capsys, "verify-all", "--filter", "bounds.table")
        assert code == EXIT_SUCCESS
        assert "PASS" in out

    def test_fault_injection(self, capsys, monkeypatch):
        monkeypatch.setattr(Diamond, "build", BaseDegree4.build)
        code, out = run(capsys, "verify-all", "--filter", "families")
        assert code == EXIT_VERIFICATION_FAILURE
        assert "FAIL" in out
        assert "diamond@2" in out

    def test_value_error_is_a_failed_row(self, capsys, monkeypatch):
        def broken(M):
            raise ValueError("bad matrix")

        monkeypatch.setattr("mixed_abelian_cayley.verify.smith_normal_form", broken)
        code, out = run(capsys, "verify-all", "--filter", "lattice")
        assert code == EXIT_VERIFICATION_FAILURE
        assert "FAIL" in out
        assert "ValueError: bad matrix" in out


class TestRunCriteria:
    @classmethod
    def setup_class(cls):
        cls.criteria = (
            Criterion("alpha.one", lambda: (True, "ok")),
            Criterion("alpha.two", lambda: (False, "broken")),
            Criterion("beta.slow", lambda: (True, "ok"), slow=True),
        )

    def test_prefix(self):
        results = run_criteria("alpha", criteria=self.criteria)
        assert [(result.name, result.passed) for result in results] == [
            ("alpha.one", True),
            ("alpha.two", False),
        ]

    def test_slow_skipped_by_default(self):
        assert run_criteria("beta", criteria=self.criteria) == []
        assert len(run_criteria("beta", include_slow=True, criteria=self.criteria)) == 1

    def test_domain_errors_fail_the_criterion(self):
        def raises():
            Diamond.build(1)

        (result,) = run_criteria(criteria=(Criterion("gamma", raises),))
        assert not result.passed
        assert "FamilyException" in result.detail

    def test_value_errors_fail_the_criterion(self):
        def raises():
            raise ValueError("malformed input")

        results = run_criteria(criteria=(Criterion("delta", raises), *self.criteria[:1]))
        assert [(result.name, result.passed) for result in results] == [("delta", False), ("alpha.one", True)]
        assert results[0].detail == "ValueError: malformed input"

    def test_format(self):
        lines = format_results(run_criteria(criteria=self.criteria))
        assert lines[0].startswith("alpha.one  PASS")
        assert lines[1].startswith("alpha.two  FAIL")
        assert format_results([]) == ()
