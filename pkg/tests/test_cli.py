import io
import json

import pytest

from ooperators import fixtures
from ooperators.cli import FIXTURE_NAMES, fixture_problem, run
from ooperators.deformation import trivial_deformation
from ooperators.operators import Operator
from ooperators.problem import ProblemError, ProblemFile, problem_from_operator
from ooperators.tensor import equal, qarray


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def fixture_dir(tmp_path):
    for name in FIXTURE_NAMES:
        assert run(["fixture", name, "-o", str(tmp_path / f"{name}.json")]) == 0
    return tmp_path


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name, fixture_dir):
    pf = ProblemFile.load(fixture_dir / f"{name}.json")
    again = ProblemFile.loads(pf.dumps())
    assert again == pf == fixture_problem(name)
    assert json.loads(pf.dumps()) == pf.to_json()


def test_problem_file_with_every_section_round_trips():
    pf = fixture_problem("ut2")
    pf.deformation = [pf.operator, pf.operator]
    pf.target_deformation = []
    pf.equivalence = {"element": pf.candidates()["E11"], "phi_tail": [], "psi_tail": []}
    pf.r_matrix_2 = pf.r_matrix
    pf.phi = pf.psi = pf.operator
    pf.task.update(degree_cap=2, order_cap=3, weight=pf.operator[0, 0])
    again = ProblemFile.loads(pf.dumps())
    assert again == pf
    assert equal(again.phi, pf.phi)


def test_explicit_bimodule_round_trip():
    text = json.dumps({
        "algebra": {"dim": 1, "mu": [[0, 0, 0, "1"]]},
        "bimodule": {"kind": "explicit", "dim": 2, "left": [[0, 0, 0, 1], [0, 1, 1, 1]], "right": []},
        "operator": {"matrix": [["0", "0"]]},
    })
    pf = ProblemFile.loads(text)
    assert pf.bimodule.dim == 2
    assert ProblemFile.loads(pf.dumps()) == pf


@pytest.mark.parametrize("data,field", [
    ({}, "algebra"),
    ({"algebra": {"dim": -1}}, "algebra.dim"),
    ({"algebra": {"dim": 2, "mu": [[0, 0, 5, "1"]]}}, "algebra.mu[0]"),
    ({"algebra": {"dim": 2, "mu": [[0, 0, 0, "1.5"]]}}, "algebra.mu[0]"),
    ({"algebra": {"dim": 2}, "operator": {"matrix": [["1"]]}}, "operator.matrix"),
    ({"algebra": {"dim": 2}, "bimodule": {"kind": "weird"}}, "bimodule.kind"),
    ({"algebra": {"dim": 2}, "r_matrix": {"entries": [[1, 0, "1"]]}}, "r_matrix.entries[0]"),
    ({"algebra": {"dim": 2}, "task": {"degree_cap": "3"}}, "task.degree_cap"),
    ({"format_version": 9, "algebra": {"dim": 1}}, "format_version"),
])
def test_parse_errors_name_the_field(data, field):
    with pytest.raises(ProblemError) as info:
        ProblemFile.from_json(data)
    assert info.value.field == field


def test_json_syntax_error_names_the_line():
    with pytest.raises(ProblemError) as info:
        ProblemFile.loads('{\n "algebra": ,\n}')
    assert info.value.field == "line 2"


def test_check_op_examples(fixture_dir):
    code, out = call("check-op", str(fixture_dir / "poly3_R"))
    assert code == 0 and out.startswith("defect = 0")
    code, out = call("check-op", str(fixture_dir / "poly3_D"))
    assert code == 1
    assert "witness (x, x): T(u)T(v) = 1, T(uT(v) + T(u)v) = 2" in out
    code, _ = call("check-op", str(fixture_dir / "proj2_averaging"), "--kind", "left-averaging")
    assert code == 0


def test_check_op_rota_baxter_and_json(fixture_dir):
    code, out = call("check-op", str(fixture_dir / "poly3_R.json"), "--kind", "rota-baxter", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["weight"] == "0"
    code, _ = call("check-op", str(fixture_dir / "poly3_D.json"), "--kind", "rota-baxter")
    assert code == 1


def test_cohomology_command(fixture_dir):
    code, out = call("cohomology", str(fixture_dir / "poly3_R"), "--degree", "0", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["dim_H"] == 3
    code, _ = call("cohomology", str(fixture_dir / "poly3_R"), "--degree", "9")
    assert code == 2
    code, out = call("cohomology", str(fixture_dir / "poly3_D"), "--degree", "1")
    assert code == 1 and "not an O-operator" in out


def test_nijenhuis_command(fixture_dir):
    f = str(fixture_dir / "ut2")
    assert call("nijenhuis", f, "--element", "E11")[0] == 0
    assert call("nijenhuis", f, "--element", "1,0,-1/2")[0] == 0
    assert call("nijenhuis", f, "--element", "nonsense")[0] == 2


def test_deform_commands(fixture_dir):
    f = str(fixture_dir / "poly3_R")
    assert call("deform", "check", f)[0] == 0
    code, out = call("deform", "extend", f, "--order", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and len(rep["terms"]) == 3
    assert call("deform", "extend", f, "--order", "9")[0] == 2
    assert call("deform", "check", str(fixture_dir / "ut2"))[0] == 2


def test_deform_extend_obstructed(tmp_path):
    data = {"algebra": fixture_problem("poly3_R").to_json()["algebra"],
            "operator": {"matrix": [["0"] * 3] * 3},
            "deformation": {"terms": [[["0", "1", "0"], ["0", "0", "2"], ["0", "0", "0"]]]}}
    path = tmp_path / "obs.json"
    path.write_text(json.dumps(data))
    code, out = call("deform", "extend", str(path), "--json")
    rep = json.loads(out)
    assert code == 1 and rep["certificate_verifies"]


def test_deform_equiv(tmp_path):
    op = Operator(fixtures.adjoint_bimodule(fixtures.ut2()), qarray([[0, -1, 0], [0, 0, 0], [0, 0, 0]]))
    a = qarray([-1, 0, 0])
    d = trivial_deformation(op, a)
    pf = problem_from_operator(op, "adjoint", deformation=list(d.terms), target_deformation=[])
    pf.dump(tmp_path / "eq.json")
    path = str(tmp_path / "eq.json")
    assert call("deform", "equiv", path, "--element=-1,0,0", "--order", "1")[0] == 0
    assert call("deform", "equiv", path, "--element=0,0,0", "--order", "1")[0] == 1
    assert call("deform", "equiv", path)[0] == 2


def test_rmatrix_commands(fixture_dir):
    assert call("rmatrix", "check", str(fixture_dir / "abelian2"))[0] == 0
    for seed in range(5):
        assert call("rmatrix", "check", str(fixture_dir / "abelian2"), "--seed", str(seed))[0] == 0
    assert call("rmatrix", "check", str(fixture_dir / "dual2"))[0] == 1
    code, out = call("rmatrix", "coproduct", str(fixture_dir / "ut2"), "--json")
    assert code == 0 and json.loads(out)["coproduct"]["E12"] == "-1 E12(x)E12"
    assert call("rmatrix", "weak-morphism", str(fixture_dir / "ut2"))[0] == 2


def test_rmatrix_weak_morphism(tmp_path):
    pf = fixture_problem("ut2")
    pf.r_matrix_2 = pf.r_matrix
    from ooperators.tensor import identity
    pf.phi = pf.psi = identity(3)
    pf.dump(tmp_path / "w.json")
    assert call("rmatrix", "weak-morphism", str(tmp_path / "w.json"))[0] == 0
    pf.psi = 2 * identity(3)
    pf.dump(tmp_path / "w.json")
    assert call("rmatrix", "weak-morphism", str(tmp_path / "w.json"))[0] == 1


def test_validate(fixture_dir, tmp_path):
    assert call("validate", str(fixture_dir / "ut2"))[0] == 0
    bad = {"algebra": {"dim": 2, "mu": [[0, 0, 1, "1"], [1, 0, 0, "1"]]}}
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    code, out = call("validate", str(tmp_path / "bad.json"), "--json")
    assert code == 1 and json.loads(out)["associativity_violations"][0] == [0, 0, 0]


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["check-op"], ["check-op", "missing-file"], ["fixture", "nope"],
    ["cohomology", "poly3_R"], ["check-op", "poly3_R", "--kind", "nope"],
])
def test_malformed_invocations_exit_2(argv):
    assert run(argv, io.StringIO()) == 2


def test_fixture_names_resolve_without_files():
    assert call("check-op", "fixtures/poly3_R")[0] == 0
    assert call("check-op", "poly3_D")[0] == 1


def test_fixture_to_stdout(capsys):
    assert run(["fixture", "dual2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["name"] == "dual2" and data["r_matrix"]["entries"] == [[0, 1, "1"]]


def test_report_round_trip(fixture_dir):
    for argv in (["check-op", str(fixture_dir / "poly3_D")],
                 ["cohomology", str(fixture_dir / "poly3_R"), "--degree", "1"],
                 ["rmatrix", "coproduct", str(fixture_dir / "ut2")]):
        _, out = call(*argv, "--json")
        rep = json.loads(out)
        assert json.loads(json.dumps(rep)) == rep
        _, again = call(*argv, "--json")
        assert again == out
