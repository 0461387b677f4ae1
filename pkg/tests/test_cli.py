import pytest

from computads.cli import main
from computads.counterexample import build_paper_objects
from computads.formats import format_computad


@pytest.fixture
def dumped(tmp_path):
    assert main(["paper", "--dump", str(tmp_path / "objs"), "-o", str(tmp_path / "report.txt")]) == 0
    return tmp_path / "objs"


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_paper(capsys):
    status, out, _ = run(capsys, "paper")
    assert status == 0
    assert out.rstrip().endswith("VERDICT: coequaliser NOT preserved by - x B")


def test_paper_is_byte_identical(capsys):
    first = run(capsys, "paper")[1]
    second = run(capsys, "paper")[1]
    assert first == second
    assert run(capsys, "paper", "--json")[1] == run(capsys, "paper", "--json")[1]


def test_paper_empty_target(capsys):
    status, out, _ = run(capsys, "paper-empty-target")
    assert status == 0 and "NOT preserved" in out


def test_iso_on_dumps(capsys, dumped):
    status, out, _ = run(capsys, "iso", str(dumped / "P.cpd"), str(dumped / "CxB.cpd"))
    assert (status, out) == (1, "NOT-ISOMORPHIC\n")
    status, out, _ = run(capsys, "iso", str(dumped / "A.cpd"), str(dumped / "B.cpd"))
    assert status == 0 and out.startswith("morphism ")


def test_pairings(capsys):
    status, out, _ = run(capsys, "pairings", "a1*a2", "b1*b2")
    assert status == 0
    assert out == "(a1,b1) * (a2,b2)\n(a1,b2) * (a2,b1)\ncount 2\n"


def test_product_then_validate(capsys, dumped, tmp_path):
    out_file = tmp_path / "out.cpd"
    assert run(capsys, "product", str(dumped / "A.cpd"), str(dumped / "B.cpd"), "-o", str(out_file))[0] == 0
    status, out, _ = run(capsys, "validate", str(out_file))
    assert (status, out) == (0, "OK\n")


def test_product_verbose_has_provenance(capsys, dumped):
    status, out, _ = run(capsys, "product", str(dumped / "A.cpd"), str(dumped / "B.cpd"), "-v")
    assert status == 0
    assert "# provenance" in out and "(f,g)#2 = (f, g)" in out


def test_coeq(capsys, dumped):
    status, out, _ = run(capsys, "coeq", str(dumped / "alpha1.mor"), str(dumped / "alpha2.mor"))
    assert status == 0
    assert "2cells [a1|a2] a3" in out
    assert "3cell f : [a1|a2] * [a1|a2] -> a3" in out


def test_homs(capsys, dumped):
    status, out, _ = run(capsys, "homs", str(dumped / "E.cpd"), str(dumped / "A.cpd"))
    assert status == 0 and out.endswith("count 9\n")


def test_check_verbs(capsys, dumped):
    status, out, _ = run(capsys, "check-product", str(dumped / "A.cpd"), str(dumped / "B.cpd"))
    assert status == 0 and out.splitlines()[-1].startswith("PASS cones=")
    status, out, _ = run(capsys, "check-coeq", str(dumped / "alpha1.mor"), str(dumped / "alpha2.mor"),
                         "--bounds", "2,1,2")
    assert status == 0 and "bounds=(2,1,2)" in out


def test_budget_exhaustion_exits_3(capsys, dumped):
    status, _, err = run(capsys, "homs", str(dumped / "AxB.cpd"), str(dumped / "AxB.cpd"), "--budget", "10")
    assert status == 3 and "budget" in err


def test_budget_from_environment(capsys, dumped, monkeypatch):
    monkeypatch.setenv("COMPUTADS_BUDGET", "3")
    status, _, _ = run(capsys, "homs", str(dumped / "E.cpd"), str(dumped / "A.cpd"))
    assert status == 3


def test_validate_reports_violations(capsys, tmp_path):
    bad = tmp_path / "bad.cpd"
    bad.write_text("computad X\n2cells a\n3cell f : a * zz -> 1\n")
    status, out, _ = run(capsys, "validate", str(bad))
    assert status == 1 and "'zz'" in out


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.cpd"
    bad.write_text("computad X\n2cell a\n")
    status, _, err = run(capsys, "validate", str(bad))
    assert status == 2
    assert f"{bad}:2" in err and "2cells" in err


def test_missing_file_exits_2(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "nope.cpd"))[0] == 2


def test_unknown_verb_rejected_before_io(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", "/nonexistent"])
    assert info.value.code == 2


def test_invalid_input_to_construction_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.cpd"
    bad.write_text("computad X\n2cells a\n3cell f : zz -> 1\n")
    good = tmp_path / "A.cpd"
    good.write_text(format_computad(build_paper_objects().A))
    assert run(capsys, "product", str(bad), str(good))[0] == 2
