import io
import json
import subprocess
import sys
from fractions import Fraction


from singulex.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--format", "json")
    assert code == 0
    return json.loads(out)


class TestGolden:
    def test_vfilt(self):
        assert run_json("vfilt", "--m", "2,3", "--a", "0,3") == {"alpha_vtilde": "13/6", "alpha_br": "11/6", "gap": "1/3"}

    def test_applicable_text(self):
        code, out, _ = run("applicable", "--n", "7", "--m", "2", "--k", "2")
        assert code == 0
        assert out == "du_bois: true\nrational: false\n"

    def test_spectrum(self):
        assert run_json("spectrum", "--m", "2,3") == [{"value": "5/6", "mult": 1}, {"value": "7/6", "mult": 1}]

    def test_applicable_range(self):
        r = run_json("applicable", "--n", "7", "--m", "2")
        assert r["du_bois_k"] == [0, 1, 2] and r["rational_k"] == [0, 1]

    def test_blowup_chain(self):
        chain = run_json("blowup", "--poly", "x1^2+x2^2+s*x3^4", "--vars", "x1,x2,x3,s",
                         "--chart", "x1,x2,x3", "--chart", "y1,y2,y3:z1,z2,z3")
        assert [step["mult"] for step in chain] == [2, 2]
        assert chain[1]["proper"] == "z1^2 + z2^2 + s"

    def test_ideal_membership(self):
        assert run_json("ideal", "--m", "2,3", "--g", "y")["member"] is False

    def test_deform_points(self):
        r = run_json("deform", "--f", "x^2*y", "--g", "y", "--points", '[["0","3"],["0","0"]]')
        assert r["passed"] and r["checked"] == 2 and r["singular_on_both_sides"] == 1


class TestExitCodes:
    def test_domain_error_json(self):
        code, out, _ = run("vfilt", "--m", "2,3", "--a", "1,0", "--format", "json")
        assert code == 1
        assert json.loads(out)["error"] == "NONVANISHING_VIOLATED"

    def test_domain_error_text(self):
        code, _, err = run("spectrum", "--m", "1")
        assert code == 1 and "INVALID_PARAMETER" in err

    def test_syntax_error(self):
        code, _, err = run("blowup", "--poly", "x+", "--chart", "x")
        assert code == 1 and "SYNTAX_ERROR" in err and "byte 2" in err

    def test_usage_unknown_flag(self, capsys):
        code, _, _ = run("vfilt", "--m", "2", "--a", "0", "--bogus", "1")
        assert code == 2
        assert "--bogus" in capsys.readouterr().err

    def test_usage_missing_flag(self, capsys):
        assert run("vfilt", "--m", "2,3")[0] == 2
        assert "--a" in capsys.readouterr().err

    def test_usage_bad_list(self):
        code, _, err = run("vfilt", "--m", "2,x", "--a", "0,0")
        assert code == 2 and "--m" in err

    def test_no_subcommand(self):
        assert run()[0] == 2

    def test_term_cap_env(self, monkeypatch):
        monkeypatch.setenv("SINGULEX_TERM_CAP", "10")
        code, out, _ = run("spectrum", "--m", "5,5,5", "--format", "json")
        assert code == 1 and json.loads(out)["error"] == "TERM_CAP_EXCEEDED"


class TestAgreement:
    def test_text_and_json_agree(self):
        code, text, _ = run("vfilt", "--m", "2,5,3", "--a", "0,3,4")
        parsed = dict(line.split(": ") for line in text.strip().splitlines())
        assert parsed == run_json("vfilt", "--m", "2,5,3", "--a", "0,3,4")

    def test_spectrum_text_matches_json(self):
        _, text, _ = run("spectrum", "--m", "3,4")
        rows = [line.split("\t") for line in text.strip().splitlines()]
        assert [{"value": v, "mult": int(k)} for v, k in rows] == run_json("spectrum", "--m", "3,4")

    def test_rationals_are_strings(self):
        r = run_json("spectrum", "--m", "2,3,4", "--details")
        for entry in r["spectrum"]:
            assert isinstance(entry["value"], str)
            Fraction(entry["value"])
        assert isinstance(r["minimal_exponent"], str)

    def test_minexp_kinds(self):
        assert run_json("minexp", "--m", "4,4,4,4")["minimal_exponent"] == "1"
        code, out, _ = run("minexp", "--kind", "slice", "--n", "7", "--m", "2")
        assert code == 0 and "3" in out


class TestSweep:
    def test_deterministic(self):
        first = run("sweep", "--name", "blowup-ordinary", "--format", "json")
        second = run("sweep", "--name", "blowup-ordinary", "--format", "json")
        assert first == second and first[0] == 0
        assert json.loads(first[1])["passed"]

    def test_workers_do_not_change_output(self):
        one = run("sweep", "--name", "spectrum", "--format", "json")
        four = run("sweep", "--name", "spectrum", "--format", "json", "--workers", "4")
        assert one == four


def test_golden_example_replay():
    code, out, _ = run("--paper-examples")
    assert code == 0
    assert out.count("PASS") >= 17 and "FAIL" not in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "singulex", "classify", "--alpha", "5/6", "--k", "0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "du_bois: false" in proc.stdout
