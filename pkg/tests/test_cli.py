import io
import subprocess
import sys

import pytest

from aprsat.cli import EXIT_LOWER_BOUND, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, main
from aprsat.drivers import parse_certificate, verify_certificate
from aprsat.satcore import Status, parse_dimacs, parse_map_comments, solve


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_gen_gt333(tmp_path):
    path = tmp_path / "f.cnf"
    code, out = run("gen", "--family", "gt", "--tuple", "3,3,3", "--n", "5", "--translation", "weak-nested", "--out", str(path))
    assert code == EXIT_OK
    assert out.strip() == "10 6"
    text = path.read_text()
    cnf = parse_dimacs(text)
    assert (cnf.num_vars, len(cnf.clauses)) == (10, 6)
    assert parse_map_comments(text)[0] == (2, 1, 1)


def test_gen_output_is_satisfiable(tmp_path):
    path = tmp_path / "f.cnf"
    run("gen", "--family", "gt", "--tuple", "2,3", "--n", "4", "--translation", "weak-direct", "--out", str(path))
    assert solve(parse_dimacs(path.read_text())).status is Status.SAT


def test_gen_is_byte_identical(tmp_path):
    args = ["gen", "--family", "vdw", "--tuple", "3,4", "--n", "17", "--translation", "simple-logarithmic", "--out"]
    a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
    run(*args, str(a))
    run(*args, str(b))
    assert a.read_bytes() == b.read_bytes()
    fresh = subprocess.run([sys.executable, "-m", "aprsat", *args[:-1]], capture_output=True, check=True)
    assert fresh.stdout == a.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--family", "gt", "--tuple", "3,2", "--n", "4"],
        ["gen", "--family", "gt", "--tuple", "3,3", "--n", "4", "--translation", "fancy"],
        ["gen", "--family", "xyz", "--tuple", "3,3", "--n", "4"],
        ["number", "--family", "vdw", "--tuple", "3,3"],
        ["gen", "--family", "gt", "--tuple", "3,3", "--n", "4", "--bogus"],
        ["solve", "/nonexistent/file.cnf"],
        [],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_solve_command(tmp_path):
    path = tmp_path / "f.cnf"
    path.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    code, out = run("solve", str(path))
    assert code == EXIT_OK
    assert "s SATISFIABLE" in out and "v -1 2" in out
    path.write_text("p cnf 1 2\n1 0\n-1 0\n")
    assert "s UNSATISFIABLE" in run("solve", str(path))[1]


def test_number_and_verify(tmp_path):
    cert = tmp_path / "vdw33.cert"
    code, out = run("number", "--family", "vdw", "--tuple", "3,3", "--translation", "weak-nested", "--nmax", "20", "--certificate", str(cert))
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "exact 9"
    assert verify_certificate("vdw", (3, 3), 8, parse_certificate(cert.read_text()))
    code, out = run("verify", "--family", "vdw", "--tuple", "3,3", "--n", "8", "--certificate", str(cert))
    assert code == EXIT_OK and out.strip() == "valid"


def test_number_gt33(tmp_path):
    code, out = run("number", "--family", "gt", "--tuple", "3,3", "--nmax", "40", "--quiet", "--certificate", str(tmp_path / "c"))
    assert code == EXIT_OK and out.splitlines()[-1] == "exact 23"


def test_number_lower_bound_and_unknown(tmp_path):
    code, out = run("number", "--family", "vdw", "--tuple", "3,3", "--nmax", "6", "--certificate", str(tmp_path / "c"))
    assert code == EXIT_LOWER_BOUND and out.splitlines()[-1] == "lower-bound > 6"
    code, _ = run("number", "--family", "vdw", "--tuple", "3,3,3", "--nmax", "30", "--conflicts", "1", "--certificate", str(tmp_path / "d"))
    assert code == EXIT_UNKNOWN


def test_number_with_external_cli_solver(tmp_path):
    ext = f"{sys.executable} -m aprsat solve"
    code, out = run("number", "--family", "vdw", "--tuple", "3,3", "--nmax", "20", "--external", ext, "--certificate", str(tmp_path / "c"))
    assert code == EXIT_OK and out.splitlines()[-1] == "exact 9"


def test_verify_rejects_bad_certificate(tmp_path):
    cert = tmp_path / "bad.cert"
    cert.write_text("1: 1 2 3\n2: 4\n")
    assert run("verify", "--family", "vdw", "--tuple", "3,3", "--n", "4", "--certificate", str(cert))[0] == 1
    cert.write_text("1: 1 2\n")
    assert run("verify", "--family", "vdw", "--tuple", "3,3", "--n", "4", "--certificate", str(cert))[0] == 1
    assert run("verify", "--family", "vdw", "--tuple", "3,3", "--n", "4", "--certificate", str(tmp_path / "missing"))[0] == EXIT_USAGE


def test_transversal_command():
    code, out = run("transversal", "--family", "gt", "--k", "3", "--nmax", "23")
    assert code == EXIT_OK
    assert "thresholds 4 7 9 13 14 16 18 21 22 23" in out.splitlines()


def test_estimate_command(tmp_path):
    code, out = run("estimate", "--k", "3", "--order", "2", "--at", "2000", "--exact")
    assert code == EXIT_OK
    n, est, exact, rel = out.splitlines()[-1].split()
    assert n == "2000" and float(rel) < 0.10
    samples = tmp_path / "s.txt"
    samples.write_text("500 7917\n1000 28263\n1500 60220\n2000 103438\n")
    code, out = run("estimate", "--k", "3", "--order", "1", "--samples", str(samples), "--at", "1200")
    assert code == EXIT_OK and out.splitlines()[-1].startswith("1200 ")
