import json
import subprocess
import sys

import pytest

from conicbundle.cli import InputError, main, parse_field, read_sections
from conicbundle.cremona import sample_surface
from conicbundle.exactalg import format_poly, poly_parse

from conftest import DATA

SURFACES = sorted(p.name for p in DATA.glob("*.surf"))
HYPERSURFACES = sorted(p.name for p in DATA.glob("*.hyp"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", SURFACES)
def test_analyze_corpus(capsys, name):
    code, out, _ = run(capsys, "analyze", str(DATA / name))
    assert code == 0, out
    assert out.endswith("result: all checks pass\n")


@pytest.mark.parametrize("name", [n for n in SURFACES if not n.startswith("monoidal")])
def test_involutions_corpus(capsys, name):
    code, out, _ = run(capsys, "involutions", str(DATA / name), "--mode", "sampled")
    assert code == 0, out


@pytest.mark.parametrize("name", HYPERSURFACES)
def test_hypersurface_corpus(capsys, name):
    code, out, _ = run(capsys, "hypersurface", str(DATA / name), "--format", "structured")
    assert code == 0, out
    tree = json.loads(out)
    assert tree["passed"] and tree["command"] == "hypersurface"


def test_eckardt_involutions_report(capsys):
    code, out, _ = run(capsys, "involutions", str(DATA / "eckardt-cubic.surf"))
    assert code == 0
    assert "satellite: [t0, t1, -t0, -t1]" in out
    assert "theta_algebraic_degree: 1" in out


def test_eckardt_hypersurface_cross_check(capsys):
    code, out, _ = run(capsys, "hypersurface", str(DATA / "eckardt-cubic.hyp"), "--format", "structured")
    assert code == 0
    hyp = json.loads(out)["results"]
    _, out, _ = run(capsys, "involutions", str(DATA / "eckardt-cubic.surf"), "--format", "structured")
    surf = json.loads(out)["results"]
    assert hyp["satellite"] == surf["satellite"] == "[t0, t1, -t0, -t1]"
    assert hyp["satellite_raw_degree"] == 3


def test_corrupted_theta_fails(capsys):
    code, out, _ = run(capsys, "involutions", str(DATA / "eckardt-cubic.surf"), "--corrupt")
    assert code == 1
    assert "FAIL" in out and "remainder term" in out
    assert out.endswith("result: some check failed\n")


@pytest.mark.parametrize("argv", [
    ("analyze", "eckardt-cubic.surf"),
    ("involutions", "sample-d4-s1.surf", "--mode", "sampled", "--seed", "7"),
    ("hypersurface", "cubic-threefold.hyp"),
])
@pytest.mark.parametrize("fmt", ["human", "structured"])
def test_byte_stable(capsys, argv, fmt):
    args = [argv[0], str(DATA / argv[1]), *argv[2:], "--format", fmt]
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "lattice", "4", "--format", "structured")
    assert "timing" not in json.loads(out)
    _, out, _ = run(capsys, "lattice", "4", "--format", "structured", "--timing")
    assert "total_ms" in json.loads(out)["timing"]


def test_structured_has_digest_and_sorted_checks(capsys):
    _, out, _ = run(capsys, "analyze", str(DATA / "pluecker.surf"), "--format", "structured")
    tree = json.loads(out)
    assert tree["input_digest"].startswith("sha256:")
    names = [c["name"] for c in tree["checks"]]
    assert names == sorted(names)
    assert all(set(c) == {"name", "status", "certifies", "witness"} for c in tree["checks"])


@pytest.mark.parametrize("d", [3, 4, 9])
def test_lattice_command(capsys, d):
    code, out, _ = run(capsys, "lattice", str(d), "--format", "structured")
    assert code == 0
    assert json.loads(out)["passed"]


def test_lattice_out_of_range(capsys):
    code, out, err = run(capsys, "lattice", "13")
    assert code == 2 and out == "" and err.startswith("input error")


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", str(DATA / "eckardt-cubic.surf"), "--format", "structured", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["passed"]


def test_syntax_error_location(tmp_path, capsys):
    bad = tmp_path / "bad.surf"
    bad.write_text("field = Q\nline = x0, x1\nF = x0 x2^2 + x1^3\n")
    code, out, err = run(capsys, "analyze", str(bad))
    assert code == 2 and out == ""
    assert f"{bad}:3:8:" in err


def test_syntax_error_on_continuation_line(tmp_path, capsys):
    bad = tmp_path / "bad.surf"
    bad.write_text("F = x0^2*x2 + x1^2*x3 +\n    x0**3\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2
    assert f"{bad}:2:" in err and "'^'" in err


def test_rejected_surface_exit_code(tmp_path, capsys):
    bad = tmp_path / "cone.surf"
    bad.write_text("F = x0^3 + x2^3 + x1*x3^2\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "multiplicity" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/x.surf")
    assert code == 2 and "input error" in err


def test_read_sections_rules():
    e = read_sections("# head\nF = a +\n  b  # tail\nline = x0, x1\n")
    assert e["F"].value == "a + b"
    assert e["F"].locate(4) == (3, 3)
    with pytest.raises(InputError):
        read_sections("F = 1\nF = 2\n")
    with pytest.raises(InputError):
        read_sections("  dangling\n")
    with pytest.raises(InputError):
        read_sections("no equals sign\n")


@pytest.mark.parametrize("name", SURFACES + HYPERSURFACES)
def test_corpus_round_trip(name):
    entries = read_sections((DATA / name).read_text())
    nvars = 5 if "threefold" in name else 4
    vars = tuple(entries["vars"].value.split()) if "vars" in entries else tuple(f"x{i}" for i in range(nvars))
    K = parse_field(entries, name)
    F = poly_parse(entries["F"].value, vars, K)
    assert poly_parse(format_poly(F), vars, K) == F


@pytest.mark.parametrize("d", [3, 4, 5])
@pytest.mark.parametrize("s", [1, 2, 3])
def test_corpus_samples_are_reproducible(d, s):
    entries = read_sections((DATA / f"sample-d{d}-s{s}.surf").read_text())
    F = poly_parse(entries["F"].value, ("x0", "x1", "x2", "x3"))
    assert F == sample_surface(d, seed=s).equation()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "conicbundle", "lattice", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "result: all checks pass" in proc.stdout
