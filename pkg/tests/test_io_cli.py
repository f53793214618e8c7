import os
import subprocess
import sys

import numpy as np
import pytest

from dihedral_forge import cli, io
from dihedral_forge.periods import DCCW_ROOT, DE_ROOT


def test_record_round_trip(solved):
    recs = [solved("de", 0.0), solved("dccw", 0.1), solved("dks", 0.05)]
    text = io.serialize_records(recs)
    back = io.parse_records(text)
    assert [r.family for r in back] == ["de", "dccw", "dks"]
    for a, b in zip(recs, back):
        assert a.params == b.params
        assert a.derived == pytest.approx(b.derived)
        assert a.residual_norm == b.residual_norm and a.solved == b.solved
    assert io.serialize_records(back) == text


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        io.parse_records("[record]\nfamily de\n")
    with pytest.raises(ValueError):
        io.parse_records("[record]\nfamily=torus\n")


def test_atomic_write_leaves_no_partial_file(tmp_path, monkeypatch):
    target = tmp_path / "sol.txt"
    target.write_text("old\n")

    def boom(*a, **k):
        raise OSError("disk full")
    monkeypatch.setattr(os, "fsync", boom)
    with pytest.raises(OSError):
        io.atomic_write(target, "new\n")
    assert target.read_text() == "old\n"
    assert sorted(p.name for p in tmp_path.iterdir()) == ["sol.txt"]


def test_obj_groups_and_round_trip(piece):
    m = piece("dks", 0.0)
    text = io.mesh_to_obj(m)
    v, f, groups = io.read_obj(text)
    assert np.array_equal(v, m.vertices) and np.array_equal(f, m.triangles)
    assert {f"plane_{t}" for t in m.boundary} == set(groups)
    assert "g plane_dl" in text and text.count("\nf ") == len(m.triangles)


def test_obj_orientation_counterclockwise(piece):
    m = piece("de", 0.0)
    z = m.params[m.triangles]
    signed = np.imag(np.conj(z[:, 1] - z[:, 0]) * (z[:, 2] - z[:, 0]))
    assert np.all(signed > 0)


def test_ply_round_trip(piece, tmp_path):
    m = piece("dccw", 0.0)
    path = tmp_path / "m.ply"
    io.write_mesh(path, m)
    data = path.read_bytes()
    assert data.startswith(b"ply\nformat binary_little_endian 1.0\n")
    v, f = io.read_ply(data)
    assert np.array_equal(v, m.vertices) and np.array_equal(f, m.triangles)
    with pytest.raises(ValueError):
        io.write_mesh(tmp_path / "m.stl", m)


def test_fundamental_piece_is_a_disk(piece):
    for fam, al in [("de", 0.2), ("dccw", 0.0), ("dks", 0.05)]:
        assert piece(fam, al).euler_characteristic() == 1


# --- CLI -----------------------------------------------------------------

def run(*argv):
    return cli.main([str(a) for a in argv])


def test_cli_solve_de(tmp_path, capsys):
    out = tmp_path / "de.txt"
    assert run("solve", "--family", "de", "--alpha", 0, "--out", out) == 0
    rec = io.read_solutions(out)[0]
    assert rec.params.a == pytest.approx(DE_ROOT[0], abs=1e-8)
    assert rec.params.b == pytest.approx(DE_ROOT[1], abs=1e-8)
    assert "solved" in capsys.readouterr().out


def test_cli_solve_dccw_and_dks(tmp_path):
    out = tmp_path / "s.txt"
    assert run("solve", "--family", "dccw", "--alpha", 0, "--out", out) == 0
    p = io.read_solutions(out)[0].params
    assert (p.a, p.b) == pytest.approx(DCCW_ROOT, abs=1e-8)
    assert p.c == pytest.approx(18.337, abs=1e-3)
    assert run("solve", "--family", "dks", "--alpha", 0, "--tau", 1.0, "--out", out) == 0
    p = io.read_solutions(out)[0].params
    assert p.a == pytest.approx(p.c, abs=1e-8)


def test_cli_determinism(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run("solve", "--family", "de", "--alpha", 0.05, "--out", a)
    run("solve", "--family", "de", "--alpha", 0.05, "--out", b)
    assert a.read_bytes() == b.read_bytes()


def test_cli_solver_failure_exit_2(tmp_path):
    out = tmp_path / "f.txt"
    assert run("solve", "--family", "de", "--tol", 1e-30, "--out", out) == 2
    assert io.read_solutions(out)[0].solved is False


def test_cli_usage_errors(tmp_path, capsys):
    out = tmp_path / "x.txt"
    assert run("solve", "--family", "torus", "--out", out) == 64
    assert run("solve", "--family", "de", "--tau", 1.0, "--out", out) == 64
    assert run("solve", "--family", "de", "--init", "3,2", "--out", out) == 64
    assert run("continue", "--family", "de", "--alpha", "0.1,0.2", "--out", out) == 64
    assert run("verify", "--suite", "nonsense") == 64
    assert run() == 64
    assert not out.exists()


def test_cli_continue_branch(tmp_path, capsys):
    out = tmp_path / "branch.txt"
    sched = "0,0.02,0.025,0.0333333333333333,0.05,0.1,0.2"
    assert run("continue", "--family", "de", "--alpha", sched, "--out", out) == 0
    recs = io.read_solutions(out)
    assert len(recs) == 7 and all(r.solved for r in recs)
    assert recs[-1].params.alpha == pytest.approx(0.2)


def test_cli_tau_sweep(tmp_path, capsys):
    out = tmp_path / "tau.txt"
    assert run("continue", "--family", "dks", "--tau", "0.9,1.0,1.1", "--out", out) == 0
    recs = io.read_solutions(out)
    # the end tau/2 - ic moves monotonically relative to the height of the quarter domain
    rel = [r.params.c / (r.params.tau.imag / 2) for r in recs]
    assert len(recs) == 3 and np.all(np.diff(rel) < 0)


def test_cli_mesh(tmp_path, capsys):
    sol = tmp_path / "de.txt"
    run("solve", "--family", "de", "--alpha", 0.2, "--out", sol)
    obj = tmp_path / "de.obj"
    assert run("mesh", sol, "--resolution", 12, "--symmetry", "full", "--out", obj) == 0
    assert "copies=10" in capsys.readouterr().out
    v, f, groups = io.read_obj(obj.read_text())
    assert len(f) > 0
    assert run("mesh", sol, "--resolution", 12, "--out", tmp_path / "de.ply") == 0
    assert run("mesh", sol, "--out", tmp_path / "de.stl") == 64


def test_cli_mesh_bad_input(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("[record]\nfamily=de\na=2\n")
    assert run("mesh", bad, "--out", tmp_path / "x.obj") == 3
    assert run("mesh", tmp_path / "missing.txt", "--out", tmp_path / "x.obj") == 3
    uns = tmp_path / "uns.txt"
    run("solve", "--family", "de", "--tol", 1e-30, "--out", uns)
    assert run("mesh", uns, "--out", tmp_path / "x.obj") == 3


def test_cli_verify_properties(capsys):
    assert run("verify", "--suite", "properties") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1].startswith("summary suite=properties")
    assert all(l.startswith(("PASS", "FAIL", "summary")) for l in lines)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "dihedral_forge", "verify", "--suite", "x"],
                       capture_output=True, text=True)
    assert r.returncode == 64 and "usage error" in r.stderr
