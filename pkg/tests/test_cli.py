import json
import math

import pytest

from s3tori.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_embed(capsys):
    rc, out, _ = run(capsys, "embed", "--k", "1", "--l", "1", "--e", "1", "--phi1", "1.5707963267948966",
                     "--phi2", "0")
    data = json.loads(out)
    assert rc == 0 and abs(data["norm"] - 1) < 1e-14
    assert math.hypot(*data["x"][:2]) == pytest.approx(math.cos(3 * math.pi / 8), abs=1e-12)


def test_embed_integrated(capsys):
    rc, out, _ = run(capsys, "embed", "--E", "0.4", "--phi1", "0.3", "--phi2", "2.0")
    assert rc == 0 and abs(json.loads(out)["norm"] - 1) < 1e-12


def test_energy_out_of_range(capsys):
    rc, _, err = run(capsys, "embed", "--E", "0.7", "--phi1", "0", "--phi2", "0")
    assert rc == 2 and "parameter error" in err


def test_energy_flags_are_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["period", "--E", "0.3", "--e", "1"])
    assert exc.value.code == 2


def test_period(capsys):
    rc, out, _ = run(capsys, "period", "--e", "1")
    data = json.loads(out)
    assert rc == 0 and data["method_gap"] < 1e-9 and math.pi < data["delta"] < math.sqrt(2) * math.pi


def test_search_closes(capsys):
    rc, out, _ = run(capsys, "search", "--p", "4", "--q", "3")
    data = json.loads(out)
    assert rc == 0 and data["gap"] < 1e-9 and data["closure"]["passed"]
    assert data["closure"]["shift"] == [0, 2]


def test_search_out_of_range(capsys):
    rc, _, _ = run(capsys, "search", "--p", "3", "--q", "2", "--no-closure")
    assert rc == 2


def test_search_needs_target(capsys):
    rc, _, _ = run(capsys, "search")
    assert rc == 2


def test_verify(capsys, tmp_path):
    out = tmp_path / "v.json"
    rc, _, _ = run(capsys, "verify", "--E", "0.4", "--grid", "32", "--out", str(out))
    assert rc == 0 and json.loads(out.read_text())["passed"]


def test_verify_unmet_tolerance(capsys):
    rc, _, _ = run(capsys, "verify", "--E", "0.4", "--grid", "16", "--tol", "1e-30")
    assert rc == 3


def test_isometry(capsys):
    rc, out, _ = run(capsys, "isometry", "--e", "2", "--samples", "500")
    assert rc == 0 and json.loads(out)["max_isometry_deviation"] < 1e-9
    rc, _, _ = run(capsys, "isometry", "--e", "2", "--samples", "500", "--tol", "0")
    assert rc == 3


@pytest.mark.parametrize("fmt", ["obj", "csv", "json"])
def test_mesh(capsys, tmp_path, fmt):
    out = tmp_path / f"m.{fmt}"
    rc, _, err = run(capsys, "mesh", "--e", "0", "--grid", "8", "--format", fmt, "--out", str(out))
    assert rc == 0 and "64 vertices" in err and out.stat().st_size > 0


def test_mesh_needs_out(capsys):
    rc, _, _ = run(capsys, "mesh", "--e", "0")
    assert rc == 2


def test_mesh_pole_on_surface(capsys, tmp_path):
    rc, _, _ = run(capsys, "mesh", "--e", "0", "--grid", "8", "--pole", "0.7071067811865476,0,0.7071067811865476,0",
                   "--out", str(tmp_path / "m.obj"))
    assert rc == 2


def test_bad_grid():
    with pytest.raises(SystemExit):
        main(["verify", "--E", "0.3", "--grid", "axb"])
