import json

import pytest

from e7_forge.cli import UsageError, build_generators, main
from e7_forge.e7mat import read_e7mat


def test_volume(capsys):
    assert main(["volume", "--target", "E7modU"]) == 0
    out = capsys.readouterr().out
    assert out.strip() == "2^5/(3^12·5^5·7^3·11^2·13^2·17) · π^27"


def test_integral(capsys):
    assert main(["integral", "--a", "1", "--b", "1", "--c", "1", "--n", "16"]) == 0
    out = capsys.readouterr().out
    assert "I(1,1,1) = 1/(2·3) = 1/6" in out
    assert "8·I = 2^2/3" in out
    assert "quadrature n=16" in out


@pytest.mark.parametrize("argv", [
    ["integral", "--a", "0", "--b", "1", "--c", "1"],
    ["integral", "--a", "1", "--b", "1", "--c", "1", "--n", "4"],
    ["build", "--construction", "split", "--rep", "133", "--out", "unused.e7mat"],
    ["sample", "--n", "0", "--out", "unused.e7mat"],
    ["build"],
    ["volume", "--target", "G2"],
    ["frobnicate"],
])
def test_usage_errors(argv):
    assert main(argv) == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert "e7-forge" in capsys.readouterr().out


def test_build_generators_rejects_evi_adjoint():
    with pytest.raises(UsageError):
        build_generators("evi", 133, "float")


def test_build_tits(tmp_path, capsys):
    path = tmp_path / "tits.e7mat"
    assert main(["build", "--construction", "tits", "--out", str(path)]) == 0
    assert "wrote 133 generators (56x56)" in capsys.readouterr().out
    g = read_e7mat(str(path))
    assert len(g) == 133
    assert g.rep_dim == 56
    assert g.labels[0] == "Y_1"


def test_verify_volumes(tmp_path, capsys):
    path = tmp_path / "volumes.json"
    assert main(["verify", "--suite", "volumes", "--report", str(path)]) == 0
    assert "Suite: volumes" in capsys.readouterr().out
    report = json.loads(path.read_text())
    assert report["passed"]
    assert report["counts"]["fail"] == 0


@pytest.mark.slow
def test_sample_is_deterministic(tmp_path):
    a, b = tmp_path / "a.e7mat", tmp_path / "b.e7mat"
    assert main(["sample", "--n", "2", "--seed", "3", "--out", str(a)]) == 0
    assert main(["sample", "--n", "2", "--seed", "3", "--out", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert "seed=3 count=2" in (tmp_path / "a.e7mat.manifest").read_text()
