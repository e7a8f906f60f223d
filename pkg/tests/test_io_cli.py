import json
from fractions import Fraction

import pytest

from gridrecon import RatFn, family_delta, family_z6, make_group, moment_table, verify_translation
from gridrecon import io as gio
from gridrecon.cli import main
from gridrecon.errors import InvalidElementError


@pytest.fixture
def z7_grid(tmp_path, z7_f):
    path = tmp_path / "z7.json"
    gio.dump_grid(z7_f, path)
    return path


def test_parse_rational():
    assert gio.parse_rational("3/4") == Fraction(3, 4)
    assert gio.parse_rational(" -2 ") == -2
    assert gio.parse_rational(5) == 5
    for bad in ("x", "1/0", 0.5, True):
        with pytest.raises(InvalidElementError):
            gio.parse_rational(bad)


@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_grid_roundtrip(tmp_path, fmt):
    g = make_group([2, 3])
    f = RatFn(g, tuple(Fraction(k, 2) - 1 for k in range(6)))
    path = tmp_path / f"grid.{fmt}"
    gio.dump_grid(f, path, fmt)
    assert gio.load_grid(path) == f
    first = path.read_bytes()
    gio.dump_grid(f, path, fmt)
    assert path.read_bytes() == first


def test_bad_grid_files(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"dims": [3], "values": ["1", "2"]}))
    with pytest.raises(InvalidElementError):
        gio.load_grid(p)
    p.write_text(json.dumps({"dims": [3], "values": ["1", "2", 0.5]}))
    with pytest.raises(InvalidElementError):
        gio.load_grid(p)


def test_moment_and_spectral_roundtrip(tmp_path, z7_f):
    t = moment_table(z7_f, 3)
    gio.dump_moments(t, tmp_path / "m.json")
    back = gio.load_moments(tmp_path / "m.json")
    assert back.tables == t.tables
    assert isinstance(gio.load_any(tmp_path / "m.json"), type(t))
    F, _ = family_delta(make_group([5]))
    gio.dump_spectral(F, tmp_path / "s.json")
    assert gio.load_spectral(tmp_path / "s.json") == F
    assert gio.load_any(tmp_path / "s.json") == F


def test_cli_moments(tmp_path, z7_grid, z7_tables):
    out = tmp_path / "m.json"
    assert main(["moments", str(z7_grid), str(out), "--order", "3"]) == 0
    loaded = gio.load_moments(out)
    for n in (1, 2, 3):
        assert loaded.tables[n] == {k: v for k, v in z7_tables.tables[n].items() if v}
    assert main(["moments", str(z7_grid), str(out), "--order", "9", "--budget", "1000"]) == 2


def test_cli_moments_of_zero_grid(tmp_path):
    path = tmp_path / "zero.json"
    gio.dump_grid(RatFn.zeros(make_group([4])), path)
    out = tmp_path / "m.json"
    assert main(["moments", str(path), str(out), "-K", "2"]) == 0
    assert json.loads(out.read_text())["entries"] == []


def test_cli_reconstruct_grid(tmp_path, crab):
    src = tmp_path / "crab.csv"
    gio.dump_grid(crab, src, "csv")
    out, rep = tmp_path / "out.csv", tmp_path / "report.json"
    assert main(["reconstruct", str(src), str(out), "--report", str(rep)]) == 0
    assert verify_translation(crab, gio.load_grid(out)) is not None
    report = json.loads(rep.read_text())
    assert report["verified"] is True
    assert report["max_order_queried"] <= 6


def test_cli_reconstruct_moment_file(tmp_path, z7_tables, z7_f):
    src = tmp_path / "m.json"
    gio.dump_moments(z7_tables, src)
    out = tmp_path / "g.json"
    assert main(["reconstruct", str(src), str(out)]) == 0
    assert verify_translation(z7_f, gio.load_grid(out)) is not None
    assert main(["reconstruct", str(src), str(out), "--cap", "4"]) == 2
    assert main(["reconstruct", str(src), str(out), "--cap", "2"]) == 2
    assert main(["reconstruct", str(src), str(out), "--cap", "zz"]) == 2


def test_cli_reconstruct_bad_input(tmp_path):
    p = tmp_path / "nope.json"
    p.write_text("[1, 2]")
    assert main(["reconstruct", str(p), str(tmp_path / "o.json")]) == 2
    assert main(["reconstruct", str(tmp_path / "missing.json"), str(tmp_path / "o.json")]) == 2


def test_cli_verify(tmp_path, z7_f, capsys):
    a, b, c = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "c.json"
    gio.dump_grid(z7_f, a)
    gio.dump_grid(z7_f.shifted((2,)), b)
    gio.dump_grid(family_z6(7, 0), c)
    assert main(["verify", str(a), str(b)]) == 0
    assert capsys.readouterr().out.strip() == "2"
    assert main(["verify", str(a), str(c)]) == 2


def test_cli_gen_example(tmp_path):
    out = tmp_path / "z6"
    assert main(["gen-example", "--family", "z6", "--a", "7", "--b", "0", "--out", str(out)]) == 0
    assert gio.load_grid(out / "f.json").values == (14, 7, -7, -14, -7, 7)
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["claimed_agreement_order"] == 5
    sharp = tmp_path / "sharp"
    assert main(["gen-example", "--family", "sharp", "--p", "3", "--q", "5", "--r", "1", "--out", str(sharp)]) == 0
    assert gio.load_grid(sharp / "f.json").group.dims == (30,)
    assert main(["verify", str(sharp / "f.json"), str(sharp / "g.json")]) == 1
    div = tmp_path / "div"
    assert main(["gen-example", "--family", "divisor", "--dims", "6", "6", "--d", "3", "--out", str(div)]) == 0
    assert (div / "f.spectral.json").exists()
    assert main(["gen-example", "--family", "nope", "--out", str(tmp_path / "x")]) == 2
    assert main(["gen-example", "--family", "z6", "--out", str(tmp_path / "y")]) == 2
    assert main(["gen-example", "--family", "sharp", "--p", "3", "--q", "3", "--r", "1", "--out", str(tmp_path / "w")]) == 2


def test_cli_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
