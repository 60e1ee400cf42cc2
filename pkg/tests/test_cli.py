import csv
import math

import numpy as np
import pytest

from auxtherm import cli
from auxtherm.errors import ConfigError

BASE = "[medium]\nN = 1000\nV = 1000\n"


def run(tmp_path, command, text, *extra):
    path = tmp_path / "run.ini"
    path.write_text(text)
    out = tmp_path / "out"
    code = cli.main([command, "--config", str(path), "--out", str(out), *extra])
    return code, out


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_parse_unknown_key_names_line():
    with pytest.raises(ConfigError, match=r":3: unknown key 'Nn'"):
        cli.parse_config("[medium]\nN = 1\nNn = 2\nV = 1\n")
    with pytest.raises(ConfigError, match="unknown section"):
        cli.parse_config(BASE + "[extras]\nx = 1\n")


def test_parse_channels_sorted():
    cfg = cli.parse_config(BASE + "[channel.b]\nmu = 2\nkappa = 1\ngamma = 1\n"
                                  "[channel.a]\nmu = 1\nkappa = 1\ngamma = 1\n")
    assert [ch.label for ch in cfg.channels] == ["a", "b"]


def test_units_conflict():
    with pytest.raises(ConfigError):
        cli.parse_config(BASE + "hbar = 1\n[units]\nhbar = 2\n")


def test_poles_single(tmp_path, capsys):
    code, out = run(tmp_path, "poles", BASE + "[pole.a]\nmu = 1.0\nstrength = 0.5\n")
    assert code == 0
    with open(out / "poles.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1
    gamma2 = 4 * math.pi * 0.5
    n = 1.0
    assert float(rows[0]["alpha"]) == pytest.approx(n * gamma2 / 2, rel=1e-15)
    assert float(rows[0]["T_crit"]) == pytest.approx(n * gamma2 / 2, rel=1e-15)
    assert "global threshold" in capsys.readouterr().out


def test_poles_sorted_and_empty(tmp_path):
    code, out = run(tmp_path, "poles", BASE + "[pole.x]\nmu = 3\nstrength = 1\n"
                                              "[pole.y]\nmu = 1\nstrength = -1\n")
    with open(out / "poles.csv") as fh:
        mus = [float(r["mu"]) for r in csv.DictReader(fh)]
    assert code == 0 and mus == [1.0, 3.0]
    code, _ = run(tmp_path, "poles", BASE)
    assert code == cli.EXIT_CONFIG


def test_fcurve_free(tmp_path):
    code, out = run(tmp_path, "fcurve", BASE + "[fcurve]\nalpha = 0\ntau = 100, 1, 10\n")
    assert code == 0
    text = (out / "fcurve.csv").read_bytes()
    assert text.startswith(b"tau,f,f2\n") and b"\r" not in text
    header, data = read_csv(out / "fcurve.csv")
    assert list(data[:, 0]) == [1.0, 10.0, 100.0]
    assert np.all(np.diff(data[:, 1]) > 0) and data[-1, 1] < 1
    # repr round-trip
    for line in text.decode().splitlines()[1:]:
        for field in line.split(","):
            assert repr(float(field)) == field


def test_fcurve_deterministic(tmp_path):
    text = BASE + "[fcurve]\nalpha = 0.5\ntau_min = 0.6\ntau_max = 5\ntau_points = 12\n"
    outputs = []
    for name in ("a", "b"):
        (tmp_path / name).mkdir()
        outputs.append(run(tmp_path / name, "fcurve", text)[1])
    out1, out2 = outputs
    assert (out1 / "fcurve.csv").read_bytes() == (out2 / "fcurve.csv").read_bytes()


def test_fcurve_subcritical_writes_nothing(tmp_path, capsys):
    code, out = run(tmp_path, "fcurve", BASE + "[fcurve]\nalpha = 0.5\ntau = 0.4, 1\n")
    assert code == cli.EXIT_SUBCRITICAL
    assert "0.4" in capsys.readouterr().err
    assert not out.exists()


HEAT = BASE + "[heatcap]\nT = {grid}\n"


def test_heatcap_free_stefan(tmp_path):
    grid = ", ".join(repr(float(t)) for t in np.geomspace(100, 1000, 6))
    code, out = run(tmp_path, "heatcap", HEAT.format(grid=grid)
                    + "[channel.free]\nmu = 1\nkappa = 1\ngamma = 0\n")
    assert code == 0
    header, data = read_csv(out / "heatcap_free.csv")
    assert header == ["T", "tau", "W", "Cv"]
    ratio = data[:, 3] / data[:, 0] ** 3
    assert np.ptp(ratio) / ratio.mean() < 1e-3


def test_heatcap_totals_additive_and_prefactor(tmp_path):
    channels = ("[channel.a]\nmu = 1\nkappa = 1\ngamma = 1\n"
                "[channel.b]\nmu = 1\nkappa = 1\ngamma = 1\n")
    code, out = run(tmp_path, "heatcap", HEAT.format(grid="1, 2, 4") + channels)
    assert code == 0
    _, single = read_csv(out / "heatcap_a.csv")
    _, total = read_csv(out / "heatcap_total.csv")
    np.testing.assert_allclose(total[:, 1:], 2 * single[:, 2:], rtol=1e-15)
    (tmp_path / "dos").mkdir()
    code, out_dos = run(tmp_path / "dos", "heatcap", HEAT.format(grid="1, 2, 4") + channels,
                        "--prefactor", "dos")
    _, dos = read_csv(out_dos / "heatcap_a.csv")
    np.testing.assert_allclose(dos[:, 2] / single[:, 2], 8 * math.pi**2, rtol=1e-14)


def test_heatcap_singular_edge(tmp_path):
    # alpha = 0.5, T_s = 1; grid approaching T = 0.5 from above
    grid = ", ".join(repr(0.5 * (1 + d)) for d in (1e-3, 1e-4, 1e-5))
    code, out = run(tmp_path, "heatcap", HEAT.format(grid=grid)
                    + "[channel.s]\nmu = 1\nkappa = 1\ngamma = 1\n")
    assert code == 0
    _, data = read_csv(out / "heatcap_s.csv")
    assert np.all(np.diff(data[:, 3]) < 0)  # rows ascend in T, so Cv falls away from the edge


def test_heatcap_subcritical(tmp_path):
    code, out = run(tmp_path, "heatcap", HEAT.format(grid="0.4, 1")
                    + "[channel.s]\nmu = 1\nkappa = 1\ngamma = 1\n")
    assert code == cli.EXIT_SUBCRITICAL and not out.exists()


def test_classical_energy(tmp_path):
    text = (BASE + "[channel.free]\nmu = 1\nkappa = 1\ngamma = 0\n"
            "[classical_energy]\nT = 2\nM = 0, 10, 100\n")
    code, out = run(tmp_path, "classical-energy", text)
    assert code == 0
    header, data = read_csv(out / "classical_energy.csv")
    assert header == ["M", "E"]
    np.testing.assert_allclose(data[:, 1], 1.5 * 1000 * 2 + 2 * data[:, 0] * 2, rtol=1e-14)


def test_classical_energy_subcritical_names_mode(tmp_path, capsys):
    text = (BASE + "[channel.hot]\nmu = 1\nkappa = 1\ngamma = 1\n"
            "[classical_energy]\nT = 0.1\nM = 5\n")
    code, _ = run(tmp_path, "classical-energy", text)
    assert code == cli.EXIT_SUBCRITICAL
    assert "s=hot" in capsys.readouterr().err


def test_validate(capsys):
    assert cli.main(["validate"]) == 0
    out = capsys.readouterr().out
    for name in ("weyl_bessel_grid", "bessel_vs_series", "f_curve_vs_gauss_legendre",
                 "critical_temperature_root"):
        assert name in out


def test_validate_fault_injection(tmp_path, capsys):
    path = tmp_path / "v.ini"
    path.write_text(BASE + "[validate]\nbessel_fault = 1e-6\n")
    assert cli.main(["validate", "--config", str(path)]) == cli.EXIT_VALIDATION
    out = capsys.readouterr().out
    assert "FAIL  bessel_vs_series" in out
    assert out.count("PASS") + out.count("FAIL") == 8


def test_missing_config(capsys):
    assert cli.main(["poles"]) == cli.EXIT_CONFIG
    assert cli.main(["poles", "--config", "/nonexistent.ini"]) == cli.EXIT_CONFIG
