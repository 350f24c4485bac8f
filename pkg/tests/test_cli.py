import csv
import io
import math
import subprocess
import sys

import numpy as np
import pytest

from tripartite import cli
from tripartite.channels import NoiseKind
from tripartite.cli import SweepConfig, UsageError, main, render_csv, sweep_rows
from tripartite.tangles import MU1_X, MU2_X, Y_STAR


def run_sweep(tmp_path, *args):
    out = tmp_path / "out.csv"
    code = main(["sweep", *args, "--out", str(out)])
    assert code == 0
    return out.read_bytes(), list(csv.DictReader(io.StringIO(out.read_text())))


class TestSweep:
    def test_pi_tangle_y_vanishes_past_y_star(self, tmp_path):
        _, rows = run_sweep(
            tmp_path, "--quantity", "pi_tangle", "--kind", "y", "--kt-start", "0", "--kt-stop", "1", "--kt-count", "101"
        )
        assert len(rows) == 101
        kt = np.array([float(r["kappa_t"]) for r in rows])
        val = np.array([float(r["value"]) for r in rows])
        assert np.all(val[kt > Y_STAR] < 1e-12)
        assert np.all(val[kt < Y_STAR - 0.01] > 0)
        np.testing.assert_allclose(val, [float(r["closed"]) for r in rows], atol=1e-8)

    def test_charlie_no_noise_quarter_pi(self, tmp_path):
        _, rows = run_sweep(
            tmp_path, "--quantity", "charlie_fidelity", "--kind", "none", "--kt-start", "0", "--kt-stop", "1",
            "--kt-count", "3", "--nu", str(math.pi / 4),
        )
        assert list(rows[0]) == ["kind", "kappa_t", "nu", "value", "method", "numeric", "closed"]
        for r in rows:
            assert float(r["value"]) == pytest.approx(1.0, abs=1e-11)
            assert r["method"] == "numeric"

    def test_three_tangle_x_kinks(self, tmp_path):
        _, rows = run_sweep(
            tmp_path, "--quantity", "three_tangle", "--kind", "x", "--kt-start", "0", "--kt-stop", "0.15",
            "--kt-count", "151",
        )
        kt = np.array([float(r["kappa_t"]) for r in rows])
        val = np.array([float(r["value"]) for r in rows])
        assert np.all(val[kt >= MU2_X] == 0)
        assert np.all(val[kt < MU2_X] > 0)
        np.testing.assert_allclose(val, [float(r["decomposition"]) for r in rows], atol=1e-12)
        # slope changes across the first kink
        i = int(np.searchsorted(kt, MU1_X))
        left = (val[i - 1] - val[i - 3]) / (kt[i - 1] - kt[i - 3])
        right = (val[i + 3] - val[i + 1]) / (kt[i + 3] - kt[i + 1])
        assert abs(left - right) > 0.1

    def test_nu_count_grid_order(self, tmp_path):
        _, rows = run_sweep(
            tmp_path, "--quantity", "bob_fidelity", "--kind", "x", "--kt-start", "0", "--kt-stop", "0.2",
            "--kt-count", "2", "--nu-count", "3",
        )
        pairs = [(float(r["kappa_t"]), float(r["nu"])) for r in rows]
        expected = [(kt, nu) for kt in (0.0, 0.2) for nu in np.linspace(0, math.pi / 2, 3)]
        np.testing.assert_allclose(pairs, expected)
        for r in rows:
            assert float(r["numeric"]) == pytest.approx(float(r["closed"]), abs=1e-7)

    def test_bob_total(self, tmp_path):
        _, rows = run_sweep(
            tmp_path, "--quantity", "bob_fidelity", "--kind", "isotropic", "--kt-start", "0", "--kt-stop", "0.5",
            "--kt-count", "2", "--nu", "0.3", "--outcome", "total",
        )
        for r in rows:
            assert float(r["value"]) == pytest.approx(0.5, abs=1e-10)

    def test_byte_identical(self, tmp_path):
        args = ["--quantity", "convex_roof", "--kind", "z", "--kt-start", "0", "--kt-stop", "0.2", "--kt-count", "2",
                "--seed", "3", "--restarts", "2", "--members", "3"]
        a, rows = run_sweep(tmp_path, *args)
        b, _ = run_sweep(tmp_path, *args)
        assert a == b
        assert rows[1]["method"] == "optimizer"
        assert list(rows[0])[-2:] == ["optimizer_upper_bound", "closed"]
        assert float(rows[1]["value"]) == pytest.approx(math.exp(-2.4), abs=1e-3)

    def test_twelve_significant_digits(self):
        config = SweepConfig("three_tangle_ub", NoiseKind.ISOTROPIC, 0.0, 0.1, 2)
        text = render_csv(config, sweep_rows(config))
        assert text.splitlines()[0] == "kind,kappa_t,value,method"
        value = text.splitlines()[2].split(",")[2]
        assert len(value.replace("0.", "", 1).lstrip("0")) <= 12

    def test_parallel_matches_sequential(self):
        config = SweepConfig("pi_tangle", NoiseKind.ISOTROPIC, 0.0, 0.3, 4)
        assert sweep_rows(config, jobs=2) == sweep_rows(config, jobs=1)

    def test_stdout(self, capsys):
        assert main(["sweep", "--quantity", "three_tangle_ub", "--kind", "y", "--kt-start", "0", "--kt-stop", "1",
                     "--kt-count", "2", "--out", "-"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("kind,kappa_t,value,method\n")
        assert out.count("\n") == 3


class TestUsageErrors:
    @pytest.mark.parametrize(
        "quantity, kind, valid",
        [("three_tangle", "y", "x, z"), ("three_tangle_ub", "x", "y, isotropic")],
    )
    def test_kind_listing(self, quantity, kind, valid):
        with pytest.raises(UsageError, match=valid):
            SweepConfig(quantity, NoiseKind.parse(kind), 0.0, 1.0, 3)

    @pytest.mark.parametrize(
        "kwargs",
        [dict(kt_count=1), dict(kt_start=0.5, kt_stop=0.1), dict(kt_start=-0.1)],
    )
    def test_invalid_grid(self, kwargs):
        base = dict(quantity="pi_tangle", kind=NoiseKind.X, kt_start=0.0, kt_stop=1.0, kt_count=3)
        with pytest.raises(UsageError):
            SweepConfig(**{**base, **kwargs})

    def test_nu_rules(self):
        with pytest.raises(UsageError, match="needs --nu"):
            SweepConfig("charlie_fidelity", NoiseKind.X, 0.0, 1.0, 3)
        with pytest.raises(UsageError, match="only apply"):
            SweepConfig("pi_tangle", NoiseKind.X, 0.0, 1.0, 3, nu=(0.1,))

    def test_exit_code_two(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--quantity", "three_tangle", "--kind", "y", "--kt-start", "0", "--kt-stop", "1",
                  "--kt-count", "3", "--out", str(tmp_path / "x.csv")])
        assert exc.value.code == 2
        assert "valid kinds: x, z" in capsys.readouterr().err

    def test_unknown_kind(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--quantity", "pi_tangle", "--kind", "w", "--kt-start", "0", "--kt-stop", "1",
                  "--kt-count", "3", "--out", "-"])
        assert exc.value.code == 2

    def test_unwritable_path(self, tmp_path, capsys):
        code = main(["sweep", "--quantity", "pi_tangle", "--kind", "x", "--kt-start", "0", "--kt-stop", "1",
                     "--kt-count", "2", "--out", str(tmp_path / "missing" / "out.csv")])
        assert code == 1
        assert "cannot write" in capsys.readouterr().err

    def test_unknown_suite(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "bogus"])
        assert exc.value.code == 2


class TestVerify:
    def test_protocol_suite(self, capsys):
        assert main(["verify", "protocol"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert all(line.startswith("[PASS]") for line in out[:-1])
        assert out[-1].endswith("checks passed")
        assert any("1/4" in line for line in out)

    def test_deterministic(self):
        a, b = io.StringIO(), io.StringIO()
        assert cli.verify("qmat", seed=7, stream=a)
        assert cli.verify("qmat", seed=7, stream=b)
        assert a.getvalue() == b.getvalue()

    def test_tangles_suite(self):
        stream = io.StringIO()
        assert cli.verify("tangles", stream=stream)
        assert "pi-tangle of channel states vs closed forms" in stream.getvalue()

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "tripartite", "verify", "protocol", "--seed", "7"],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0, proc.stderr
        assert "checks passed" in proc.stdout
