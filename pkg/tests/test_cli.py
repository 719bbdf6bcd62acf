import csv
import io

import numpy as np
import pytest

from memchannel.cli import ConfigError, main, parse_grid


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def table(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return list(csv.DictReader(lines))


class TestGrids:
    def test_linear(self):
        np.testing.assert_allclose(parse_grid("0.5:1.0:0.25"), [0.5, 0.75, 1.0])

    def test_log(self):
        g = parse_grid("0.5:40:log")
        assert g.size == 25
        assert g[0] == pytest.approx(0.5) and g[-1] == pytest.approx(40)

    def test_log_count_and_list(self):
        assert parse_grid("1:10:log4").size == 4
        np.testing.assert_array_equal(parse_grid("1, 2,3"), [1.0, 2.0, 3.0])

    @pytest.mark.parametrize("text", ["1:2", "a:b:c", "2:1:0.1", "0:1:log", ""])
    def test_bad(self, text):
        with pytest.raises(ConfigError):
            parse_grid(text, "tau_grid")


class TestMemoryless:
    def test_endpoints(self):
        code, out, _ = run(["memoryless", "--eta-grid", "0.5:1.0:0.01"])
        assert code == 0
        rows = table(out)
        assert len(rows) == 51
        assert float(rows[0]["Q"]) == 0.0
        assert float(rows[-1]["Q"]) == 1.0

    def test_header_comment_records_config(self):
        _, out, _ = run(["memoryless", "--eta-grid", "0.6,0.7"])
        first = out.splitlines()[0]
        assert first.startswith("# experiment=memoryless")
        assert "eta_grid=0.6;0.7" in first


class TestSteadyState:
    def test_fig1_rows(self, tmp_path):
        path = tmp_path / "fig1.csv"
        code, _, _ = run(
            ["steady-state", "--eta", "0.8", "--lambda-tau-d", "20", "--lambda-tau", "2", "--p", "0.5",
             "--k", "200", "-o", str(path)]
        )
        assert code == 0
        rows = table(path.read_text())
        assert len(rows) == 200
        assert [int(r["k"]) for r in rows] == list(range(1, 201))
        tail = [float(r["mean_photon"]) for r in rows[-5:]]
        assert max(tail) - min(tail) < 1e-9
        pops = table((tmp_path / "fig1_populations.csv").read_text())
        w = np.array([float(r["w_n"]) for r in pops])
        assert w.sum() == pytest.approx(1.0, abs=1e-10)

    def test_stdout_contains_both_tables(self):
        code, out, _ = run(["steady-state", "--theta", "0.46", "--k", "3"])
        assert code == 0
        assert "k,mean_photon,i_c_k" in out and "n,w_n" in out


class TestSweeps:
    def test_sweep_tau(self):
        code, out, _ = run(["sweep-tau", "--eta", "0.95", "--lambda-tau-d", "20", "--tau-grid", "0.5:40:log"])
        assert code == 0
        rows = table(out)
        ic = np.array([float(r["i_c_opt"]) for r in rows])
        rate = np.array([float(r["rate"]) for r in rows])
        assert np.all(np.diff(ic) >= -1e-9)
        assert np.argmax(rate) == 0
        assert all(r["rate"] == r["private_rate"] for r in rows)

    def test_sweep_mu_keyed_by_mu(self):
        code, out, _ = run(["sweep-mu", "--eta", "0.95", "--mu-grid", "0.1,0.5,0.9"])
        assert code == 0
        rows = table(out)
        assert list(rows[0])[:2] == ["mu", "lambda_tau"]
        assert float(rows[1]["lambda_tau"]) == pytest.approx(20.0)
        rates = [float(r["rate"]) for r in rows]
        assert rates[2] > rates[1] > rates[0]


class TestForgetfulness:
    def test_rows_and_fit(self):
        code, out, _ = run(["forgetfulness", "--eta", "0.8", "--lambda-tau", "2", "--l-max", "20"])
        assert code == 0
        assert len(table(out)) == 21
        fit = [ln for ln in out.splitlines() if ln.startswith("# fit")]
        assert len(fit) == 1 and "r_squared=" in fit[0]

    def test_degenerate_fit_exit_code(self):
        code, _, err = run(["forgetfulness", "--eta", "0.8", "--lambda-tau", "2", "--floor", "0.9"])
        assert code == 1
        assert "FitDegenerate" in err and "lambda_tau=2" in err


class TestConfig:
    def test_config_file_and_flag_precedence(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# Fig. 2 setup\neta = 0.95\nlambda-tau-d = 20\nmu_grid = 0.5\n")
        code, out, _ = run(["sweep-mu", "--config", str(cfg)])
        assert code == 0
        assert "eta=0.95" in out.splitlines()[0]
        code, out, _ = run(["sweep-mu", "--config", str(cfg), "--eta", "0.9"])
        assert "eta=0.9 " in out.splitlines()[0]

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("eta = 0.9\nbogus = 1\n")
        code, _, err = run(["sweep-mu", "--config", str(cfg)])
        assert code == 2
        assert "bogus" in err

    def test_eta_and_theta_together(self):
        code, _, err = run(["steady-state", "--eta", "0.8", "--theta", "0.4"])
        assert code == 2
        assert "eta/theta" in err

    def test_neither_eta_nor_theta(self):
        code, _, err = run(["forgetfulness"])
        assert code == 2

    @pytest.mark.parametrize(
        "argv, key",
        [
            (["steady-state", "--eta", "0.8", "--p", "1.5"], "p"),
            (["steady-state", "--eta", "0.8", "--k", "abc"], "k"),
            (["sweep-tau", "--eta", "0.8", "--tau-grid", "3,2"], "tau_grid"),
            (["sweep-mu", "--eta", "0.8", "--mu-grid", "0,0.5"], "mu_grid"),
            (["steady-state", "--eta", "1.4"], "eta"),
        ],
    )
    def test_bad_values_name_key(self, argv, key):
        code, _, err = run(argv)
        assert code == 2
        assert f" {key}:" in err


class TestDeterminism:
    def test_byte_identical(self, tmp_path):
        argv = ["sweep-tau", "--eta", "0.7", "--tau-grid", "1:8:log4"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(argv + ["-o", str(a)])[0] == 0
        assert run(argv + ["-o", str(b)])[0] == 0
        assert a.read_bytes() == b.read_bytes()
        assert b"\r" not in a.read_bytes()


class TestValidate:
    def test_all_checks_pass(self):
        code, out, _ = run(["validate", "--cases", "40"])
        assert code == 0
        rows = table(out)
        assert len(rows) == 7
        assert all(r["status"] == "PASS" for r in rows)
