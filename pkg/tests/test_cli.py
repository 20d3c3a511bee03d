"""CLI contract: exit codes, exact parsing, config precedence,
deterministic outputs."""

import io
from fractions import Fraction as Q

import pytest

from quintic import cli


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


class TestParsing:
    def test_decimal_literal_is_exact(self):
        assert cli._rat("0.547") == Q(547, 1000)
        assert cli._rat("3/5") == Q(3, 5)
        assert cli._rat("2") == Q(2)

    def test_rational_pair(self):
        assert cli._rat_pair("0.547,0.6") == (Q(547, 1000), Q(3, 5))
        with pytest.raises(ValueError):
            cli._rat_pair("0.547")

    def test_bad_literal(self):
        with pytest.raises(ValueError):
            cli._rat("abc")
        with pytest.raises(ValueError):
            cli._rat("1/0")

    def test_bool_values(self):
        assert cli._bool("true") and cli._bool("1")
        assert not cli._bool("off")
        with pytest.raises(ValueError):
            cli._bool("maybe")


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["frobnicate"])
        assert exc.value.code == 64

    def test_bad_flag_value(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["classify", "--m", "abc"])
        assert exc.value.code == 64

    def test_missing_required(self):
        code, _ = run("classify")
        assert code == 64

    def test_no_command(self):
        assert cli.main([]) == 64


class TestClassify:
    def test_threshold_repeller_with_v10(self):
        code, out = run("classify", "--m", "3/5", "--k", "1", "--s", "2")
        assert code == 0
        assert "verdict: Repeller" in out
        assert "128/1625 * W" in out

    def test_decimal_m_matches_fraction(self):
        _, out_dec = run("classify", "--m", "0.6")
        _, out_frac = run("classify", "--m", "3/5")
        assert out_dec == out_frac

    def test_constants_listing(self):
        code, out = run("classify", "--m", "1/2", "--upto", "4")
        assert code == 0
        assert "V4" in out
        assert "first nonzero: V4" in out


class TestCertify:
    def test_nc_certified(self):
        code, out = run("certify", "--prop", "nc")
        assert code == 0
        assert "verdict: certified" in out

    def test_sampled_925(self):
        code, out = run("certify", "--prop", "925", "--samples", "0.78")
        assert code == 0
        assert "sample n = 39/50" in out

    def test_uniq_wrong_interval_is_usage(self):
        code, _ = run("certify", "--prop", "uniq",
                      "--interval", "0.7,0.9")
        assert code == 64


class TestNumericCommands:
    def test_cycle(self):
        code, out = run("cycle", "--m", "0.57")
        assert code == 0
        assert "unstable" in out
        assert "vector-field index along the cycle: 1" in out

    def test_cycle_absent(self):
        code, out = run("cycle", "--m", "0.61")
        assert code == 0
        assert "no limit cycle" in out

    def test_bifurcate_narrow(self):
        code, out = run("bifurcate", "--bracket", "0.558,0.562",
                        "--tol", "1e-3", "--scan-step", "2e-3")
        assert code == 0
        assert "sign changes: 1" in out
        assert "delta(279/500)" in out and "(positive)" in out
        assert "(negative)" in out

    def test_bifurcate_no_sign_change(self):
        code, _ = run("bifurcate", "--bracket", "0.548,0.55",
                      "--tol", "1e-3", "--scan-step", "1e-3")
        assert code == 3

    def test_polycycle_example(self):
        code, out = run("polycycle-example", "--m", "1")
        assert code == 0 and "invariant algebraic polycycle: yes" in out
        code, out = run("polycycle-example", "--m", "1/2")
        assert code == 0 and "invariant algebraic polycycle: no" in out


class TestGentrig:
    def test_period_and_moment(self):
        code, out = run("gentrig", "--moment", "0,8", "--theta", "1.0")
        assert code == 0
        assert "period (Gamma product) = 7.41629870920" in out
        assert "Sn^0 Cs^8" in out
        assert "energy residual" in out

    def test_moment_outside_scope(self):
        code, _ = run("gentrig", "--p", "2", "--moment", "0,2")
        assert code == 64


class TestFiles:
    def test_portrait_csv_deterministic(self, tmp_path):
        p1 = tmp_path / "a.csv"
        p2 = tmp_path / "b.csv"
        code, out = run("portrait", "--m", "0.57", "--out", str(p1))
        assert code == 0 and "cycle" in out
        run("portrait", "--m", "0.57", "--out", str(p2))
        assert p1.read_bytes() == p2.read_bytes()
        lines = p1.read_text().splitlines()
        assert lines[0] == "t,x,y,orbit-id"
        ids = {ln.rsplit(",", 1)[1] for ln in lines[1:]}
        for want in ("nullcline-x", "nullcline-y", "orbit-1",
                     "sep-p+-stable-a", "cycle", "basin-oval"):
            assert want in ids
        assert all(len(ln.split(",")) == 4 for ln in lines[1:])

    def test_portrait_svg(self, tmp_path):
        path = tmp_path / "a.svg"
        code, _ = run("portrait", "--m", "0.57", "--out", str(path))
        assert code == 0
        text = path.read_text()
        assert text.startswith("<svg")
        assert "<path d=" in text
        assert "onclick" not in text and "<script" not in text

    def test_portrait_bad_extension(self, tmp_path):
        code, _ = run("portrait", "--m", "0.57",
                      "--out", str(tmp_path / "a.txt"))
        assert code == 64

    def test_basin_log(self, tmp_path):
        path = tmp_path / "oval.csv"
        code, out = run("basin", "--m", "0.57", "--points", "4",
                        "--out", str(path))
        assert code == 0
        assert "containment: 4/4" in out
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x,y,orbit-id"
        assert lines[1].endswith(",basin-oval")
        # closed polyline: first and last vertex agree
        assert lines[1].split(",")[1:3] == lines[-1].split(",")[1:3]

    def test_basin_outside_window(self):
        code, _ = run("basin", "--m", "0.4")
        assert code == 64


class TestConfigFile:
    def test_config_supplies_and_flags_win(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("m = 1\n# comment\n")
        code, out = run("polycycle-example", "--config", str(cfg))
        assert code == 0 and "yes" in out
        code, out = run("polycycle-example", "--config", str(cfg),
                        "--m", "1/2")
        assert code == 0 and "no" in out

    def test_config_bad_line(self, tmp_path):
        cfg = tmp_path / "cfg"
        cfg.write_text("just words\n")
        code, _ = run("polycycle-example", "--config", str(cfg),
                      "--m", "1")
        assert code == 64

    def test_config_missing_file(self):
        code, _ = run("polycycle-example", "--config", "/no/such/file",
                      "--m", "1")
        assert code == 64


class TestReport:
    def test_standard_report(self):
        code, out = run("report")
        assert code == 0
        assert "status: ok" in out
        assert "defaults:" in out and "shoot-tol" in out
        assert "mode: standard" in out
        # every table row cites a record defined above it
        for rid in ("C1", "C2", "C3", "C4", "C5", "C6", "C7"):
            assert f"[{rid}]" in out
        assert "(-inf, 0]" in out
        assert "[3/5, +inf)" in out
        assert "quintic certify --prop 925 --full-interval" in out

    def test_report_deterministic(self):
        _, out1 = run("report")
        _, out2 = run("report")
        assert out1 == out2
