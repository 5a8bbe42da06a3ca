import subprocess
import sys

from clext.cli import main


def run_cli(args):
    import contextlib
    import io

    buf = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
        code = main(args)
    return code, buf.getvalue(), err.getvalue()


class TestValidate:
    def test_valid(self):
        code, out, _ = run_cli(["validate", "--lambda", "3", "--alpha", "3,-3,0"])
        assert code == 0
        assert "1.33333333333" in out

    def test_positivity_violation_exit2(self):
        code, _, err = run_cli(["validate", "--lambda", "2", "--alpha", "-1.5,1.5"])
        assert code == 2
        assert "beta_1" in err

    def test_zero_sum_exit2(self):
        code, _, err = run_cli(["validate", "--lambda", "2", "--alpha", "0.1,0"])
        assert code == 2

    def test_missing_params(self):
        code, _, err = run_cli(["validate"])
        assert code == 2


class TestVerify:
    def test_algebra_pass(self):
        code, out, _ = run_cli(["verify", "algebra", "--lambda", "3", "--alpha", "3,-3,0", "--k", "32"])
        assert code == 0
        assert "True" in out and "False" not in out

    def test_states_pass(self):
        code, out, _ = run_cli(["verify", "states", "--lambda", "2", "--alpha", "3,-3", "--k", "48"])
        assert code == 0

    def test_moments_pass(self):
        code, out, _ = run_cli(
            ["verify", "moments", "--lambda", "2", "--alpha", "3,-3", "--cs-alpha", "1", "--mu", "0"]
        )
        assert code == 0


class TestFigure:
    def test_byte_stable(self):
        args = ["figure", "3a", "--grid", "0.1:2:6"]
        _, out1, _ = run_cli(args)
        _, out2, _ = run_cli(args)
        assert out1 == out2
        assert out1.startswith("# figure: 3a")

    def test_unknown_figure(self):
        code, _, err = run_cli(["figure", "9z"])
        assert code == 2

    def test_whole_figure_collects_panels(self):
        code, out, _ = run_cli(["figure", "2", "--grid", "0.1:0.9:4"])
        assert code == 0
        assert "# figure: 2a" in out and "# figure: 2b" in out


class TestDataCommands:
    def test_mandel_eigen(self):
        code, out, _ = run_cli(
            ["mandel", "--family", "eigen", "--lambda", "2", "--alpha", "1,-1", "--grid", "0.5:1.5:3"]
        )
        assert code == 0
        lines = [l for l in out.splitlines() if not l.startswith("#")]
        assert lines[0] == "r,Q_closed,Q_oracle"
        assert len(lines) == 4

    def test_moments_csv(self):
        code, out, _ = run_cli(
            ["moments", "--lambda", "2", "--alpha", "3,-3", "--cs-alpha", "1", "--mu", "0", "--tol", "1e-8"]
        )
        assert code == 0
        assert "k,target,integral,rel_error" in out

    def test_resolution(self):
        code, out, _ = run_cli(
            ["resolution", "--lambda", "2", "--alpha", "3,-3", "--mode", "diagonal_alpha0", "--n-max", "4"]
        )
        assert code == 0
        assert "n,n_prime,value" in out

    def test_state_dump(self):
        code, out, _ = run_cli(
            ["state", "--lambda", "2", "--alpha", "0,0", "--z-re", "1", "--z-im", "0",
             "--cs-alpha", "-1", "--k", "16"]
        )
        assert code == 0
        assert "n,re_c,im_c" in out

    def test_squeeze(self):
        code, out, _ = run_cli(
            ["squeeze", "--family", "eigen", "--lambda", "2", "--alpha", "3,-3",
             "--kind", "dressed", "--grid", "0.5:1:2"]
        )
        assert code == 0
        assert "X_closed" in out


class TestConfigFile:
    def test_config_supplies_defaults_flags_win(self, tmp_path):
        cfg = tmp_path / "run.conf"
        cfg.write_text("lam = 2\nalpha_csv = 3,-3\nmu = 0\ncs_alpha = 1\n")
        code, out, _ = run_cli(["moments", "--config", str(cfg)])
        assert code == 0
        # flag overrides the config value
        code2, out2, _ = run_cli(
            ["moments", "--config", str(cfg), "--cs-alpha", "0", "--tol", "1e-5"]
        )
        assert code2 == 0
        assert "alpha = 0" in out2

    def test_out_file(self, tmp_path):
        dest = tmp_path / "fig.csv"
        code, out, _ = run_cli(["figure", "4a", "--grid", "0.2:1:3", "--out", str(dest)])
        assert code == 0
        assert out == ""
        assert dest.read_text().startswith("# figure: 4a")


def test_module_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "clext.cli", "validate", "--lambda", "2", "--alpha", "0,0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0


def test_verify_failure_exits_one():
    # an unreachable tolerance must flip the exit code to 1
    code, out, _ = run_cli(
        ["verify", "moments", "--lambda", "3", "--alpha", "3,-3,0",
         "--cs-alpha", "1", "--mu", "0", "--tol", "1e-16"]
    )
    assert code == 1
    assert "False" in out


def test_figure_3b_solid_q_limit():
    # mu = 1 curves start at Q(0+) = -1
    code, out, _ = run_cli(["figure", "3b", "--grid", "0.02:1:8"])
    assert code == 0
    first = [l for l in out.splitlines() if l and not l.startswith("#")][1]
    vals = [float(v) for v in first.split(",")[1:]]
    assert all(abs(v + 1.0) < 0.05 for v in vals)
