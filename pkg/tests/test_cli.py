import csv

from causal_qfi import blocks, cli


def _read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_classify_output(capsys):
    assert cli.main(["classify"]) == 0
    out = capsys.readouterr().out
    assert "total combinations (m=2..6): 57" in out
    assert "B:6  D:6  F:3" in out
    assert "DDD:2" in out


def test_sweep_m6_rows_and_dominance(tmp_path):
    out = tmp_path / "m6.csv"
    code = cli.main([
        "sweep", "--m", "6", "--theta-start", "0.1", "--theta-stop", "0.9",
        "--theta-step", "0.1", "--d", "2", "--out", str(out),
    ])
    assert code == 0
    rows = _read_csv(out)
    assert rows[0] == cli.SWEEP_HEADER
    assert len(rows) == 10  # header + 9 grid points
    for row in rows[1:]:
        assert float(row[5]) > float(row[7])  # J_m6 above the definite baseline
        assert float(row[9]) < 1e-9  # analytic and numeric agree


def test_sweep_m1_zero_gain(tmp_path):
    out = tmp_path / "m1.csv"
    assert cli.main([
        "sweep", "--m", "1", "--theta-start", "0.2", "--theta-stop", "0.4",
        "--theta-step", "0.1", "--out", str(out),
    ]) == 0
    rows = _read_csv(out)
    assert len(rows) == 1 + 6 * 3
    for row in rows[1:]:
        assert row[8] == "0"  # J_rel vanishes for a definite order


def test_sweep_all_combinations_class_consistency(tmp_path):
    out = tmp_path / "all.csv"
    assert cli.main([
        "sweep", "--theta-start", "0.5", "--theta-stop", "0.5", "--theta-step", "0.1",
        "--d", "2", "--method", "numeric", "--out", str(out),
    ]) == 0
    rows = _read_csv(out)[1:]
    assert len(rows) == 57
    by_class = {}
    for row in rows:
        by_class.setdefault(row[2], []).append(float(row[6]))
    assert len(by_class) == 11
    for vals in by_class.values():
        assert max(vals) - min(vals) < 1e-9


def test_sweep_deterministic_across_thread_counts(tmp_path, monkeypatch):
    args = ["sweep", "--m", "2", "--theta-start", "0.2", "--theta-stop", "0.6",
            "--theta-step", "0.2", "--d", "2,3"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    monkeypatch.delenv("CAUSAL_QFI_THREADS", raising=False)
    assert cli.main(args + ["--out", str(out1)]) == 0
    monkeypatch.setenv("CAUSAL_QFI_THREADS", "4")
    assert cli.main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_explicit_combo_selection(tmp_path):
    out = tmp_path / "combo.csv"
    assert cli.main([
        "sweep", "--combo", "1,4,5", "--combo", "26", "--theta-start", "0.5",
        "--theta-stop", "0.5", "--theta-step", "0.1", "--out", str(out),
    ]) == 0
    rows = _read_csv(out)[1:]
    assert [r[1] for r in rows] == ["26", "145"]  # sorted by m, then id
    assert rows[1][2] == "DDD"


def test_sweep_method_analytic_only(tmp_path):
    out = tmp_path / "analytic.csv"
    assert cli.main([
        "sweep", "--combo", "123456", "--combo", "12345", "--theta-start", "0.5",
        "--theta-stop", "0.5", "--theta-step", "0.1", "--method", "analytic",
        "--out", str(out),
    ]) == 0
    rows = {r[1]: r for r in _read_csv(out)[1:]}
    assert rows["123456"][5] != "" and rows["123456"][6] == ""  # closed form, no engine run
    assert rows["12345"][5] == "" and rows["12345"][9] == ""  # five orders: no closed form
    assert rows["12345"][7] != ""  # the baseline column is always filled


def test_reps_selection(tmp_path):
    out = tmp_path / "reps.csv"
    assert cli.main([
        "sweep", "--reps", "--theta-start", "0.5", "--theta-stop", "0.5",
        "--theta-step", "0.1", "--out", str(out),
    ]) == 0
    rows = _read_csv(out)[1:]
    assert len(rows) == 7
    for row in rows:
        assert row[5] != "" and row[6] != ""  # every representative has a closed form


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "# sweep configuration\n"
        "theta_start=0.3\n"
        "theta_stop=0.5\n"
        "theta_step=0.1\n"
        "d=2\n"
        "m=6\n"
        f"out={tmp_path / 'cfg.csv'}\n"
    )
    assert cli.main(["sweep", "--config", str(cfg)]) == 0
    assert len(_read_csv(tmp_path / "cfg.csv")) == 4  # header + 3 thetas
    # an explicit flag beats the config value
    assert cli.main(["sweep", "--config", str(cfg), "--theta-stop", "0.4",
                     "--out", str(tmp_path / "cfg2.csv")]) == 0
    assert len(_read_csv(tmp_path / "cfg2.csv")) == 3


def test_usage_errors_exit_one(tmp_path, capsys):
    assert cli.main([]) == 1
    assert cli.main(["sweep", "--theta-stop", "1.5"]) == 1
    assert cli.main(["sweep", "--theta-step", "-0.1"]) == 1
    assert cli.main(["sweep", "--combo", "1,1"]) == 1
    assert cli.main(["sweep", "--combo", "zap"]) == 1
    assert cli.main(["sweep", "--d", "1"]) == 1
    assert cli.main(["sweep", "--method", "magic"]) == 1
    assert cli.main(["sweep", "--m", "9"]) == 1
    assert cli.main(["sweep", "--config", str(tmp_path / "missing.cfg")]) == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense_key=1\n")
    assert cli.main(["sweep", "--config", str(bad)]) == 1
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
    assert "sweep" in capsys.readouterr().out


def test_verify_cli_small_grid(tmp_path, capsys):
    out = tmp_path / "verify.csv"
    code = cli.main([
        "verify", "--theta-start", "0.3", "--theta-stop", "0.7", "--theta-step", "0.2",
        "--d", "2", "--out", str(out),
    ])
    text = capsys.readouterr().out
    assert code == 0
    assert "overall: PASS" in text
    assert "eps-squared residual" in text
    assert "five-order" in text
    rows = _read_csv(out)
    assert rows[0] == cli.VERIFY_HEADER
    assert len(rows) > 1


def test_verify_cli_rejects_zero_start():
    assert cli.main(["verify", "--theta-start", "0", "--theta-stop", "0.5",
                     "--theta-step", "0.25"]) == 1


def test_verify_cli_fault_injection_exits_two(monkeypatch, capsys):
    blocks.order_pair_labels()  # classification must come from true coefficients
    true_coeffs = blocks.block_coeffs

    def bad_coeffs(label, theta, d):
        f, g = true_coeffs(label, theta, d)
        if label == "B":
            f += 1e-3
        return f, g

    monkeypatch.setattr(blocks, "block_coeffs", bad_coeffs)
    code = cli.main(["verify", "--theta-start", "0.5", "--theta-stop", "0.5",
                     "--theta-step", "0.1", "--d", "2"])
    capsys.readouterr()
    assert code == 2


def test_figure1_cli(tmp_path, capsys):
    outdir = tmp_path / "fig"
    assert cli.main(["figure1", "--out", str(outdir), "--theta-step", "0.25",
                     "--theta-stop", "0.75"]) == 0
    capsys.readouterr()
    a = _read_csv(outdir / "figure1a.csv")
    assert a[0] == ["theta"] + cli.FIGURE_CURVES + ["J_2switch"]
    assert len(a) == 5  # header + theta in {0, 0.25, 0.5, 0.75}
    anchors = a[1]
    assert float(anchors[1]) == 0.0  # J_def(0)
    assert abs(float(anchors[2]) - 37 / 15) < 1e-9
    assert abs(float(anchors[7]) - 1821 / 385) < 1e-9
    b = _read_csv(outdir / "figure1b.csv")
    assert abs(float(b[1][2]) - 4.0) < 0.04  # large-d pair-B limit at theta = 0
    c = _read_csv(outdir / "figure1c.csv")
    assert c[1][0] == "0.25"  # gain panels start above theta = 0
    assert len(_read_csv(outdir / "figure1d.csv")) == 4
